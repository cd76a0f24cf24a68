"""Polynomial Frobenius manifolds on principal Slodowy slices.

Exact rational pipeline: Lie algebra data, sl2-adapted basis, Drinfeld-Sokolov
gauge fixing, reduced Poisson brackets, Dirac-reduction cross-check, flat
coordinates and the WDVV prepotential.
"""

from .errors import PipelineError, UsageError
from .pipeline import PipelineResult, run

__all__ = ["PipelineError", "PipelineResult", "UsageError", "run"]
__version__ = "0.1.0"
