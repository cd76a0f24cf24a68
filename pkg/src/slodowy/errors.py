"""Exception hierarchy for the pipeline.

Every failure raised by a pipeline stage is a :class:`PipelineError`; the CLI
maps these to exit code 1, except :class:`UsageError` subclasses (exit 2).
"""


class PipelineError(Exception):
    """Base class for invariant or solver failures."""


class UsageError(PipelineError):
    """Bad input from the caller, as opposed to a broken invariant."""


class UnsupportedType(UsageError):
    pass


class RankBound(UsageError):
    pass


class SolveFailure(PipelineError):
    pass


class OddDegree(PipelineError):
    pass


class DimensionMismatch(PipelineError):
    pass


class NormalizationFailure(PipelineError):
    pass


class NotRegularSemisimple(PipelineError):
    pass


class AnsatzUnsolvable(PipelineError):
    pass


class GradedSolveFailure(PipelineError):
    pass


class NotInvariant(PipelineError):
    pass


class NoDispersionlessLimit(PipelineError):
    pass


class OrderingFailure(PipelineError):
    pass


class SingularBlock(PipelineError):
    pass


class AnsatzExhausted(PipelineError):
    pass


class AxiomFailure(PipelineError):
    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(f"{axiom}: {detail}" if detail else axiom)


class IntegrabilityFailure(PipelineError):
    pass
