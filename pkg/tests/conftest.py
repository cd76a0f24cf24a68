import functools

import pytest

from slodowy.pipeline import run

TEST_ALGEBRAS = [("A", 1), ("A", 2), ("B", 2), ("A", 3), ("G", 2)]


@functools.lru_cache(maxsize=None)
def pipeline(type_label: str, rank: int, backend: str = "chevalley", gauge_trials: int = 100):
    return run(type_label, rank, backend=backend, gauge_trials=gauge_trials, use_cache=False)


@pytest.fixture(params=TEST_ALGEBRAS, ids=lambda p: f"{p[0]}{p[1]}")
def result(request):
    return pipeline(*request.param)
