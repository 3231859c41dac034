import sys
import warnings
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cscrack import (CrackProblem, Discretization, MaterialParams,  # noqa: E402
                     solve)


@lru_cache(maxsize=None)
def _solve_case(nu: float, p: float, n: int):
    mat = MaterialParams(mu=1.0, nu=nu, ell=1.0 / p)
    prob = CrackProblem(half_length=1.0, remote_tension=1.0, material=mat)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return solve(prob, Discretization.build(n))


@pytest.fixture(scope="session")
def solve_case():
    """Cached nondimensional solve (mu = a = sigma0 = 1) keyed by (nu, p, n)."""
    return _solve_case
