"""Shared fixtures.

The expensive exact tables (all n <= 2000 in one DP sweep per alpha) are
session-scoped: the convergence tests for q(n), q(n,m), the local limit,
the CDF distance, and the moment comparisons all read from the same two
sweeps instead of recounting.
"""

import pytest

from powerparts import AlphaParam, count_tables_upto, default_spectrum

NMAX = 2000


@pytest.fixture(scope="session")
def alpha12():
    return AlphaParam.rational(1, 2)


@pytest.fixture(scope="session")
def alpha13():
    return AlphaParam.rational(1, 3)


@pytest.fixture(scope="session")
def alpha23():
    return AlphaParam.rational(2, 3)


@pytest.fixture(scope="session")
def tables12(alpha12):
    """ExactTable list for alpha=1/2, n = 1..2000 (tables12[n-1].n == n)."""
    return count_tables_upto(alpha12, NMAX)


@pytest.fixture(scope="session")
def tables23(alpha23):
    return count_tables_upto(alpha23, NMAX)


@pytest.fixture(scope="session")
def spec12_big(alpha12):
    """Spectrum wide enough for every n <= 2000 evaluation at alpha=1/2."""
    return default_spectrum(alpha12, NMAX)


@pytest.fixture(scope="session")
def spec23_big(alpha23):
    return default_spectrum(alpha23, NMAX)
