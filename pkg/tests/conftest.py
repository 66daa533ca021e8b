import os
import tempfile

import pytest


@pytest.fixture(scope="session", autouse=True)
def isolated_moment_cache():
    """Point the on-disk moment cache at a session-local directory.

    Keeps test runs independent of the developer cache while still
    letting expensive quadrature blocks be shared across test modules
    within one session.
    """
    with tempfile.TemporaryDirectory(prefix="fivenum-cache-") as d:
        old = os.environ.get("FIVENUM_CACHE_DIR")
        os.environ["FIVENUM_CACHE_DIR"] = d
        try:
            yield d
        finally:
            if old is None:
                os.environ.pop("FIVENUM_CACHE_DIR", None)
            else:
                os.environ["FIVENUM_CACHE_DIR"] = old


def approx_equal(actual, expected, tol=0.0, rel=0.0):
    """|actual - expected| <= max(tol, rel * |expected|)."""
    return abs(actual - expected) <= max(tol, rel * abs(expected))
