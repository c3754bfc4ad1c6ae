import pytest


@pytest.fixture(scope="session")
def full_scan_records():
    """The frozen conductor-exponent scan (all moduli in [100, 3000]).

    Shared by the acceptance tests for the subconvexity trend; this is the
    long pole of the suite (several minutes).
    """
    from zetalab import lfunc

    return lfunc.scan(100, 3000, stride=1)
