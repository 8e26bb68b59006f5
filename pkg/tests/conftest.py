import pytest

from gevreykit.verification import run_suite


@pytest.fixture(scope="session")
def quick_suite():
    """One shared run of the quick verification suite."""
    return run_suite(quick=True)
