import numpy as np
import pytest

from spectral_shift import make_two_domain_set


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)


@pytest.fixture(scope="session")
def two_domain_set(tmp_path_factory):
    """A small deterministic labeled-source / unlabeled-target dataset."""
    root = tmp_path_factory.mktemp("dataset")
    manifest_path = make_two_domain_set(root, seed=7)
    return manifest_path


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from helpers import ACCEPTANCE_RESULTS
    except ImportError:
        return
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for name, status in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(f"ACCEPTANCE {name}: {status}")
