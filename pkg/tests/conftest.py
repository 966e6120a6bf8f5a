import os

import pytest
from hypothesis import HealthCheck, settings

# fixed seeds: every run draws the same examples
settings.register_profile("ci", derandomize=True, deadline=None, print_blob=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("TORSIONLAB_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow (use --runslow or TORSIONLAB_SLOW=1)")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
