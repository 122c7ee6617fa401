import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from builtin import SAMPLES, qtwin_spec  # noqa: E402
from constructions import build_exist_twin_qcca, build_siam_twins_pebble  # noqa: E402


@pytest.fixture(scope="session")
def qtwin():
    return qtwin_spec()


@pytest.fixture(scope="session")
def anbn_1d2ca():
    return SAMPLES["anbn-1d2ca"]()


@pytest.fixture(scope="session")
def anbn_2dca():
    return SAMPLES["anbn-2dca"]()


@pytest.fixture(scope="session")
def exist_twin():
    return build_exist_twin_qcca()


@pytest.fixture(scope="session")
def siam_twins():
    return build_siam_twins_pebble()
