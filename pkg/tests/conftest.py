import sys
from pathlib import Path
from random import Random

import pytest

# allow running the suite from a fresh checkout without installing
_SRC = Path(__file__).resolve().parents[1] / "src"
if str(_SRC) not in sys.path:
    try:
        import bentsmith  # noqa: F401
    except ImportError:
        sys.path.insert(0, str(_SRC))

from bentsmith.core import TruthTable  # noqa: E402
from bentsmith.oracle import census_with_witnesses  # noqa: E402


def random_table(n: int, rng: Random) -> TruthTable:
    return TruthTable.from_packed(n, rng.getrandbits(1 << n))


@pytest.fixture(scope="session")
def self_dual_pool_n4():
    """The 20 self-dual bent functions of 4 variables."""
    _, witnesses = census_with_witnesses(4)
    return witnesses


@pytest.fixture(scope="session")
def census_n4():
    report, _ = census_with_witnesses(4)
    return report
