import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from simgame.verifier import run_verification


@pytest.fixture(scope="session")
def full_run():
    """The headline check: exhaustive mode, all tie-break branches, memoised,
    with the mini-board audit and the minimax cross-check collected in the
    same traversal.  Shared across the whole session because it also warms
    the strategy and minimax caches."""
    return run_verification(audit=True, cross_check=True)
