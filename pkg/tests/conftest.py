from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import xplain as x


@pytest.fixture(scope="session")
def fig_universe() -> x.FeatureUniverse:
    return x.universe("x", "y", "z")


@pytest.fixture(scope="session")
def fig_dl(fig_universe) -> x.DecisionList:
    """The worked example: if x and y then 0, else if not x and not z then 1,
    else if not y and z then 0, else 1."""
    return x.DecisionList(
        fig_universe,
        (
            (((0, 1), (1, 1)), 0),
            (((0, 0), (2, 0)), 1),
            (((1, 0), (2, 1)), 0),
            ((), 1),
        ),
    )


@pytest.fixture(scope="session")
def fig_example(fig_universe) -> x.Example:
    return x.Example(fig_universe, (0, 0, 1))
