from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from greedysums.core import SparseVector
from greedysums.spaces import SpaceSpec, preset_xpg_params

F = Fraction

settings.register_profile("repo", deadline=None, derandomize=True)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def preset():
    return preset_xpg_params()


@pytest.fixture(scope="session")
def xpg(preset):
    return SpaceSpec.xpg(preset)


ALL_SPACES = {
    "xpg": SpaceSpec.xpg(),
    "xw": SpaceSpec.xw(),
    "xiso3": SpaceSpec.xiso(3),
    "xs": SpaceSpec.xs(),
}

rationals = st.builds(
    Fraction, st.integers(min_value=-12, max_value=12), st.integers(min_value=1, max_value=6)
)


def vectors(max_index=40, max_size=6, values=rationals):
    return st.dictionaries(st.integers(min_value=1, max_value=max_index), values, max_size=max_size).map(
        SparseVector
    )


def ind(*idx):
    return SparseVector.indicator(idx)
