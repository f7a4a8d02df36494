import random

import pytest
from hypothesis import strategies as st

from src.models.Formula_Model import BOT, And, Atom, Impl, Or
from src.services.decision_service import clear_cache


def formulas(atoms=(0, 1, 2), max_leaves=4):
    """Hypothesis strategy for formulas over the given atoms."""
    leaves = st.one_of(st.just(BOT), st.sampled_from([Atom(a) for a in atoms]))
    return st.recursive(
        leaves,
        lambda children: st.one_of(
            st.builds(Impl, children, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
        ),
        max_leaves=max_leaves,
    )


@pytest.fixture
def rng():
    return random.Random(20240517)


@pytest.fixture
def fresh_oracle():
    clear_cache()
    yield
    clear_cache()


@pytest.fixture
def write_file(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write
