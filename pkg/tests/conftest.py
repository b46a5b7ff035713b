import random

import pytest
from hypothesis import strategies as st

from cbvcost import Abs, App, BoundVar, FreeVar


@st.composite
def terms(draw, max_size=14, free_pool=("a", "b", "c")):
    """Well-scoped terms, possibly with free variables from the pool."""

    def gen(budget, depth):
        kinds = []
        if depth > 0:
            kinds.append("bound")
        if free_pool:
            kinds.append("free")
        if budget >= 2:
            kinds.append("abs")
        if budget >= 3:
            kinds.extend(["app", "app"])
        kind = draw(st.sampled_from(kinds))
        if kind == "bound":
            return BoundVar(draw(st.integers(0, depth - 1)))
        if kind == "free":
            return FreeVar(draw(st.sampled_from(free_pool)))
        if kind == "abs":
            return Abs(gen(budget - 1, depth + 1))
        split = draw(st.integers(1, budget - 2))
        return App(gen(split, depth), gen(budget - 1 - split, depth))

    return gen(draw(st.integers(1, max_size)), 0)


@st.composite
def single_free_terms(draw, max_size=14):
    """Terms with at most one distinct free name (codec round-trip domain)."""
    return draw(terms(max_size=max_size, free_pool=("v",)))


@pytest.fixture
def rng():
    return random.Random(2024)
