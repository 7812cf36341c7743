"""Shared strategies and random fixtures for the test suite."""

from __future__ import annotations

import math

import numpy as np
from hypothesis import strategies as st

from bdqw.chain import DimensionSpec, MultiChainSpec


@st.composite
def dimension_specs(draw, min_size=1, max_size=12):
    size = draw(st.integers(min_size, max_size))
    table = draw(
        st.lists(
            st.floats(0.01, 0.99, allow_nan=False, allow_infinity=False),
            min_size=size - 1,
            max_size=size - 1,
        )
    )
    return DimensionSpec(size=size, decrease_prob=tuple(table))


@st.composite
def multi_chain_specs(draw, max_dims=3, max_size=4, max_states=256):
    n_dims = draw(st.integers(1, max_dims))
    dims = []
    states = 1
    for _ in range(n_dims):
        dim = draw(dimension_specs(max_size=max_size))
        dims.append(dim)
        states *= dim.n_states
    if states > max_states:
        # trim to the cap by replacing dims with edges from the back
        for i in range(len(dims) - 1, -1, -1):
            if states <= max_states:
                break
            states //= dims[i].n_states
            dims[i] = DimensionSpec(size=1)
            states *= 2
    raw = draw(
        st.lists(st.floats(0.05, 1.0), min_size=len(dims), max_size=len(dims))
    )
    total = math.fsum(raw)
    return MultiChainSpec(dims=tuple(dims), select_prob=tuple(q / total for q in raw))


def random_dimension_spec(rng: np.random.Generator, max_size: int = 12) -> DimensionSpec:
    size = int(rng.integers(1, max_size + 1))
    table = rng.uniform(0.02, 0.98, size=size - 1)
    return DimensionSpec(size=size, decrease_prob=tuple(table))


def random_multi_chain_spec(
    rng: np.random.Generator, max_dims: int = 4, max_size: int = 5
) -> MultiChainSpec:
    n_dims = int(rng.integers(1, max_dims + 1))
    dims = tuple(random_dimension_spec(rng, max_size=max_size) for _ in range(n_dims))
    raw = rng.uniform(0.1, 1.0, size=n_dims)
    q = raw / raw.sum()
    return MultiChainSpec(dims=dims, select_prob=tuple(q))
