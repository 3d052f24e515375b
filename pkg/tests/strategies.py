"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from twistcube import CubeSpec


@st.composite
def specs(draw, max_n=4, c=3, ell=5):
    n = draw(st.integers(1, max_n))
    ells = draw(st.lists(st.integers(-ell, ell), min_size=n, max_size=n))
    entries = {
        (i, j): draw(st.integers(-c, c)) for i in range(1, n + 1) for j in range(i + 1, n + 1)
    }
    return CubeSpec.build(ells, entries)
