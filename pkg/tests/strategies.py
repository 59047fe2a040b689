"""Hypothesis strategies for group elements, built from random words."""

from hypothesis import strategies as st

from alcove.affine import AffineElt, lmul, lrho_power, lsimple


@st.composite
def local_elements(draw, n, max_word=8):
    z = draw(st.integers(-n, 2 * n))
    word = draw(st.lists(st.integers(0, n - 1), max_size=max_word))
    g = lrho_power(n, z)
    for i in word:
        g = lmul(lsimple(n, i), g)
    return g


@st.composite
def elements(draw, n=None, f=None, max_word=8):
    n = n or draw(st.integers(2, 3))
    f = f or draw(st.integers(1, 2))
    return AffineElt.from_locals(draw(local_elements(n, max_word)) for _ in range(f))


@st.composite
def element_pairs(draw, max_word=8):
    n = draw(st.integers(2, 3))
    f = draw(st.integers(1, 2))
    return draw(elements(n, f, max_word)), draw(elements(n, f, max_word))
