import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alcove import oracles
from alcove.affine import AffineElt, bruhat_le, longest_elt
from alcove.errors import NotRegular
from alcove.geometry import (
    alcove_profile,
    convex_hull_contains,
    depth,
    dominant_rep,
    is_dominant_alcove,
    is_e_regular,
    is_m_deep,
    is_m_generic,
    is_restricted,
    materialize,
    p_dot,
    regular_decompose,
    restricted_elements,
    restricted_lift,
    up_le,
    w_h,
)
from alcove.rootdatum import all_perms, eta0, perm_inverse, act, wscale

from strategies import elements


def t(*nu):
    return AffineElt.translation((nu,))


def test_profile_examples():
    assert set(alcove_profile(AffineElt.identity(3)).values()) == {0}
    assert alcove_profile(t(1, 0)) == {(0, (0, 1)): 1}
    assert alcove_profile(longest_elt(2)) == {(0, (0, 1)): -1}


def test_dominance_examples():
    ident = AffineElt.identity(3)
    assert is_dominant_alcove(ident) and is_restricted(ident)
    top = AffineElt.translation(eta0(3))
    assert is_dominant_alcove(top) and not is_restricted(top)
    w0 = longest_elt(3)
    assert not is_dominant_alcove(w0) and not is_restricted(w0)


def test_restricted_elements_count():
    for n in (2, 3, 4):
        rs = restricted_elements(n)
        assert len(rs) == len(all_perms(n))
        assert all(is_restricted(r) for r in rs)


def test_p_dot_examples():
    assert p_dot(AffineElt.identity(2), ((3, 1),), 7) == ((3, 1),)
    assert p_dot(w_h(2), ((3, 1),), 7) == ((0, -3),)
    assert p_dot(t(2, -1), ((3, 1),), 7) == ((17, -6),)


@given(elements(n=3, f=1), elements(n=3, f=1), st.tuples(*[st.integers(-9, 9)] * 3))
def test_p_dot_is_an_action(a, b, lam):
    lam = (lam,)
    assert p_dot(a * b, lam, 11) == p_dot(a, p_dot(b, lam, 11), 11)


@pytest.mark.parametrize("e", [1, 2, 3])
def test_convex_hull_examples(e):
    top = (e, 0)
    for k in range(e + 1):
        assert convex_hull_contains(top, (e - k, k))
    assert not convex_hull_contains(top, (e + 1, -1))
    assert convex_hull_contains((2, 1, 0), (2, 1, 0))
    assert convex_hull_contains((2, 1, 0), (1, 1, 1))


@given(st.tuples(*[st.integers(-30, 30)] * 3), st.integers(0, 4))
def test_generic_is_deep_after_shift(v, m):
    lam = (v,)
    shifted = ((v[0] - 2, v[1] - 1, v[2]),)
    assert is_m_generic(lam, m, 13) == is_m_deep(shifted, m, 13)


def test_depth_on_walls():
    assert depth(((5, -1),), 7) == -1
    assert depth(((5, 5),), 7) == 0
    assert depth(((2, 0),), 7) == 2


def test_up_reflexive_and_coset():
    a = t(2, 0)
    assert up_le(a, a)
    assert not up_le(t(1, 0), t(1, 1))


def test_up_equals_bruhat_on_dominant():
    for n in (2, 3):
        for z in range(n):
            dom = [g for g in oracles.cayley_ball(n, z, 5) if is_dominant_alcove(AffineElt.from_locals([g]))]
            for a, b in itertools.product(dom, repeat=2):
                x, y = AffineElt.from_locals([a]), AffineElt.from_locals([b])
                assert up_le(x, y) == bruhat_le(x, y)


def test_up_is_a_partial_order_on_a_ball():
    ball = [AffineElt.from_locals([g]) for g in oracles.cayley_ball(3, 0, 3)]
    rel = {(a, b) for a in ball for b in ball if up_le(a, b)}
    for a, b in rel:
        if a != b:
            assert (b, a) not in rel
    for (a, b), c in itertools.product(rel, ball):
        if (b, c) in rel:
            assert (a, c) in rel


def test_bruhat_below_w0_dominant_goes_up():
    # x <= w0 w+ forces w0 w+ up-arrow w x for every finite w
    for n in (2, 3):
        w0 = longest_elt(n)
        dom = [
            AffineElt.from_locals([g])
            for g in oracles.cayley_ball(n, 0, 3)
            if is_dominant_alcove(AffineElt.from_locals([g]))
        ]
        for wp in dom:
            top = w0 * wp
            for g in oracles.lower_set(top.local(0)):
                x = AffineElt.from_locals([g])
                for w in all_perms(n):
                    assert up_le(top, AffineElt.finite((w,)) * x)


def test_doubleclosure_exhaustive():
    for n in (2, 3):
        w0 = longest_elt(n)
        rs = restricted_elements(n)
        for lam in ((0,) * n, eta0(n)[0], (2,) + (0,) * (n - 1)):
            base = w0 * AffineElt.translation((lam,))
            for nu in itertools.product(range(-2, 3), repeat=n):
                tn = AffineElt.translation((nu,))
                for w, wp in itertools.product(rs, repeat=2):
                    if bruhat_le(tn * base * w, base * wp) and bruhat_le(
                        tn.inverse() * base * wp, base * w
                    ):
                        assert len(set(nu)) == 1 and wp == tn * w


def test_regular_decompose_extremal_shape():
    # t_{w^{-1}(e eta0)} = (w_h w~)^{-1} w0 t_{(e-1) eta0} w~
    for n, e in ((2, 1), (2, 2), (3, 2)):
        for w in all_perms(n):
            lift = restricted_lift((w,))
            a = AffineElt.translation((act(perm_inverse(w), wscale(e, eta0(n))[0]),))
            w1, w2, nu = regular_decompose(a, e)
            assert w1 == lift
            assert len(set(nu[0])) == 1
            assert materialize(w1, w2, nu, e) == a
            want = w_h(n) * lift
            shift = AffineElt.translation(((want.nu[0][-1],) * n,))
            assert w2 == shift.inverse() * want


def test_regular_decompose_small_example():
    w1, w2, nu = regular_decompose(AffineElt.translation(((1, 0),)), 1)
    assert w1 == AffineElt.identity(2)
    assert str(w2) == "t[1,0]·w(2,1)"
    assert nu == ((1, 1),)


def test_regular_decompose_rejects():
    with pytest.raises(NotRegular):
        regular_decompose(AffineElt.identity(2), 2)


@st.composite
def decompositions(draw):
    n = draw(st.integers(2, 3))
    f = draw(st.integers(1, 2))
    e = draw(st.integers(1, 3))
    w1 = restricted_lift(tuple(draw(st.sampled_from(all_perms(n))) for _ in range(f)))
    w2 = restricted_lift(tuple(draw(st.sampled_from(all_perms(n))) for _ in range(f)))
    nu = []
    for _ in range(f):
        v = sorted(draw(st.lists(st.integers(0, 5), min_size=n, max_size=n)), reverse=True)
        nu.append(tuple(x - v[-1] for x in v))
    return w1, w2, tuple(nu), e


@given(decompositions())
def test_regular_round_trip(data):
    w1, w2, nu, e = data
    a = materialize(w1, w2, nu, e)
    assert is_e_regular(a, e)
    assert regular_decompose(a, e) == (w1, w2, nu)


@given(elements(n=3, f=1, max_word=6))
def test_dominant_rep_factor_is_dominant(a):
    ws, x = dominant_rep(a)
    assert is_dominant_alcove(x)
    assert AffineElt.finite(ws) * x == a
