import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alcove.admissible import adm_contains, corridor, TRANSLATION
from alcove.affine import AffineElt, lball
from alcove.errors import (
    NotRegular,
    NotRestricted,
    PartitionMismatch,
    RamificationTooLarge,
    WrongRank,
)
from alcove.geometry import depth, p_dot, restricted_lift, w_h
from alcove.rootdatum import RootDatumConfig, all_perms, wscale
from alcove.tame import TypePresentation
from alcove.weights import (
    R,
    R_delta,
    SerreWeight,
    WeightSet,
    canonical_lambda,
    compatible_presentation,
    delta_regular,
    evaluate_presentation,
    extremal_set,
    is_restricted_weight,
    jh,
    maximally_ordinary,
    schein_compare,
    w_question,
    w_question_tau,
    weight_from_highest,
    weight_from_presentation,
)

from conftest import sample_presentation


def restricted_weights(n, f, p):
    @st.composite
    def build(draw):
        rows = []
        for _ in range(f):
            gaps = [draw(st.integers(0, p - 1)) for _ in range(n - 1)]
            v = [draw(st.integers(-p, p))]
            for g in gaps:
                v.append(v[-1] - g)
            rows.append(tuple(v))
        return tuple(rows)

    return build()


def test_trivial_weight():
    sw = weight_from_highest(((0, 0, 0),), 7)
    assert sw.lam == ((0, 0, 0),)
    assert sw.depth == 0 and sw.w1 is not None


def test_not_restricted():
    with pytest.raises(NotRestricted):
        weight_from_highest(((9, 0),), 7)


@given(st.sampled_from([(2, 1), (2, 2), (3, 1), (3, 2)]), st.data())
def test_quotient_by_p_minus_pi(nf, data):
    n, f = nf
    p = 11
    lam = data.draw(restricted_weights(n, f, p))
    c = data.draw(st.lists(st.integers(-4, 4), min_size=f, max_size=f))
    moved = tuple(
        tuple(x + p * c[j] - c[(j + 1) % f] for x in v) for j, v in enumerate(lam)
    )
    assert canonical_lambda(moved, p) == canonical_lambda(lam, p)
    assert weight_from_highest(moved, p) == weight_from_highest(lam, p)


@given(st.sampled_from([(2, 1), (2, 2), (3, 1), (3, 2)]), st.data())
def test_presentation_round_trip(nf, data):
    n, f = nf
    p = 23
    lam = data.draw(restricted_weights(n, f, p))
    sw = weight_from_highest(lam, p)
    if depth(lam, p) < 0:
        assert sw.w1 is None
        return
    value = evaluate_presentation(sw.w1, sw.omega, p)
    assert canonical_lambda(value, p) == sw.lam
    # shifting the presentation by X^0 changes nothing
    nu = tuple((data.draw(st.integers(-3, 3)),) * n for _ in range(f))
    w1 = AffineElt.translation(nu) * sw.w1
    omega = tuple(tuple(x - y for x, y in zip(o, v)) for o, v in zip(sw.omega, nu))
    again = weight_from_presentation(w1, omega, p)
    assert again == sw and again.w1 == sw.w1 and again.omega == sw.omega


def test_compatible_presentation_moves_class():
    sw = weight_from_highest(((5, 2, 0),), 11)
    z = sw.presentation_zeta()[0]
    w1, om = compatible_presentation(sw, (z + 3 * 10,))
    assert weight_from_presentation(w1, om, 11) == sw


def test_R_example():
    assert R(weight_from_highest(((3, 1),), 7)) == weight_from_highest(((0, -3),), 7)
    with pytest.raises(NotRegular):
        R(weight_from_highest(((6, 0),), 7))


def test_R_depth_and_injectivity():
    p = 11
    seen = {}
    for a in range(p):
        for c in range(p - 1):
            sw = weight_from_highest(((a + c, c),), p)
            if sw.depth < 3 or seen.get(sw):
                continue
            r = R(sw)
            assert r.depth >= sw.depth - 1
            seen[sw] = r
    images = list(seen.values())
    assert len(images) == len(set(images)) > 0


def test_jh_rank_two():
    rng = random.Random(3)
    for _ in range(10):
        tau = sample_presentation(2, 1, 1, 101, 4, rng, "E")
        out = jh(tau)
        assert len(out) == 2
        assert all(s.presentation_zeta() == tau.zeta() for s in out)


def test_jh_rank_three_and_multiplicity():
    rng = random.Random(4)
    for _ in range(4):
        tau = sample_presentation(3, 1, 1, 211, 6, rng, "E")
        out = jh(tau)
        assert len(out) == 9
        assert len(out.multiplicities) >= 1
        assert all(m == 1 for m in out.multiplicities.values())
        assert all(s in out for s in out.multiplicities)
        assert all(s.presentation_zeta() == tau.zeta() for s in out)


def test_w_question_rank_two_unramified():
    rng = random.Random(5)
    for _ in range(10):
        rho = sample_presentation(2, 1, 1, 101, 4, rng)
        assert len(w_question(rho)) == 2


def _re_present(rho, rng):
    ks = tuple(rng.randrange(rho.cfg.n) for _ in range(rho.cfg.f))
    h = tuple(rng.randrange(-2, 3) for _ in range(rho.cfg.f))
    return rho.conjugated(ks).shifted(h)


def test_sets_are_presentation_independent():
    rng = random.Random(6)
    for n, f, e in ((2, 1, 2), (2, 2, 1), (3, 1, 1)):
        rho = sample_presentation(n, f, e, 211, max(2, e) * (n - 1) + 1, rng)
        other = _re_present(rho, rng)
        assert w_question(other).as_set() == w_question(rho).as_set()
        assert set(extremal_set(other).values()) == set(extremal_set(rho).values())
        tau = TypePresentation(rho.cfg, rho.s, rho.mu, "E")
        assert jh(_re_present(tau, rng)).as_set() == jh(tau).as_set()


def test_extremal_inside_w_question():
    rng = random.Random(7)
    for n, f, e in ((2, 1, 1), (2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 2, 1)):
        rho = sample_presentation(n, f, e, 211, max(2, e) * (n - 1), rng)
        ext = extremal_set(rho)
        assert len(set(ext.values())) == len(all_perms(n)) ** f
        assert set(ext.values()) <= w_question(rho).as_set()


def test_starred_reading_loses_extremal_weights():
    # the starred base element does not contain the extremal weights in general
    rng = random.Random(8)
    misses = 0
    for _ in range(10):
        rho = sample_presentation(3, 1, 1, 211, 4, rng)
        ext = set(extremal_set(rho).values())
        assert ext <= w_question(rho).as_set()
        misses += not ext <= w_question(rho, starred=True).as_set()
    assert misses > 0


def _tau_with_shape(rho, shape):
    return TypePresentation.from_element(rho.cfg, rho.w_tau() * shape.inverse(), "E")


def test_w_question_tau_on_corridors():
    rng = random.Random(9)
    for n, e in ((2, 2), (3, 1), (3, 2)):
        rho = sample_presentation(n, 1, e, 211, (e + 2) * (n - 1) + 2, rng)
        w = rng.choice(all_perms(n))
        for c in corridor((w,), 1, e):
            got = w_question_tau(rho, _tau_with_shape(rho, c.element))
            tag = c.tags[0]
            if tag.kind == TRANSLATION and tag.k in (0, e):
                assert len(got) == 1
            else:
                assert len(got) == 2
            assert all(m == 1 for m in got.multiplicities.values())


def test_w_question_tau_endpoint_formula():
    rng = random.Random(10)
    rho = sample_presentation(3, 1, 2, 211, 10, rng)
    cfg = rho.cfg
    w = ((1, 2, 0),)
    shape = AffineElt.translation(
        (tuple(wscale(2, cfg.eta0)[0][w[0][i]] for i in range(3)),)
    )
    tau = _tau_with_shape(rho, shape)
    lift = restricted_lift(w)
    zero = ((0, 0, 0),)
    want = weight_from_presentation(
        lift, tau.w_tau().apply((w_h(3) * lift).inverse().apply(zero)), 211
    )
    assert w_question_tau(rho, tau).as_set() == {want}


def test_w_question_tau_empty_off_adm():
    rng = random.Random(11)
    rho = sample_presentation(2, 1, 1, 211, 10, rng)
    shape = AffineElt.translation(((3, -2),))
    assert not adm_contains(shape, ((1, 0),))
    assert len(w_question_tau(rho, _tau_with_shape(rho, shape))) == 0


def test_intersection_and_admissibility():
    rng = random.Random(12)
    for n, f, e in ((2, 1, 2), (3, 1, 1), (2, 2, 1)):
        cfg = RootDatumConfig(n=n, f=f, e=e, p=211)
        top = AffineElt.translation(wscale(e, cfg.eta0))
        pool = lball(n, e * n * (n - 1) // 2, top.length() // f + 2)
        rho = sample_presentation(n, f, e, 211, max(2, e) * (n - 1) + 4, rng)
        wq = w_question(rho).as_set()
        for _ in range(15):
            shape = AffineElt.from_locals(rng.choice(pool) for _ in range(f))
            tau = _tau_with_shape(rho, shape)
            if tau.depth < 2 * (n - 1):
                continue
            got = w_question_tau(rho, tau).as_set()
            assert got == wq & jh(tau).as_set()
            if got:
                assert adm_contains(shape, wscale(e, cfg.eta0))


def test_schein_examples():
    rng = random.Random(13)
    for p, e, f in ((13, 1, 1), (13, 2, 1), (101, 3, 1), (101, 2, 2)):
        rho = sample_presentation(2, f, e, p, e, rng)
        rep = schein_compare(rho)
        assert rep["equal"], rep
        assert rep["missing"] == [] and rep["extra"] == []


def test_schein_e1_is_R():
    rng = random.Random(14)
    rho = sample_presentation(2, 1, 1, 13, 2, rng)
    tau = TypePresentation(rho.cfg, rho.s, rho.mu, "E")
    images = {R(s) for s in jh(tau)}
    assert images == schein_compare(rho)["union"].as_set()
    assert all(R_delta(s, (0,), 1) == R(s) for s in jh(tau))


def test_delta_regular_for_deep_weights():
    p, e = 31, 3
    for a in range(p):
        lam = ((a, 0),)
        if depth(lam, p) >= e - 1:
            for d in range(e):
                assert delta_regular(lam, (d,), e, p)


def test_schein_preconditions():
    cfg = RootDatumConfig(n=3, p=13)
    rho = TypePresentation(cfg, ((0, 1, 2),), ((6, 3, 0),), "F")
    with pytest.raises(WrongRank):
        schein_compare(rho)
    cfg = RootDatumConfig(n=2, e=7, p=7)
    rho = TypePresentation(cfg, ((0, 1),), ((3, 0),), "F")
    with pytest.raises(RamificationTooLarge):
        schein_compare(rho)


def test_maximally_ordinary():
    sw = weight_from_highest(((7, 3, 1),), 13)
    assert maximally_ordinary([3], [sw], 13) == sw
    got = maximally_ordinary([1, 2], [((9,),), ((4, 1),)], 13)
    assert got == weight_from_highest(((7, 4, 1),), 13)
    ordinary = maximally_ordinary([1, 1, 1], [((8,),), ((5,),), ((1,),)], 13)
    assert ordinary == weight_from_highest(((6, 4, 1),), 13)
    with pytest.raises(PartitionMismatch):
        maximally_ordinary([2, 1], [((1, 0),)], 13)


def test_weight_set_ordering():
    ws = [weight_from_highest(((a, 0),), 7) for a in (4, 1, 3, 1)]
    out = WeightSet.build(ws, "JH")
    assert out.lambdas() == sorted(out.lambdas())
    assert len(out) == 3
    assert all(isinstance(s, SerreWeight) for s in out)
    assert is_restricted_weight(((6, 0),), 7)
    assert p_dot(w_h(2), ((3, 1),), 7) == ((0, -3),)
