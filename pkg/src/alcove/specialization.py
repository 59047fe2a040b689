"""Specialization pairs, the theta map, the type chain and geometry predictions.

Only the combinatorial shadow of a Galois representation is modelled: pairs
``(sigma, rho_sp)`` with ``sigma`` the extremal weight of ``rho_sp`` at some
``w``, shapes ``w~(rho_sp, tau)`` and presentations.

Chain conventions, for a simple root ``alpha`` and ``w~`` the restricted lift
of ``w``:

* ``w~(tau_2k) = w~(rho) t_{w^{-1}(k alpha - e eta0)}`` for ``0 <= k <= e``;
* ``w~(tau_2k+1) = w~(rho) w~^{-1} t_{(k+1) alpha - e eta0} s_alpha w~`` for
  ``0 <= k < e``, whose shape is the corridor element ``reflected(k)``;
* ``sigma_2k = F_(w~, w~(rho) w~^{-1}(k alpha - (e-1) eta0))``;
* ``sigma_2k+1 = F_(sw~, w~(rho) sw~^{-1}((e-k-1) alpha - (e-1) eta0))`` with
  ``sw~`` the restricted lift of ``s_alpha w``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .admissible import (
    TRANSLATION,
    adm_contains,
    classify_corridor,
    simple_reflection_perm,
    simple_root_vec,
)
from .affine import AffineElt, bruhat_le, require_coset
from .errors import (
    IncompatiblePresentations,
    IndexOutOfRange,
    NoSolution,
    NotInCorridor,
    PreconditionError,
    ShapeNotExtremal,
)
from .geometry import _ldominant, restricted_lift, w_h
from .rootdatum import (
    FinWeyl,
    act,
    all_perms,
    compose,
    eta0,
    longest,
    perm_inverse,
    vneg,
    vscale,
    vsub,
    wscale,
)
from .tame import TypePresentation, check_compatible, gate, relative_shape
from .weights import (
    SerreWeight,
    WeightSet,
    compatible_presentation,
    extremal_weight,
    jh,
    w_question,
    w_question_tau,
    weight_from_presentation,
)

CHAIN_DEPTH = 2  # (e + CHAIN_DEPTH) h


def _alphas(f: int, alpha) -> tuple[int | None, ...]:
    """A simple root of the product group as a per-embedding tuple.

    ``alpha`` is ``(j, i)`` for ``alpha_i`` in embedding ``j``; a bare ``i``
    is accepted when ``f = 1``.  Other embeddings get ``None``.
    """
    if isinstance(alpha, int):
        if f != 1:
            raise PreconditionError("give the simple root as (embedding, index) when f > 1")
        alpha = (0, alpha)
    j, i = alpha
    if not 0 <= j < f:
        raise PreconditionError(f"embedding {j} out of range 0..{f - 1}")
    return tuple(i if q == j else None for q in range(f))


def _root(n: int, alphas, scale: int) -> tuple:
    """``scale * alpha`` as a weight."""
    return tuple(
        (0,) * n if a is None else vscale(scale, simple_root_vec(n, a)) for a in alphas
    )


def _perm(n: int, a) -> tuple[int, ...]:
    return tuple(range(n)) if a is None else simple_reflection_perm(n, a)


def _s_alpha(n: int, alphas) -> AffineElt:
    return AffineElt.finite(tuple(_perm(n, a) for a in alphas))


def _s_alpha_w(w: FinWeyl, alphas) -> FinWeyl:
    n = len(w[0])
    return tuple(compose(_perm(n, a), wj) for wj, a in zip(w, alphas))


def s_alpha_right(x: FinWeyl, alpha) -> FinWeyl:
    """``x s_alpha`` for a simple root ``alpha`` of the product group."""
    al = _alphas(len(x), alpha)
    return tuple(compose(xj, _perm(len(xj), a)) for xj, a in zip(x, al))


def _presentation_of(cfg, a: AffineElt, flag: str) -> TypePresentation:
    return TypePresentation.from_element(cfg, a, flag)


# pairs --------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecializationPair:
    sigma: SerreWeight
    rho_sp: TypePresentation
    w_index: FinWeyl
    exhibiting_tau: TypePresentation | None = None

    @classmethod
    def extremal(cls, rho_sp: TypePresentation, w: FinWeyl, with_tau: bool = True):
        """The pair of ``rho_sp`` at ``w``, optionally with its exhibiting type."""
        tau = exhibiting_type(rho_sp, w) if with_tau else None
        return cls(extremal_weight(rho_sp, w), rho_sp, tuple(w), tau)

    def validate(self) -> None:
        if self.sigma != extremal_weight(self.rho_sp, self.w_index):
            raise PreconditionError("sigma is not the extremal weight at w_index")
        if self.exhibiting_tau is not None:
            cfg = self.rho_sp.cfg
            want = AffineElt.translation(
                tuple(
                    _act_inv(wj, v) for wj, v in zip(self.w_index, wscale(cfg.e, cfg.eta0))
                )
            )
            if relative_shape(self.rho_sp, self.exhibiting_tau) != want:
                raise ShapeNotExtremal("exhibiting type has the wrong relative shape")
            tau = self.exhibiting_tau
            lift = restricted_lift(self.w_index)
            inner = (w_h(cfg.n, cfg.f) * lift).inverse().apply(((0,) * cfg.n,) * cfg.f)
            alt = weight_from_presentation(lift, tau.w_tau().apply(inner), cfg.require_p())
            if alt != self.sigma:
                raise PreconditionError("the two extremal weight formulas disagree")

    def as_dict(self) -> dict:
        out = {
            "sigma": self.sigma.as_dict(),
            "rho_sp": self.rho_sp.as_dict(),
            "w": [[x + 1 for x in wj] for wj in self.w_index],
        }
        if self.exhibiting_tau is not None:
            out["tau"] = self.exhibiting_tau.as_dict()
        return out


def _act_inv(w, v):
    return act(perm_inverse(w), v)


def exhibiting_type(rho_sp: TypePresentation, w: FinWeyl) -> TypePresentation:
    """The type ``tau`` with ``w~(rho_sp, tau) = t_{w^{-1}(e eta0)}``."""
    cfg = rho_sp.cfg
    shift = tuple(_act_inv(wj, v) for wj, v in zip(w, wscale(cfg.e, cfg.eta0)))
    a = rho_sp.w_tau() * AffineElt.translation(shift).inverse()
    return _presentation_of(cfg, a, "E")


def theta(pair: SpecializationPair, zeta=None) -> FinWeyl:
    """``w_{rho_sp} w^{-1}`` read off the ``zeta``-compatible presentation.

    Changing the presentation conjugates the finite part and permutes the
    extremal indices the same way, so the pair's ``w`` is recomputed by locating
    ``sigma`` among the extremal weights of the new presentation.
    """
    rho = pair.rho_sp if zeta is None else pair.rho_sp.rezeta(zeta)
    w = pair.w_index
    if rho != pair.rho_sp:
        hits = [
            u
            for u in itertools.product(all_perms(rho.cfg.n), repeat=rho.cfg.f)
            if extremal_weight(rho, u) == pair.sigma
        ]
        if len(hits) != 1:
            raise PreconditionError(f"sigma is extremal at {len(hits)} indices")
        w = hits[0]
    return tuple(compose(s, perm_inverse(wj)) for s, wj in zip(rho.s, w))


def validate_pairs(pairs, zeta=None) -> dict:
    """Validate every pair and check that theta is injective on them."""
    seen: dict = {}
    for pr in pairs:
        pr.validate()
        th = theta(pr, zeta)
        key = (pr.sigma, pr.rho_sp.w_tau())
        if th in seen and seen[th] != key:
            raise PreconditionError(f"theta collision at {th}")
        seen[th] = key
    return seen


# the chain ----------------------------------------------------------------------------------------------


def chain_types(rho_sp: TypePresentation, w: FinWeyl, alpha) -> list[TypePresentation]:
    cfg = rho_sp.cfg
    n, f, e = cfg.n, cfg.f, cfg.e
    al = _alphas(f, alpha)
    lift = restricted_lift(w)
    base = rho_sp.w_tau()
    sa = _s_alpha(n, al)
    out = []
    for m in range(2 * e + 1):
        k = m // 2
        if m % 2 == 0:
            x = tuple(vsub(r, v) for r, v in zip(_root(n, al, k), wscale(e, cfg.eta0)))
            a = base * lift.inverse() * AffineElt.translation(x) * lift
        else:
            x = tuple(vsub(r, v) for r, v in zip(_root(n, al, k + 1), wscale(e, cfg.eta0)))
            a = base * lift.inverse() * AffineElt.translation(x) * sa * lift
        out.append(_presentation_of(cfg, a, "E"))
    return out


def chain_weights(rho_sp: TypePresentation, w: FinWeyl, alpha) -> list[SerreWeight]:
    cfg = rho_sp.cfg
    n, f, e, p = cfg.n, cfg.f, cfg.e, cfg.require_p()
    al = _alphas(f, alpha)
    lift = restricted_lift(w)
    slift = restricted_lift(_s_alpha_w(w, al))
    base = rho_sp.w_tau()
    low = wscale(e - 1, cfg.eta0)
    out = []
    for m in range(2 * e):
        k = m // 2
        if m % 2 == 0:
            pt = tuple(vsub(r, v) for r, v in zip(_root(n, al, k), low))
            out.append(weight_from_presentation(lift, base.apply(lift.inverse().apply(pt)), p))
        else:
            pt = tuple(vsub(r, v) for r, v in zip(_root(n, al, e - k - 1), low))
            out.append(weight_from_presentation(slift, base.apply(slift.inverse().apply(pt)), p))
    return out


@dataclass(frozen=True)
class ChainRow:
    m: int
    tau: TypePresentation
    expected: WeightSet
    computed: WeightSet
    multiplicity_one: bool

    @property
    def verified(self) -> bool:
        return self.expected.as_set() == self.computed.as_set()

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "tau": self.tau.as_dict(),
            "weights": [s.as_dict() for s in self.expected],
            "verified": self.verified,
            "multiplicity_one": self.multiplicity_one,
        }


def chain(rho_sp: TypePresentation, w: FinWeyl, alpha, strict: bool = False):
    """Types ``tau_0..tau_2e`` and weights ``sigma_0..sigma_{2e-1}``, with per-row checks.

    Each row compares ``{sigma_{m-1}, sigma_m}`` with ``w_question_tau(rho_sp,
    tau_m)`` computed by the Bruhat filter.
    """
    cfg = rho_sp.cfg
    gate(rho_sp.depth, (cfg.e + CHAIN_DEPTH) * cfg.h, "chain", strict)
    types = chain_types(rho_sp, w, alpha)
    weights = chain_weights(rho_sp, w, alpha)
    rows = []
    for m, tau in enumerate(types):
        exp = [weights[i] for i in (m - 1, m) if 0 <= i < len(weights)]
        got = w_question_tau(rho_sp, tau)
        mult = all(got.multiplicities.get(s) == 1 for s in exp if s in got)
        rows.append(ChainRow(m, tau, WeightSet.build(exp, "WqTau"), got, mult))
    return types, weights, rows


def reflect_step(pair: SpecializationPair, alpha, k: int) -> SpecializationPair:
    """The pair ``(sigma_k, rho')`` reached after walking ``k`` steps along ``alpha``.

    ``w~(rho')`` is ``w~(tau_{k+1})`` times the endpoint shape
    ``t_{w'^{-1}(e eta0)}`` with ``w' = w`` for even ``k`` and ``s_alpha w``
    for odd ``k``.
    """
    rho = pair.rho_sp
    cfg = rho.cfg
    e = cfg.e
    if not 0 <= k <= 2 * e - 1:
        raise IndexOutOfRange(f"k must lie in 0..{2 * e - 1}, got {k}")
    n, f = cfg.n, cfg.f
    al = _alphas(f, alpha)
    w = pair.w_index
    lift = restricted_lift(w)
    base = rho.w_tau()
    if k % 2 == 0:
        x = _root(n, al, k // 2 + 1 - e)
        a = base * lift.inverse() * AffineElt.translation(x) * _s_alpha(n, al) * lift
        new_w = w
    else:
        x = _root(n, al, (k + 1) // 2 - e)
        a = base * lift.inverse() * AffineElt.translation(x) * lift
        new_w = _s_alpha_w(w, al)
    new_rho = _presentation_of(cfg, a, "F")
    sigma = chain_weights(rho, w, alpha)[k]
    out = SpecializationPair(sigma, new_rho, new_w, exhibiting_type(new_rho, new_w))
    out.validate()
    return out


# gauge type and weight elimination ----------------------------------------------------------------------


def _extremal_shape_index(rho_sp: TypePresentation, tau: TypePresentation) -> FinWeyl:
    cfg = rho_sp.cfg
    shape = relative_shape(rho_sp, tau)
    for w in itertools.product(all_perms(cfg.n), repeat=cfg.f):
        want = tuple(_act_inv(wj, v) for wj, v in zip(w, wscale(cfg.e, cfg.eta0)))
        if shape == AffineElt.translation(want):
            return w
    raise ShapeNotExtremal(f"relative shape {shape} is not t_{{w^-1(e eta0)}}")


def gauge_type(pair: SpecializationPair) -> TypePresentation:
    """The type whose relative shape is the unique element of
    ``Omega w0 t_{(e-1) eta0} w~`` lying in ``t_{e eta0} W_a``."""
    if pair.exhibiting_tau is None:
        raise ShapeNotExtremal("pair has no exhibiting type")
    rho = pair.rho_sp
    cfg = rho.cfg
    n, f, e = cfg.n, cfg.f, cfg.e
    w = _extremal_shape_index(rho, pair.exhibiting_tau)
    lift = restricted_lift(w)
    core = (
        AffineElt.finite((longest(n),) * f)
        * AffineElt.translation(wscale(e - 1, cfg.eta0))
        * lift
    )
    target = AffineElt.translation(wscale(e, cfg.eta0)).zeta_class()
    hits = []
    for ks in itertools.product(range(-2 * n, 2 * n + 1), repeat=f):
        om = AffineElt.from_locals(AffineElt.rho(n, 1, k).local(0) for k in ks)
        cand = om * core
        if cand.zeta_class() == target:
            hits.append(cand)
    assert len(hits) == 1, "Omega-normalisation is not unique"
    shape = hits[0]
    tau_g = _presentation_of(cfg, rho.w_tau() * shape.inverse(), "E")
    check_compatible(rho, tau_g)
    return tau_g


def solve_dominant(rho_sp: TypePresentation, omega) -> AffineElt:
    """The unique dominant ``w~`` with ``omega = w~(rho_sp) w~^{-1}(0)``."""
    x = rho_sp.w_tau().inverse().apply(omega)
    cfg = rho_sp.cfg
    hits = []
    per = []
    for xj in x:
        opts = []
        for u in all_perms(cfg.n):
            loc = (vneg(act(u, xj)), u)
            if _ldominant(loc):
                opts.append(loc)
        per.append(opts)
    for combo in itertools.product(*per):
        hits.append(AffineElt.from_locals(combo))
    if not hits:
        raise NoSolution(f"{omega} is not of the form w~(rho) w~^-1(0) with w~ dominant")
    assert len(hits) == 1, "dominant solution is not unique"
    return hits[0]


def elimination_type(sigma: SerreWeight, rho_sp: TypePresentation, strict: bool = False):
    """The type ``tau`` of the weight-elimination argument and the admissibility bit.

    Writes ``sigma = F_(w_lam, omega)`` compatibly with ``rho_sp``, solves
    ``omega = w~(rho_sp) w~^{-1}(0)``, and takes
    ``w~(rho_sp, tau) = (w_h w_lam)^{-1} w0 w~``.
    """
    cfg = rho_sp.cfg
    gate(sigma.depth, 3 * cfg.h, "elimination_type", strict)
    try:
        w_lam, omega = compatible_presentation(sigma, rho_sp.zeta())
    except PreconditionError as exc:
        raise IncompatiblePresentations(str(exc)) from exc
    wt = solve_dominant(rho_sp, omega)
    w0 = AffineElt.finite((longest(cfg.n),) * cfg.f)
    shape = (w_h(cfg.n, cfg.f) * w_lam).inverse() * w0 * wt
    tau = _presentation_of(cfg, rho_sp.w_tau() * shape.inverse(), "E")
    admissible = adm_contains(shape, wscale(cfg.e, cfg.eta0))
    assert sigma in jh(tau), "weight is missing from the constructed type"
    if admissible:
        assert sigma in w_question(rho_sp), "admissible shape but weight outside W?"
    return tau, admissible


# predicates ---------------------------------------------------------------------------------------


def semicontinuity_check(shape_sp: AffineElt, shape_rho: AffineElt, e: int) -> bool:
    """Componentwise ``shape_sp <= shape_rho``; both must lie in ``t_{e eta0} W_a``."""
    top = AffineElt.translation(wscale(e, eta0(shape_sp.n, shape_sp.f)))
    require_coset(shape_sp, top.zeta_class())
    require_coset(shape_rho, top.zeta_class())
    return bruhat_le(shape_sp, shape_rho)


@dataclass(frozen=True)
class TamenessVerdict:
    weights: int
    expected: int
    tame_consistent: bool
    opposite_witness: bool

    def as_dict(self) -> dict:
        return {
            "weights": self.weights,
            "expected": self.expected,
            "tame_consistent": self.tame_consistent,
            "opposite_witness": self.opposite_witness,
        }


def tameness_count(pairs) -> TamenessVerdict:
    """Count distinct weights against ``(n!)^f`` and look for ``w`` / ``w0 w`` pairs."""
    pairs = list(pairs)
    if not pairs:
        return TamenessVerdict(0, 0, False, False)
    cfg = pairs[0].rho_sp.cfg
    expected = len(all_perms(cfg.n)) ** cfg.f
    sigmas = {pr.sigma for pr in pairs}
    w0 = longest(cfg.n)
    by_rho: dict = {}
    for pr in pairs:
        by_rho.setdefault(pr.rho_sp.w_tau(), set()).add(pr.w_index)
    witness = any(
        tuple(compose(w0, wj) for wj in w) in idx for idx in by_rho.values() for w in idx
    )
    return TamenessVerdict(len(sigmas), expected, len(sigmas) == expected, witness)


SMOOTH = "formally_smooth_factor"
TWO = "two_component_factor"


@dataclass(frozen=True)
class GeometryPrediction:
    per_j: tuple[str, ...]
    m: int
    components: int
    smooth: bool

    def as_dict(self) -> dict:
        return {
            "per_j": list(self.per_j),
            "m": self.m,
            "components": self.components,
            "smooth": self.smooth,
            "note": "conditional on the genericity hypothesis of the smoothness theorem",
        }


def predict_geometry(shape: AffineElt, e: int) -> GeometryPrediction:
    c = classify_corridor(shape, e)
    if c is None:
        raise NotInCorridor(f"{shape} is not a corridor element for e={e}")
    per = tuple(
        SMOOTH if t.kind == TRANSLATION and t.k in (0, e) else TWO for t in c.tags
    )
    m = per.count(TWO)
    return GeometryPrediction(per, m, 2**m, m == 0)
