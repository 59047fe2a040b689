"""Serre weights and the weight sets attached to types and residual data.

A Serre weight is ``F(lam)`` for a p-restricted ``lam`` taken modulo
``(p - pi) X^0``.  Records are canonicalised by subtracting the last
coordinate in every embedding and folding the resulting central character into
embedding 0 through the invariant ``sum_j m_j p^{-j mod f}`` modulo
``p^f - 1``.  Equality and hashing use the canonical ``lam`` only; the lowest
alcove presentation ``(w1, omega)`` rides along as metadata.

Weight sets are built from pairs of affine Weyl elements:

* ``jh``: ``(w_lam, w2)`` with ``w_lam`` restricted, ``w2`` dominant and
  ``w_lam`` up-arrow ``w_h^{-1} w2``, sent to ``F_(w_lam, w(tau) w2^{-1}(0))``;
* ``w_question``: ``w2`` up-arrow ``t_{(e-1) eta0} w_lam``, sent to
  ``F_(w_lam, w(rho) w2^{-1}(0))``;
* ``w_question_tau``: the ``jh`` pairs with
  ``w2 shape <= w0 t_{(e-1) eta0} w_lam``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .affine import AffineElt, bruhat_le, lmul
from .errors import NoCompatiblePresentation, NotRegular, NotRestricted, PartitionMismatch
from .errors import RamificationTooLarge, WrongRank
from .geometry import (
    alcove_element_of_point,
    depth,
    ldominant_up_below,
    lrestricted_lift,
    lup_above_in_wh_dominant,
    p_dot,
    restricted_lift,
    w_h,
)
from .rootdatum import (
    FinWeyl,
    Weight,
    act,
    all_perms,
    eta0_vec,
    frobenius,
    frobenius_inv,
    longest,
    pairing,
    perm_inverse,
    simple_roots,
    vadd,
    vscale,
    vsub,
    wscale,
)
from .tame import TypePresentation, gate, relative_shape, solve_p_minus_pi

# canonical records ------------------------------------------------------------------------


def canonical_lambda(lam: Weight, p: int) -> Weight:
    """Representative of ``lam`` modulo ``(p - pi) X^0``."""
    f = len(lam)
    mod = p**f - 1
    phi = 0
    rows = []
    for j, v in enumerate(lam):
        m = v[-1]
        phi += m * pow(p, (-j) % f)
        rows.append(tuple(x - m for x in v))
    phi %= mod
    rows[0] = tuple(x + phi for x in rows[0])
    return tuple(rows)


def is_restricted_weight(lam: Weight, p: int) -> bool:
    return all(0 <= pairing(v, a) <= p - 1 for v in lam for a in simple_roots(len(v)))


def is_regular_weight(lam: Weight, p: int) -> bool:
    return all(0 <= pairing(v, a) < p - 1 for v in lam for a in simple_roots(len(v)))


@dataclass(frozen=True, order=True)
class SerreWeight:
    lam: Weight
    p: int
    w1: AffineElt | None = field(default=None, compare=False)
    omega: Weight | None = field(default=None, compare=False)
    depth: int = field(default=-1, compare=False)

    def presentation_zeta(self) -> tuple[int, ...] | None:
        if self.w1 is None:
            return None
        return presentation_element(self.w1, self.omega).zeta_class()

    def as_dict(self) -> dict:
        out = {"lambda": [list(v) for v in self.lam], "depth": self.depth}
        if self.w1 is not None:
            out["presentation"] = {"w1": str(self.w1), "omega": [list(v) for v in self.omega]}
        return out


def presentation_element(w1: AffineElt, omega: Weight) -> AffineElt:
    """``t_{omega - eta0} w1``, whose class decides compatibility."""
    n = w1.n
    return AffineElt.translation(tuple(vsub(v, eta0_vec(n)) for v in omega)) * w1


def _normalise_presentation(w1: AffineElt, omega: Weight) -> tuple[AffineElt, Weight]:
    """Pick the member of ``(t_nu w1, omega - nu)`` whose ``w1`` has last translation 0."""
    nus, oms = [], []
    for (nu, w), om in zip(w1.locals(), omega):
        c = nu[-1]
        nus.append(tuple(x - c for x in nu))
        oms.append(tuple(x + c for x in om))
    return AffineElt(tuple(nus), w1.w), tuple(oms)


def evaluate_presentation(w1: AffineElt, omega: Weight, p: int) -> Weight:
    """``pi^{-1}(w1) . (omega - eta0)``."""
    n = w1.n
    twisted = AffineElt.from_locals(frobenius_inv(w1.locals()))
    return p_dot(twisted, tuple(vsub(v, eta0_vec(n)) for v in omega), p)


def weight_from_presentation(w1: AffineElt, omega: Weight, p: int) -> SerreWeight:
    lam = evaluate_presentation(w1, omega, p)
    w1n, omn = _normalise_presentation(w1, omega)
    return SerreWeight(canonical_lambda(lam, p), p, w1n, omn, depth(lam, p))


def default_presentation(lam: Weight, p: int) -> tuple[AffineElt, Weight]:
    """A lowest alcove presentation of ``F(lam)``; ``lam`` must avoid p-walls."""
    n = len(lam[0])
    xs, oms = [], []
    for v in lam:
        z = vadd(v, eta0_vec(n))
        nu, u = alcove_element_of_point(z, p)
        xs.append((nu, u))
        oms.append(act(perm_inverse(u), vsub(z, vscale(p, nu))))
    w1 = AffineElt.from_locals(frobenius(tuple(xs)))
    return _normalise_presentation(w1, tuple(oms))


def weight_from_highest(lam: Weight, p: int) -> SerreWeight:
    lam = tuple(tuple(v) for v in lam)
    if not is_restricted_weight(lam, p):
        raise NotRestricted(f"{lam} is not {p}-restricted")
    d = depth(lam, p)
    if d < 0:
        return SerreWeight(canonical_lambda(lam, p), p, None, None, d)
    w1, om = default_presentation(lam, p)
    return SerreWeight(canonical_lambda(lam, p), p, w1, om, d)


def compatible_presentation(sigma: SerreWeight, zeta) -> tuple[AffineElt, Weight]:
    """The presentation of ``sigma`` whose class is ``zeta``."""
    if sigma.w1 is None:
        raise NoCompatiblePresentation("weight lies on a p-wall and has no presentation")
    w1, om = sigma.w1, sigma.omega
    n, p = w1.n, sigma.p
    cur = presentation_element(w1, om).zeta_class()
    delta = [z - c for z, c in zip(zeta, cur)]
    if any(x % n for x in delta):
        raise NoCompatiblePresentation(f"no presentation of class {tuple(zeta)}")
    d = tuple(x // n for x in delta)
    if solve_p_minus_pi(d, p) is None:
        raise NoCompatiblePresentation(f"no presentation of class {tuple(zeta)}")
    return w1, tuple(vadd(v, (d[j],) * n) for j, v in enumerate(om))


def R(sigma: SerreWeight) -> SerreWeight:
    """``F(lam) -> F(w_h . lam)`` on regular weights."""
    lam, p = sigma.lam, sigma.p
    if not is_regular_weight(lam, p):
        raise NotRegular(f"F{lam} is not regular")
    n, f = len(lam[0]), len(lam)
    return weight_from_highest(p_dot(w_h(n, f), lam, p), p)


# weight sets ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightSet:
    elements: tuple[SerreWeight, ...]
    provenance: str
    multiplicities: dict | None = None

    @classmethod
    def build(cls, weights, provenance: str, multiplicities=None) -> "WeightSet":
        uniq = sorted(set(weights))
        return cls(tuple(uniq), provenance, multiplicities)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item) -> bool:
        return item in set(self.elements)

    def as_set(self) -> frozenset[SerreWeight]:
        return frozenset(self.elements)

    def lambdas(self) -> list[Weight]:
        return [w.lam for w in self.elements]


JH_DEPTH = 2
WQ_DEPTH = 2  # multiplied by max(2, e) at use
COMB_DEPTH = 3


def jh_pairs(tau: TypePresentation) -> list[tuple[AffineElt, AffineElt]]:
    n, f = tau.cfg.n, tau.cfg.f
    wh = w_h(n).local(0)
    per = []
    for _ in range(f):
        opts = []
        for u in all_perms(n):
            r = lrestricted_lift(u)
            for b in lup_above_in_wh_dominant(r):
                opts.append((r, lmul(wh, b)))
        per.append(opts)
    out = []
    for combo in itertools.product(*per):
        out.append(
            (AffineElt.from_locals(c[0] for c in combo), AffineElt.from_locals(c[1] for c in combo))
        )
    return out


def _pair_weight(base: AffineElt, w_lam: AffineElt, w2: AffineElt, p: int) -> SerreWeight:
    zero = ((0,) * base.n,) * base.f
    omega = base.apply(w2.inverse().apply(zero))
    return weight_from_presentation(w_lam, omega, p)


def jh(tau: TypePresentation, strict: bool = False) -> WeightSet:
    """Jordan-Holder constituents of the reduction of ``sigma(tau)``."""
    cfg = tau.cfg
    gate(tau.depth, JH_DEPTH * cfg.h, "jh", strict)
    p = cfg.require_p()
    base = tau.w_tau()
    whf = w_h(cfg.n, cfg.f)
    weights, mult = [], {}
    for w_lam, w2 in jh_pairs(tau):
        sw = _pair_weight(base, w_lam, w2, p)
        weights.append(sw)
        if w2 == whf * w_lam:
            mult[sw] = 1
    return WeightSet.build(weights, "JH", mult)


def wq_pairs(cfg) -> list[tuple[AffineElt, AffineElt]]:
    n, f, e = cfg.n, cfg.f, cfg.e
    shift = (vscale(e - 1, eta0_vec(n)), tuple(range(n)))
    per = []
    for _ in range(f):
        opts = []
        for u in all_perms(n):
            r = lrestricted_lift(u)
            for b in ldominant_up_below(lmul(shift, r)):
                opts.append((r, b))
        per.append(opts)
    return [
        (AffineElt.from_locals(c[0] for c in combo), AffineElt.from_locals(c[1] for c in combo))
        for combo in itertools.product(*per)
    ]


def w_question(rho_sp: TypePresentation, strict: bool = False, starred: bool = False) -> WeightSet:
    """``W?(rho_sp)``.

    ``starred=True`` uses ``w~*(rho) = s^{-1} t_{mu + eta0}`` in place of
    ``w~(rho)``; it is kept only to document why the unstarred element is the
    one consistent with the extremal weights.
    """
    cfg = rho_sp.cfg
    gate(rho_sp.depth, max(2, cfg.e) * cfg.h, "w_question", strict)
    p = cfg.require_p()
    base = rho_sp.w_tau()
    if starred:
        base = base.star().with_dual(False)
    weights = [_pair_weight(base, w_lam, w2, p) for w_lam, w2 in wq_pairs(cfg)]
    return WeightSet.build(weights, "Wq")


def w_question_tau(rho_sp: TypePresentation, tau: TypePresentation, strict: bool = False) -> WeightSet:
    """``W?(rho_sp, tau)`` through the Bruhat inequality on ``jh`` pairs."""
    cfg = rho_sp.cfg
    shape = relative_shape(rho_sp, tau)
    gate(tau.depth, JH_DEPTH * cfg.h, "w_question_tau", strict)
    p = cfg.require_p()
    n, f, e = cfg.n, cfg.f, cfg.e
    top = AffineElt.finite((longest(n),) * f) * AffineElt.translation(wscale(e - 1, cfg.eta0))
    base = tau.w_tau()
    whf = w_h(n, f)
    weights, mult = [], {}
    for w_lam, w2 in jh_pairs(tau):
        if bruhat_le(w2 * shape, top * w_lam):
            sw = _pair_weight(base, w_lam, w2, p)
            weights.append(sw)
            if w2 == whf * w_lam:
                mult[sw] = 1
    return WeightSet.build(weights, "WqTau", mult)


def extremal_weight(rho_sp: TypePresentation, w: FinWeyl) -> SerreWeight:
    cfg = rho_sp.cfg
    lift = restricted_lift(w)
    omega = rho_sp.w_tau().apply(lift.inverse().apply(wscale(-(cfg.e - 1), cfg.eta0)))
    return weight_from_presentation(lift, omega, cfg.require_p())


def extremal_set(rho_sp: TypePresentation, strict: bool = False) -> dict[FinWeyl, SerreWeight]:
    """Extremal weight for every ``w`` in ``W^J``, in lexicographic order of ``w``."""
    cfg = rho_sp.cfg
    gate(rho_sp.depth, max(2, cfg.e) * cfg.h, "extremal_set", strict)
    return {
        w: extremal_weight(rho_sp, w)
        for w in itertools.product(all_perms(cfg.n), repeat=cfg.f)
    }


# rank two comparison ------------------------------------------------------------------------------


def delta_regular(lam: Weight, delta: tuple[int, ...], e: int, p: int) -> bool:
    for v, d in zip(lam, delta):
        x = p - 1 - (v[0] - v[1]) - (2 * d - e + 1)
        if not 1 <= x <= p:
            return False
    return True


def R_delta(sigma: SerreWeight, delta: tuple[int, ...], e: int) -> SerreWeight:
    """``F(w_h . (lam - (e-1) eta0 + sum_j delta_j alpha_j))`` for ``n = 2``."""
    p, lam = sigma.p, sigma.lam
    f = len(lam)
    shifted = tuple(
        vadd(vsub(v, vscale(e - 1, (1, 0))), (d, -d)) for v, d in zip(lam, delta)
    )
    return weight_from_highest(p_dot(w_h(2, f), shifted, p), p)


def schein_compare(rho_sp: TypePresentation, strict: bool = False) -> dict:
    """Compare ``W?(rho_sp)`` with the union of ``R^delta`` over the Jordan-Holder factors."""
    cfg = rho_sp.cfg
    if cfg.n != 2:
        raise WrongRank("the comparison is only available for n = 2")
    p, e, f = cfg.require_p(), cfg.e, cfg.f
    if e > p - 1:
        raise RamificationTooLarge(f"e = {e} exceeds p - 1 = {p - 1}")
    gate(rho_sp.depth, e * cfg.h, "schein_compare", strict)
    tau_bar = TypePresentation(cfg, rho_sp.s, rho_sp.mu, "E")
    constituents = jh(tau_bar, strict=strict)
    union, all_regular = set(), True
    for sigma in constituents:
        for delta in itertools.product(range(e), repeat=f):
            all_regular &= delta_regular(sigma.lam, delta, e, p)
            union.add(R_delta(sigma, delta, e))
    wq = w_question(rho_sp, strict=strict).as_set()
    return {
        "equal": union == wq,
        "union": WeightSet.build(union, "Schein"),
        "w_question": WeightSet.build(wq, "Wq"),
        "missing": sorted(wq - union),
        "extra": sorted(union - wq),
        "delta_regular": all_regular,
    }


# parabolic assembly ---------------------------------------------------------------------------------


def maximally_ordinary(partition, block_weights, p: int) -> SerreWeight:
    """The weight with ``sigma^U = boxtimes_i sigma_i(-N_i)``, ``N_i = sum_{j>i} n_j``.

    ``block_weights[i]`` is a ``SerreWeight`` on ``GL_{n_i}`` or its highest
    weight (one ``n_i``-tuple per embedding).
    """
    partition = list(partition)
    if len(partition) != len(block_weights):
        raise PartitionMismatch("one weight per block is required")
    lams = [b.lam if isinstance(b, SerreWeight) else tuple(tuple(v) for v in b) for b in block_weights]
    for size, lam in zip(partition, lams):
        if any(len(v) != size for v in lam):
            raise PartitionMismatch(f"block of size {size} got weight {lam}")
    f = len(lams[0])
    rows = []
    for j in range(f):
        row: list[int] = []
        for i, lam in enumerate(lams):
            shift = sum(partition[i + 1 :])
            row.extend(x - shift for x in lam[j])
        rows.append(tuple(row))
    return weight_from_highest(tuple(rows), p)


__all__ = [
    "SerreWeight",
    "WeightSet",
    "canonical_lambda",
    "weight_from_highest",
    "weight_from_presentation",
    "compatible_presentation",
    "R",
    "jh",
    "w_question",
    "w_question_tau",
    "extremal_set",
    "extremal_weight",
    "schein_compare",
    "maximally_ordinary",
]
