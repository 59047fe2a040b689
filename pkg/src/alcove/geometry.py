"""Alcove geometry: dominance, restricted alcoves, the up-arrow order,
the p-dot action, genericity predicates and the regular normal form.

The up-arrow order is computed directly from its definition as a chain of
affine reflections, each carrying the current alcove from below a wall to
above it.  The search is pruned by the observation that the target minus the
current point must stay in the cone spanned by positive roots.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .affine import (
    AffineElt,
    Local,
    lfloors,
    lmul,
    lneg,
    lpoint,
    lzeta,
)
from .errors import NotRegular, PreconditionError
from .rootdatum import (
    FinWeyl,
    Perm,
    Vec,
    Weight,
    act,
    all_perms,
    eta0_vec,
    is_dominant,
    longest,
    pairing,
    perm_inverse,
    positive_roots,
    sorting_perm,
    vadd,
    vscale,
    vsub,
)

# profiles ------------------------------------------------------------------------


def alcove_profile(a: AffineElt) -> dict[tuple[int, tuple[int, int]], int]:
    """``{(j, beta): floor <a(x), beta^vee>}`` for ``x`` in ``A0``."""
    out = {}
    for j, loc in enumerate(a.locals()):
        for beta, fl in zip(positive_roots(a.n), lfloors(loc)):
            out[(j, beta)] = fl
    return out


def _ldominant(loc: Local) -> bool:
    return all(v >= 0 for v in lfloors(loc))


def _lrestricted(loc: Local) -> bool:
    n = len(loc[1])
    y = lpoint(loc)
    return all(0 < y[i] - y[i + 1] < n for i in range(n - 1))


def is_dominant_alcove(a: AffineElt) -> bool:
    return all(_ldominant(x) for x in a.locals())


def is_restricted(a: AffineElt) -> bool:
    return all(_lrestricted(x) for x in a.locals())


@lru_cache(maxsize=None)
def lrestricted_lift(w: Perm) -> Local:
    """The element ``t_lam w`` of the restricted set, normalised by ``lam_n = 0``."""
    n = len(w)
    wi = perm_inverse(w)
    lam = [0] * n
    for i in range(n - 2, -1, -1):
        lam[i] = lam[i + 1] + (1 if wi[i] > wi[i + 1] else 0)
    return (tuple(lam), w)


def restricted_lift(w: FinWeyl) -> AffineElt:
    """The normalised element of ``W~_1^+`` whose image in ``W`` is ``w``."""
    return AffineElt.from_locals(lrestricted_lift(tuple(p)) for p in w)


def restricted_elements(n: int, f: int = 1) -> list[AffineElt]:
    """Representatives of ``W~_1^+`` modulo ``X^0``, one per element of ``W^J``."""
    return [restricted_lift(w) for w in itertools.product(all_perms(n), repeat=f)]


def w_h(n: int, f: int = 1) -> AffineElt:
    """``w0 t_{-eta0}``."""
    w0 = AffineElt.finite((longest(n),) * f)
    return w0 * AffineElt.translation(((tuple(-x for x in eta0_vec(n))),) * f)


def dominant_rep(a: AffineElt) -> tuple[FinWeyl, AffineElt]:
    """``(w, x)`` with ``x`` dominant and ``a = w x``."""
    ws, parts = [], []
    for loc in a.locals():
        u = sorting_perm(lpoint(loc))
        ws.append(u)
        parts.append(lmul((tuple([0] * len(u)), perm_inverse(u)), loc))
    return tuple(ws), AffineElt.from_locals(parts, a.dual)


# up-arrow order -------------------------------------------------------------------


def _in_cone(d: Vec) -> bool:
    s = 0
    for x in d[:-1]:
        s += x
        if s < 0:
            return False
    return s + d[-1] == 0


@lru_cache(maxsize=1 << 18)
def lup(a: Local, b: Local) -> bool:
    if lzeta(a) != lzeta(b):
        return False
    n = len(a[1])
    ya, yb = lpoint(a), lpoint(b)
    if not _in_cone(vsub(yb, ya)):
        return False
    roots = positive_roots(n)
    seen = {ya}
    stack = [ya]
    while stack:
        y = stack.pop()
        if y == yb:
            return True
        d = vsub(yb, y)
        sums = list(itertools.accumulate(d))
        for i, k in roots:
            bound = min(sums[i:k])
            pc = y[i] - y[k]
            m = pc // n + 1
            while (t := n * m - pc) <= bound:
                y2 = list(y)
                y2[i] += t
                y2[k] -= t
                y2 = tuple(y2)
                if y2 not in seen:
                    seen.add(y2)
                    stack.append(y2)
                m += 1
    return False


def up_le(a: AffineElt, b: AffineElt) -> bool:
    """``a`` up-arrow ``b``: ``b(A0)`` is reached from ``a(A0)`` by upward reflections."""
    a._check(b)
    if a.dual:
        pa = [lneg(x) for x in a.locals()]
        pb = [lneg(x) for x in b.locals()]
    else:
        pa, pb = a.locals(), b.locals()
    return all(lup(x, y) for x, y in zip(pa, pb))


# p-dot action ----------------------------------------------------------------------


def p_dot(a: AffineElt, lam: Weight, p: int) -> Weight:
    """``(t_nu w) . lam = w(lam + eta0) + p nu - eta0``."""
    out = []
    for (nu, w), v in zip(a.locals(), lam):
        eta = eta0_vec(len(v))
        out.append(vsub(vadd(act(w, vadd(v, eta)), vscale(p, nu)), eta))
    return tuple(out)


def alcove_element_of_point(num: Vec, den: int) -> Local:
    """The element ``g`` with ``num/den`` in ``g(A0)``; raises on walls."""
    n = len(num)
    nu = tuple(x // den for x in num)
    frac = tuple(x - den * q for x, q in zip(num, nu))
    if len(set(frac)) != n:
        raise PreconditionError(f"point {num}/{den} lies on a wall")
    u = sorting_perm(frac)
    return (nu, u)


# genericity --------------------------------------------------------------------------


def _root_depth(h: int, p: int) -> int:
    r = h % p
    return -1 if r == 0 else min(r, p - r) - 1


def depth(lam: Weight, p: int) -> int:
    """Largest ``m`` such that ``lam`` is m-deep in its p-alcove (``-1`` on a wall)."""
    out = None
    for v in lam:
        shifted = vadd(v, eta0_vec(len(v)))
        for beta in positive_roots(len(v)):
            d = _root_depth(pairing(shifted, beta), p)
            out = d if out is None else min(out, d)
    return out


def depth_in_base(lam: Weight, p: int) -> int:
    """Depth of ``lam`` inside the base p-alcove, or ``-1`` if outside it."""
    out = None
    for v in lam:
        shifted = vadd(v, eta0_vec(len(v)))
        for beta in positive_roots(len(v)):
            h = pairing(shifted, beta)
            d = min(h, p - h) - 1 if 0 < h < p else -1
            out = d if out is None else min(out, d)
    return out


def is_m_deep(lam: Weight, m: int, p: int, base: bool = False) -> bool:
    return (depth_in_base(lam, p) if base else depth(lam, p)) >= m


def is_m_generic(lam: Weight, m: int, p: int) -> bool:
    """``lam - eta0`` is m-deep."""
    return depth(tuple(vsub(v, eta0_vec(len(v))) for v in lam), p) >= m


def is_m_small(a: AffineElt, m: int) -> bool:
    return all(
        abs(pairing(nu, beta)) <= m for nu in a.nu for beta in positive_roots(a.n)
    )


def is_e_regular(a: AffineElt, e: int) -> bool:
    """No ``(j, alpha)`` with ``a(A0)`` inside the strip ``1-e < <x, alpha> < e``."""
    return all(fl >= e or fl <= -e for fl in alcove_profile(a).values())


# regular normal form ------------------------------------------------------------------


def _lregular_decompose(loc: Local, e: int) -> list[tuple[Local, Local, Vec]]:
    n = len(loc[1])
    w0 = ((0,) * n, longest(n))
    base = vscale(e - 1, eta0_vec(n))
    out = []
    for u2 in all_perms(n):
        r2 = lrestricted_lift(u2)
        kappa, v = lmul(w0, lmul(r2, loc))
        r1 = lrestricted_lift(v)
        nu = vsub(vsub(kappa, base), r1[0])
        if is_dominant(nu):
            out.append((r1, r2, nu))
    return out


def regular_decompose(a: AffineElt, e: int) -> tuple[AffineElt, AffineElt, Weight]:
    """``(w1, w2, nu)`` with ``a = w2^{-1} w0 t_{nu + (e-1) eta0} w1``.

    ``w1`` and ``w2`` are the normalised restricted representatives, which pins
    down the ``X^0`` ambiguity, and ``nu`` is dominant.
    """
    if not is_e_regular(a, e):
        raise NotRegular(f"{a} is not {e}-regular")
    r1s, r2s, nus = [], [], []
    for loc in a.locals():
        sols = _lregular_decompose(loc, e)
        if len(sols) != 1:
            raise NotRegular(f"expected one decomposition, found {len(sols)}")
        r1, r2, nu = sols[0]
        r1s.append(r1)
        r2s.append(r2)
        nus.append(nu)
    return AffineElt.from_locals(r1s), AffineElt.from_locals(r2s), tuple(nus)


def materialize(w1: AffineElt, w2: AffineElt, nu: Weight, e: int) -> AffineElt:
    n, f = w1.n, w1.f
    w0 = AffineElt.finite((longest(n),) * f)
    t = AffineElt.translation(tuple(vadd(v, vscale(e - 1, eta0_vec(n))) for v in nu))
    return w2.inverse() * w0 * t * w1


# convex hull ------------------------------------------------------------------------------


def convex_hull_contains(lam: Vec, mu: Vec) -> bool:
    """``mu`` lies in the convex hull of ``W lam``: majorization of sorted entries."""
    a = sorted(lam, reverse=True)
    b = sorted(mu, reverse=True)
    if sum(a) != sum(b):
        return False
    return all(x <= y for x, y in zip(itertools.accumulate(b), itertools.accumulate(a)))


def sample_restricted_alcove_points(n: int) -> list[Vec]:
    """Scaled barycenters of the restricted alcoves, for diagnostics."""
    return [lpoint(lrestricted_lift(w)) for w in all_perms(n)]


__all__ = [
    "alcove_profile",
    "is_dominant_alcove",
    "is_restricted",
    "restricted_lift",
    "restricted_elements",
    "w_h",
    "dominant_rep",
    "up_le",
    "p_dot",
    "depth",
    "depth_in_base",
    "is_m_deep",
    "is_m_generic",
    "is_m_small",
    "is_e_regular",
    "regular_decompose",
    "materialize",
    "convex_hull_contains",
]


# bounded enumerations -------------------------------------------------------------------


def lbox(n: int, zeta: int, lo: int, hi: int) -> list[Local]:
    """Local elements of class ``zeta`` whose scaled barycenter image lies in ``[lo, hi]^n``."""
    out = []
    for u in all_perms(n):
        base = act(u, eta0_vec(n))
        ranges = [range(_ceil_div(lo - b, n), (hi - b) // n + 1) for b in base]
        for nu in itertools.product(*ranges[:-1]):
            last = zeta - sum(nu)
            if lo <= base[-1] + n * last <= hi:
                out.append((tuple(nu) + (last,), u))
    return out


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@lru_cache(maxsize=None)
def ldominant_up_below(target: Local) -> tuple[Local, ...]:
    """Dominant local elements ``g`` with ``g`` up-arrow ``target``."""
    n = len(target[1])
    t = lpoint(target)
    cands = lbox(n, sum(target[0]), t[-1], t[0])
    return tuple(sorted(g for g in cands if _ldominant(g) and lup(g, target)))


@lru_cache(maxsize=None)
def lup_above_in_wh_dominant(start: Local) -> tuple[Local, ...]:
    """Local ``b`` with ``start`` up-arrow ``b`` and ``w_h b`` dominant."""
    n = len(start[1])
    z = lpoint(start)
    wh = w_h(n).local(0)
    cands = lbox(n, sum(start[0]), z[0] - n * (n - 1), z[-1] + n * (n - 1))
    return tuple(sorted(b for b in cands if _ldominant(lmul(wh, b)) and lup(start, b)))
