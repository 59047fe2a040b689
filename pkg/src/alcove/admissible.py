"""Admissible sets and the rank-one corridors inside ``Adm(e eta0)``.

For a finite Weyl element ``w`` and a simple root ``alpha`` the corridor is
``w^{-1} W_{a,alpha} t_{e eta0} w`` intersected with ``Adm(e eta0)``.  Per
embedding it consists of the ``2e + 1`` elements

* ``translation(k) = t_{w^{-1}(e eta0 - k alpha)}`` for ``0 <= k <= e``;
* ``reflected(k) = w~^{-1} s_alpha t_{e eta0 - (k+1) alpha} w~`` for
  ``0 <= k <= e - 1``,

where ``w~`` is the restricted lift of ``w``.  Simple roots are indexed from 1
as in ``alpha_i = e_i - e_{i+1}``.

>>> len(corridor(((0, 1, 2),), (1,), 3))
7
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .affine import AffineElt, Local, lball, lbruhat, linv, llength, lmul
from .config import length_cap
from .errors import CapExceeded, NotInCorridor, PreconditionError
from .geometry import lrestricted_lift
from .rootdatum import (
    FinWeyl,
    Perm,
    Vec,
    Weight,
    act,
    all_perms,
    eta0_vec,
    identity,
    is_dominant,
    one_line,
    perm_inverse,
    root_vector,
    transposition,
    vneg,
    vscale,
    vsub,
)

TRANSLATION = "translation"
REFLECTED = "reflected"


@dataclass(frozen=True, order=True)
class CorridorTag:
    """Position of one embedding's component inside the corridor ``(w, alpha)``."""

    alpha: int
    w_line: tuple[int, ...]
    kind: str
    k: int

    @property
    def w(self) -> Perm:
        return tuple(x - 1 for x in self.w_line)

    def is_endpoint(self, e: int) -> bool:
        return self.kind == TRANSLATION and self.k in (0, e)

    def as_dict(self) -> dict:
        return {"w": list(self.w_line), "alpha": self.alpha, "kind": self.kind, "k": self.k}


@dataclass(frozen=True)
class CorridorElt:
    element: AffineElt
    tags: tuple[CorridorTag, ...]

    @property
    def base_w(self) -> FinWeyl:
        return tuple(t.w for t in self.tags)

    @property
    def alpha(self) -> tuple[int, ...]:
        return tuple(t.alpha for t in self.tags)

    @property
    def kind(self) -> tuple[str, ...]:
        return tuple(t.kind for t in self.tags)

    @property
    def k(self) -> tuple[int, ...]:
        return tuple(t.k for t in self.tags)


# admissible sets --------------------------------------------------------------------


def _translation(v: Vec) -> Local:
    return (tuple(v), identity(len(v)))


def _check_dominant(lam: Weight) -> None:
    if not all(is_dominant(v) for v in lam):
        raise PreconditionError(f"{lam} is not dominant")


@lru_cache(maxsize=None)
def ladm(lam: Vec) -> frozenset[Local]:
    """``Adm(lam)`` for one embedding: the coset ball filtered by Bruhat order."""
    n = len(lam)
    top = _translation(lam)
    bound = llength(top)
    if bound > length_cap():
        raise CapExceeded(f"Adm({lam}) needs length {bound} > cap {length_cap()}")
    extremes = {_translation(act(w, lam)) for w in all_perms(n)}
    pool = lball(n, sum(lam), bound)
    return frozenset(g for g in pool if any(lbruhat(g, t) for t in extremes))


def adm_contains(a: AffineElt, lam: Weight) -> bool:
    _check_dominant(lam)
    if a.dual:
        raise PreconditionError("admissible sets live in the non-dual group")
    for loc, v in zip(a.locals(), lam):
        if not any(lbruhat(loc, _translation(act(w, v))) for w in all_perms(len(v))):
            return False
    return True


def adm_enumerate(lam: Weight) -> list[AffineElt]:
    """All of ``Adm(lam)``, sorted."""
    _check_dominant(lam)
    parts = [sorted(ladm(tuple(v))) for v in lam]
    return [AffineElt.from_locals(c) for c in itertools.product(*parts)]


def adm_size(lam: Weight) -> int:
    _check_dominant(lam)
    out = 1
    for v in lam:
        out *= len(ladm(tuple(v)))
    return out


# corridors -------------------------------------------------------------------------------


def simple_root_vec(n: int, alpha: int) -> Vec:
    if not 1 <= alpha <= n - 1:
        raise PreconditionError(f"simple root index must lie in 1..{n - 1}, got {alpha}")
    return root_vector(n, (alpha - 1, alpha))


def simple_reflection_perm(n: int, alpha: int) -> Perm:
    return transposition(n, alpha - 1, alpha)


@lru_cache(maxsize=None)
def lcorridor(w: Perm, alpha: int, e: int) -> tuple[tuple[Local, CorridorTag], ...]:
    n = len(w)
    av = simple_root_vec(n, alpha)
    top = vscale(e, eta0_vec(n))
    wi = perm_inverse(w)
    lift = lrestricted_lift(w)
    sa = ((0,) * n, simple_reflection_perm(n, alpha))
    line = one_line(w)
    out = []
    for k in range(e + 1):
        loc = _translation(act(wi, vsub(top, vscale(k, av))))
        out.append((loc, CorridorTag(alpha, line, TRANSLATION, k)))
    for k in range(e):
        mid = lmul(sa, _translation(vsub(top, vscale(k + 1, av))))
        loc = lmul(lmul(linv(lift), mid), lift)
        out.append((loc, CorridorTag(alpha, line, REFLECTED, k)))
    return tuple(out)


def corridor(w: FinWeyl, alpha, e: int) -> list[CorridorElt]:
    """The ``(2e+1)^f`` corridor elements, componentwise over the embeddings."""
    f = len(w)
    alphas = (alpha,) * f if isinstance(alpha, int) else tuple(alpha)
    if len(alphas) != f:
        raise PreconditionError("need one simple root per embedding")
    per = [lcorridor(tuple(wj), aj, e) for wj, aj in zip(w, alphas)]
    out = []
    for combo in itertools.product(*per):
        out.append(
            CorridorElt(AffineElt.from_locals(c[0] for c in combo), tuple(c[1] for c in combo))
        )
    return out


@lru_cache(maxsize=None)
def _tag_index(n: int, e: int) -> dict[Local, tuple[CorridorTag, ...]]:
    index: dict[Local, list[CorridorTag]] = {}
    for w in all_perms(n):
        for alpha in range(1, n):
            for loc, tag in lcorridor(w, alpha, e):
                index.setdefault(loc, []).append(tag)
    return {k: tuple(sorted(v)) for k, v in index.items()}


def corridor_tags(loc: Local, e: int) -> tuple[CorridorTag, ...]:
    """Every corridor description of a local element, in tie-break order."""
    return _tag_index(len(loc[1]), e).get(loc, ())


def classify_corridor(a: AffineElt, e: int) -> CorridorElt | None:
    """The least tag per embedding, or ``None`` if some component is in no corridor."""
    tags = []
    for loc in a.locals():
        found = corridor_tags(loc, e)
        if not found:
            return None
        tags.append(found[0])
    return CorridorElt(a, tuple(tags))


def two_sigma_bound(a: AffineElt, e: int) -> frozenset[FinWeyl]:
    """All ``sigma`` in ``W^J`` with ``a <= t_{sigma^{-1}(e eta0)}``."""
    if classify_corridor(a, e) is None:
        raise NotInCorridor(f"{a} is not in a corridor for e={e}")
    per = []
    for loc in a.locals():
        n = len(loc[1])
        top = vscale(e, eta0_vec(n))
        per.append(
            [s for s in all_perms(n) if lbruhat(loc, _translation(act(perm_inverse(s), top)))]
        )
    return frozenset(itertools.product(*per))


# the full strip and its upward closure ---------------------------------------------------------


def in_strip(loc: Local, w: Perm, alpha: int, e: int) -> bool:
    """Membership in ``w^{-1} W_{a,alpha} t_{e eta0} w`` (no admissibility)."""
    n = len(w)
    wl = ((0,) * n, w)
    h = lmul(lmul(wl, loc), linv(wl))
    h = lmul(h, _translation(vneg(vscale(e, eta0_vec(n)))))
    nu, u = h
    if u not in (identity(n), simple_reflection_perm(n, alpha)):
        return False
    i = alpha - 1
    return sum(nu) == 0 and all(x == 0 for q, x in enumerate(nu) if q not in (i, i + 1))


def upset_closed(w: Perm, alpha: int, e: int) -> bool:
    """Exhaustive check that ``[c, t_{w^{-1}(e eta0)}]`` stays in the strip for corridor ``c``."""
    n = len(w)
    top = _translation(act(perm_inverse(w), vscale(e, eta0_vec(n))))
    bound = llength(top)
    if bound > length_cap():
        raise CapExceeded(f"interval scan needs length {bound} > cap {length_cap()}")
    interval = [g for g in lball(n, sum(top[0]), bound) if lbruhat(g, top)]
    for c, _ in lcorridor(w, alpha, e):
        for g in interval:
            if lbruhat(c, g) and not in_strip(g, w, alpha, e):
                return False
    return True


def corridor_union_difference(n: int, e: int) -> list[AffineElt]:
    """Elements of ``Adm(e eta0)`` (one embedding) lying in no corridor."""
    lam = vscale(e, eta0_vec(n))
    covered = set(_tag_index(n, e))
    return [AffineElt.from_locals([g]) for g in sorted(ladm(lam) - covered)]


def corridor_position(tag: CorridorTag, e: int) -> int:
    """Index along the corridor: translations at even slots, reflections between them."""
    return 2 * tag.k if tag.kind == TRANSLATION else 2 * tag.k + 1


