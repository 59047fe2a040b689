"""Extended affine Weyl group of GL_n over f embeddings.

An element ``t_nu w`` is stored per embedding as the pair ``(nu_j, w_j)`` and
acts on ``X*(T) (x) R`` by ``x -> w(x) + nu``.  Products follow
``(t_nu w)(t_mu u) = t_{nu + w mu} wu``.

The Coxeter structure is the one attached to the dominant base alcove ``A0``
with barycenter ``eta0 / n``.  Points are tracked in the scaled integer
coordinates ``n * g(eta0 / n) = w(eta0) + n nu`` so that every floor used for
lengths and descents is exact.

A ``dual`` flag marks elements of the twin group whose Coxeter structure is
taken from the antidominant base alcove.  Its length and Bruhat order are
transported through ``t_nu w -> t_{-nu} w``.

>>> a = parse("t[1,0]")
>>> a.length()
1
>>> str(a.star())
't[1,0]·w(1,2)∨'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import ParseError, PreconditionError, WrongCoset
from .rootdatum import (
    FinWeyl,
    Perm,
    Vec,
    Weight,
    act,
    compose,
    eta0_vec,
    identity,
    longest,
    one_line,
    from_one_line,
    perm_inverse,
    positive_roots,
    transposition,
    vadd,
    vneg,
    vscale,
)

Local = tuple[Vec, Perm]

# per-embedding primitives ------------------------------------------------------


def lmul(a: Local, b: Local) -> Local:
    return (vadd(a[0], act(a[1], b[0])), compose(a[1], b[1]))


def linv(a: Local) -> Local:
    wi = perm_inverse(a[1])
    return (vneg(act(wi, a[0])), wi)


def lapply(a: Local, x: Vec) -> Vec:
    return vadd(act(a[1], x), a[0])


def lpoint(a: Local) -> Vec:
    """Scaled image ``n * a(eta0 / n)`` of the barycenter of ``A0``."""
    n = len(a[1])
    return vadd(act(a[1], eta0_vec(n)), vscale(n, a[0]))


def lzeta(a: Local) -> int:
    return sum(a[0])


@lru_cache(maxsize=1 << 18)
def lfloors(a: Local) -> tuple[int, ...]:
    """Floors of ``<a(x), beta^vee>`` over positive roots, in ``positive_roots`` order."""
    n = len(a[1])
    y = lpoint(a)
    return tuple((y[i] - y[k]) // n for i, k in positive_roots(n))


@lru_cache(maxsize=1 << 18)
def llength(a: Local) -> int:
    return sum(abs(v) for v in lfloors(a))


@lru_cache(maxsize=None)
def lsimple(n: int, i: int) -> Local:
    """Simple reflection ``s_i``; ``i = 0`` is the affine one."""
    zero = (0,) * n
    if i == 0:
        nu = [0] * n
        nu[0], nu[-1] = 1, -1
        return (tuple(nu), transposition(n, 0, n - 1))
    return (zero, transposition(n, i - 1, i))


def lis_left_descent(n: int, i: int, y: Vec) -> bool:
    if i == 0:
        return y[0] - y[n - 1] > n
    return y[i - 1] - y[i] < 0


def lfirst_descent(a: Local) -> int | None:
    n = len(a[1])
    y = lpoint(a)
    for i in range(n):
        if lis_left_descent(n, i, y):
            return i
    return None


@lru_cache(maxsize=None)
def lrho(n: int) -> Local:
    """Generator ``t_{e_1} c`` of the length-zero subgroup, ``c: i -> i + 1``."""
    nu = [0] * n
    nu[0] = 1
    return (tuple(nu), tuple((i + 1) % n for i in range(n)))


def lrho_power(n: int, k: int) -> Local:
    out: Local = ((0,) * n, identity(n))
    base = lrho(n) if k >= 0 else linv(lrho(n))
    for _ in range(abs(k)):
        out = lmul(out, base)
    return out


@lru_cache(maxsize=1 << 20)
def lbruhat(a: Local, b: Local) -> bool:
    """Bruhat order by the lifting property (left descents)."""
    if a == b:
        return True
    if lzeta(a) != lzeta(b):
        return False
    la, lb = llength(a), llength(b)
    if la >= lb:
        return False
    n = len(a[1])
    i = lfirst_descent(b)
    s = lsimple(n, i)
    sb = lmul(s, b)
    if lis_left_descent(n, i, lpoint(a)):
        return lbruhat(lmul(s, a), sb)
    return lbruhat(a, sb)


def lneg(a: Local) -> Local:
    return (vneg(a[0]), a[1])


# the element type ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class AffineElt:
    """``t_nu w`` in the f-fold extended affine Weyl group."""

    nu: Weight
    w: FinWeyl
    dual: bool = False

    def __post_init__(self) -> None:
        if len(self.nu) != len(self.w) or not self.nu:
            raise PreconditionError("nu and w must have the same number of embeddings")

    # shape
    @property
    def n(self) -> int:
        return len(self.w[0])

    @property
    def f(self) -> int:
        return len(self.w)

    def local(self, j: int) -> Local:
        return (self.nu[j], self.w[j])

    def locals(self) -> tuple[Local, ...]:
        return tuple(zip(self.nu, self.w))

    @classmethod
    def from_locals(cls, parts, dual: bool = False) -> "AffineElt":
        parts = tuple(parts)
        return cls(tuple(p[0] for p in parts), tuple(p[1] for p in parts), dual)

    # constructors
    @classmethod
    def identity(cls, n: int, f: int = 1) -> "AffineElt":
        return cls(((0,) * n,) * f, (identity(n),) * f)

    @classmethod
    def translation(cls, nu: Weight) -> "AffineElt":
        n = len(nu[0])
        return cls(tuple(tuple(v) for v in nu), (identity(n),) * len(nu))

    @classmethod
    def finite(cls, w: FinWeyl) -> "AffineElt":
        n = len(w[0])
        return cls(((0,) * n,) * len(w), tuple(w))

    @classmethod
    def simple(cls, n: int, f: int, j: int, i: int) -> "AffineElt":
        parts = [((0,) * n, identity(n))] * f
        parts[j] = lsimple(n, i)
        return cls.from_locals(parts)

    @classmethod
    def rho(cls, n: int, f: int = 1, power=1) -> "AffineElt":
        """Length-zero element ``rho^k`` with ``k`` given per embedding or uniformly."""
        ks = (power,) * f if isinstance(power, int) else tuple(power)
        return cls.from_locals(lrho_power(n, k) for k in ks)

    # group structure
    def _check(self, other: "AffineElt") -> None:
        if self.dual != other.dual or self.n != other.n or self.f != other.f:
            raise PreconditionError("elements live in different groups")

    def __mul__(self, other: "AffineElt") -> "AffineElt":
        self._check(other)
        return AffineElt.from_locals(
            (lmul(a, b) for a, b in zip(self.locals(), other.locals())), self.dual
        )

    def inverse(self) -> "AffineElt":
        return AffineElt.from_locals((linv(a) for a in self.locals()), self.dual)

    def __pow__(self, k: int) -> "AffineElt":
        base = self if k >= 0 else self.inverse()
        out = AffineElt.identity(self.n, self.f)
        out = AffineElt(out.nu, out.w, self.dual)
        for _ in range(abs(k)):
            out = out * base
        return out

    def apply(self, lam: Weight) -> Weight:
        """Affine action ``x -> w(x) + nu`` on an integral weight."""
        return tuple(lapply(a, x) for a, x in zip(self.locals(), lam))

    def translation_part(self) -> Weight:
        return self.nu

    def finite_part(self) -> FinWeyl:
        return self.w

    def with_dual(self, dual: bool) -> "AffineElt":
        return AffineElt(self.nu, self.w, dual)

    def star(self) -> "AffineElt":
        """``(t_nu w)* = w^{-1} t_nu`` in the twin group."""
        parts = []
        for nu, w in self.locals():
            wi = perm_inverse(w)
            parts.append((act(wi, nu), wi))
        return AffineElt.from_locals(parts, not self.dual)

    def _coxeter_locals(self) -> tuple[Local, ...]:
        if self.dual:
            return tuple(lneg(a) for a in self.locals())
        return self.locals()

    # Coxeter data
    def length(self) -> int:
        return sum(llength(a) for a in self._coxeter_locals())

    def zeta_class(self) -> tuple[int, ...]:
        """Image in ``W~ / W_a``, one integer per embedding."""
        return tuple(sum(v) for v in self.nu)

    def in_affine_weyl(self) -> bool:
        return all(z == 0 for z in self.zeta_class())

    def reduced_word(self) -> tuple[list[tuple[int, int]], "AffineElt"]:
        """Letters ``(j, i)`` and ``delta`` of length 0 with ``self = s.. s.. delta``."""
        word: list[tuple[int, int]] = []
        parts = list(self._coxeter_locals())
        for j in range(self.f):
            cur = parts[j]
            while True:
                i = lfirst_descent(cur)
                if i is None:
                    break
                word.append((j, i))
                cur = lmul(lsimple(self.n, i), cur)
            parts[j] = cur
        if self.dual:
            parts = [lneg(a) for a in parts]
        return word, AffineElt.from_locals(parts, self.dual)

    def __str__(self) -> str:
        return format_elt(self)


# Bruhat order, Omega decomposition --------------------------------------------------


def bruhat_le(a: AffineElt, b: AffineElt) -> bool:
    """``a <= b``; elements in different cosets of ``W_a`` are incomparable."""
    a._check(b)
    pa, pb = a._coxeter_locals(), b._coxeter_locals()
    return all(lbruhat(x, y) for x, y in zip(pa, pb))


def omega_decompose(a: AffineElt) -> tuple[AffineElt, AffineElt]:
    """``a = w_a * delta`` with ``w_a`` in ``W_a`` and ``delta`` of length zero."""
    if a.dual:
        # t_nu w -> t_{-nu} w is an automorphism carrying one structure to the other
        base, delta = omega_decompose(AffineElt.from_locals(a._coxeter_locals()))
        return (
            AffineElt.from_locals((lneg(x) for x in base.locals()), True),
            AffineElt.from_locals((lneg(x) for x in delta.locals()), True),
        )
    delta = AffineElt.rho(a.n, a.f, a.zeta_class())
    return a * delta.inverse(), delta


def require_coset(a: AffineElt, target) -> None:
    if tuple(a.zeta_class()) != tuple(target):
        raise WrongCoset(f"{a} has zeta class {a.zeta_class()}, expected {tuple(target)}")


def longest_elt(n: int, f: int = 1) -> AffineElt:
    return AffineElt.finite((longest(n),) * f)


def translation(nu) -> AffineElt:
    return AffineElt.translation(tuple(tuple(v) for v in nu))


# text format ------------------------------------------------------------------

_ELT_RE = re.compile(r"^(?:t\[(?P<nu>[^\]]*)\])?(?:[·*.]?w\((?P<w>[^)]*)\))?(?P<dual>∨|\^v)?$")


def format_elt(a: AffineElt) -> str:
    nu = ";".join(",".join(str(x) for x in v) for v in a.nu)
    w = ";".join(",".join(str(x) for x in one_line(p)) for p in a.w)
    return f"t[{nu}]·w({w})" + ("∨" if a.dual else "")


def _parse_rows(body: str) -> list[list[int]]:
    try:
        return [[int(x) for x in row.split(",")] for row in body.split(";")]
    except ValueError as exc:
        raise ParseError(f"bad integer list {body!r}") from exc


def parse(text: str, n: int | None = None, f: int | None = None) -> AffineElt:
    """Parse ``t[nu_1;...;nu_f]·w(one-line;...)``; either half may be omitted."""
    s = "".join(text.split())
    if s.startswith("dual:"):
        s = s[5:] + "∨"
    m = _ELT_RE.match(s)
    if not m or (m.group("nu") is None and m.group("w") is None):
        raise ParseError(f"cannot parse element {text!r}")
    nu = _parse_rows(m.group("nu")) if m.group("nu") is not None else None
    w = [from_one_line(r) for r in _parse_rows(m.group("w"))] if m.group("w") is not None else None
    if nu is None:
        nu = [[0] * len(p) for p in w]
    if w is None:
        w = [identity(len(v)) for v in nu]
    if f is not None and len(nu) == 1 and f > 1 and len(w) == 1:
        nu, w = nu * f, w * f
    if len(nu) != len(w) or any(len(v) != len(p) for v, p in zip(nu, w)):
        raise ParseError(f"inconsistent sizes in {text!r}")
    if n is not None and any(len(p) != n for p in w):
        raise ParseError(f"expected rank {n} in {text!r}")
    if f is not None and len(w) != f:
        raise ParseError(f"expected {f} embeddings in {text!r}")
    return AffineElt(tuple(tuple(v) for v in nu), tuple(w), bool(m.group("dual")))


def lball(n: int, zeta: int, max_len: int) -> list[Local]:
    """All local elements in the coset ``zeta`` of length at most ``max_len``."""
    start = lrho_power(n, zeta)
    layer, seen = [start], {start}
    out = [start]
    for _ in range(max_len):
        nxt = []
        for g in layer:
            lg = llength(g)
            for i in range(n):
                h = lmul(lsimple(n, i), g)
                if h not in seen and llength(h) == lg + 1:
                    seen.add(h)
                    nxt.append(h)
        out.extend(nxt)
        layer = nxt
    return out
