"""Lowest alcove presentations of tame inertial types.

A presentation is a pair ``(s, mu)`` with ``s`` in ``W^J`` and ``mu`` in the
base p-alcove.  Its affine element is ``w~(tau) = t_{mu + eta0} s``.  A
presentation over the residue field (``field_flag="F"``) has the same affine
element, but its class in ``W~ / W_a`` is read off ``t_{mu - (e-1) eta0} s``.

Two presentations differing by ``mu -> mu + (p - pi) h`` with ``h`` in
``X^0`` describe the same type; ``rezeta`` moves between them.

>>> cfg = RootDatumConfig(n=2, f=1, e=1, p=7)
>>> render_characters(TypePresentation(cfg, ((0, 1),), ((0, 0),))).exponents
((1, 0),)
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from dataclasses import field as dc_field

from .affine import AffineElt
from .errors import DepthTooShallow, IncompatiblePresentations, NoCompatiblePresentation
from .geometry import depth_in_base
from .rootdatum import (
    FinWeyl,
    Perm,
    RootDatumConfig,
    Weight,
    act,
    compose,
    identity,
    perm_inverse,
    sorting_perm,
    vadd,
    vscale,
    vsub,
    wadd,
    wscale,
    wsub,
)


class GenericityWarning(UserWarning):
    """An input is shallower than the bound under which a formula is proven."""


def gate(depth: int, needed: int, what: str, strict: bool) -> None:
    if depth >= needed:
        return
    msg = f"{what} needs depth {needed}, input has depth {depth}"
    if strict:
        raise DepthTooShallow(msg)
    warnings.warn(msg, GenericityWarning, stacklevel=3)


def solve_p_minus_pi(d: tuple[int, ...], p: int) -> tuple[int, ...] | None:
    """The ``h`` with ``p h_j - h_{j+1} = d_j`` for all ``j``, if integral."""
    f = len(d)
    den = p**f - 1
    out = []
    for j in range(f):
        num = sum(p ** (f - 1 - k) * d[(j + k) % f] for k in range(f))
        if num % den:
            return None
        out.append(num // den)
    return tuple(out)


@dataclass(frozen=True)
class TypePresentation:
    cfg: RootDatumConfig
    s: FinWeyl
    mu: Weight
    field_flag: str = "E"
    depth: int = dc_field(init=False, compare=False)

    def __post_init__(self) -> None:
        if self.field_flag not in ("E", "F"):
            raise ValueError(f"field_flag must be 'E' or 'F', got {self.field_flag!r}")
        n, f = self.cfg.n, self.cfg.f
        if len(self.s) != f or len(self.mu) != f:
            raise ValueError(f"expected {f} embeddings")
        if any(len(v) != n for v in self.mu) or any(len(w) != n for w in self.s):
            raise ValueError(f"expected rank {n}")
        object.__setattr__(self, "depth", depth_in_base(self.mu, self.cfg.require_p()))

    @classmethod
    def from_element(
        cls, cfg: RootDatumConfig, a: AffineElt, field_flag: str = "E"
    ) -> "TypePresentation":
        """Read ``(s, mu)`` off ``a = t_{mu + eta0} s``."""
        return cls(cfg, a.w, wsub(a.nu, cfg.eta0), field_flag)

    # affine elements
    def w_tau(self) -> AffineElt:
        return AffineElt(wadd(self.mu, self.cfg.eta0), self.s)

    def zeta_element(self) -> AffineElt:
        if self.field_flag == "E":
            return self.w_tau()
        shift = wsub(self.mu, wscale(self.cfg.e - 1, self.cfg.eta0))
        return AffineElt(shift, self.s)

    def zeta(self) -> tuple[int, ...]:
        return self.zeta_element().zeta_class()

    def raw_zeta(self) -> tuple[int, ...]:
        return self.w_tau().zeta_class()

    # re-presentation
    def shifted(self, h: tuple[int, ...]) -> "TypePresentation":
        """``mu + (p - pi) h``: the same type, another presentation."""
        p, n = self.cfg.require_p(), self.cfg.n
        f = self.cfg.f
        d = [p * h[j] - h[(j + 1) % f] for j in range(f)]
        mu = tuple(vadd(v, (d[j],) * n) for j, v in enumerate(self.mu))
        return TypePresentation(self.cfg, self.s, mu, self.field_flag)

    def conjugated(self, ks: tuple[int, ...]) -> "TypePresentation":
        """Twisted conjugate ``g_p w~(tau) pi(g)^{-1}`` by ``g = (rho^{k_j})_j`` in ``Omega^f``.

        Here ``g_p = t_{p x} w`` for ``g = t_x w``.  The type is unchanged and
        ``mu`` stays in the base alcove, while ``s`` and the class move.
        """
        cfg = self.cfg
        p, n, f = cfg.require_p(), cfg.n, cfg.f
        gs = [AffineElt.rho(n, 1, k).local(0) for k in ks]
        lam = wadd(self.mu, cfg.eta0)
        nus, ss = [], []
        for j in range(f):
            x, w = gs[j]
            x1, w1 = gs[(j + 1) % f]
            sp = compose(compose(w, self.s[j]), perm_inverse(w1))
            nus.append(vsub(vadd(vscale(p, x), act(w, lam[j])), act(sp, x1)))
            ss.append(sp)
        return TypePresentation(cfg, tuple(ss), wsub(tuple(nus), cfg.eta0), self.field_flag)

    def _central_shift(self, zeta) -> "TypePresentation | None":
        n, p = self.cfg.n, self.cfg.require_p()
        delta = tuple(z - c for z, c in zip(zeta, self.zeta()))
        if any(x % n for x in delta):
            return None
        d = tuple(x // n for x in delta)
        if solve_p_minus_pi(d, p) is None:
            return None
        mu = tuple(vadd(v, (d[j],) * n) for j, v in enumerate(self.mu))
        return TypePresentation(self.cfg, self.s, mu, self.field_flag)

    def rezeta(self, zeta) -> "TypePresentation":
        """The equivalent presentation whose class is ``zeta``."""
        zeta = tuple(zeta)
        for ks in itertools.product(range(self.cfg.n), repeat=self.cfg.f):
            out = self.conjugated(ks)._central_shift(zeta)
            if out is not None:
                return out
        raise NoCompatiblePresentation(f"no presentation of this type has class {zeta}")

    def niveau(self) -> int:
        return niveau(self.s)

    def require_depth(self, needed: int, what: str, strict: bool = False) -> None:
        gate(self.depth, needed, what, strict)

    def as_dict(self) -> dict:
        return {
            "s": [[x + 1 for x in w] for w in self.s],
            "mu": [list(v) for v in self.mu],
            "field": self.field_flag,
            "depth": self.depth,
        }


def zeta_class(a: AffineElt) -> tuple[int, ...]:
    return a.zeta_class()


def check_compatible(rho_sp: TypePresentation, tau: TypePresentation) -> None:
    if rho_sp.zeta() != tau.zeta():
        raise IncompatiblePresentations(
            f"classes differ: {rho_sp.zeta()} (residual) vs {tau.zeta()} (type)"
        )


def relative_shape(rho_sp: TypePresentation, tau: TypePresentation) -> AffineElt:
    """``w~(tau)^{-1} w~(rho_sp)``, an element of ``t_{e eta0} W_a``."""
    check_compatible(rho_sp, tau)
    shape = tau.w_tau().inverse() * rho_sp.w_tau()
    cfg = rho_sp.cfg
    expected = AffineElt.translation(wscale(cfg.e, cfg.eta0)).zeta_class()
    assert shape.zeta_class() == expected, "relative shape left the coset of t_{e eta0}"
    return shape


# characters --------------------------------------------------------------------------


def niveau(s: FinWeyl) -> int:
    """Order of ``s_0 s_1 ... s_{f-1}``."""
    prod = identity(len(s[0]))
    for w in s:
        prod = compose(prod, w)
    r, cur = 1, prod
    while cur != identity(len(prod)):
        cur = compose(cur, prod)
        r += 1
    return r


@dataclass(frozen=True)
class CharacterData:
    r: int
    modulus: int
    exponents: tuple[tuple[int, ...], ...]
    orientation: tuple[Perm, ...]

    def reduced(self, jp: int = 0) -> tuple[int, ...]:
        """``a'^{(jp)}`` modulo ``p^{fr} - 1``."""
        return tuple(x % self.modulus for x in self.exponents[jp])


def render_characters(t: TypePresentation) -> CharacterData:
    """Exponents ``a'^{(j')}`` and orientations for ``j'`` in ``Z/fr``.

    With ``lam = mu + eta0`` and ``pi_m = s_0 s_1 ... s_{m-1}`` (indices mod f,
    periodic of period ``fr``) we set
    ``a'^{(j')} = sum_k p^k pi_{j'-k}(lam_{j'-k})``, ``0 <= k < fr``.
    Then ``p a'^{(j')} = a'^{(j'+1)}`` modulo ``p^{fr} - 1``; the orientation is
    found by sorting.
    """
    cfg = t.cfg
    p, f, n = cfg.require_p(), cfg.f, cfg.n
    r = t.niveau()
    fr = f * r
    lam = wadd(t.mu, cfg.eta0)
    pis = [identity(n)]
    for m in range(1, fr):
        pis.append(compose(pis[-1], t.s[(m - 1) % f]))
    exps, orient = [], []
    for jp in range(fr):
        acc = (0,) * n
        for k in range(fr):
            m = (jp - k) % fr
            acc = vadd(acc, vscale(p**k, act(pis[m], lam[m % f])))
        if len(set(acc)) != n:
            raise DepthTooShallow(f"exponents {acc} are not distinct")
        exps.append(acc)
        orient.append(sorting_perm(acc))
    return CharacterData(r, p**fr - 1, tuple(exps), tuple(orient))


def check_characters(t: TypePresentation, data: CharacterData) -> bool:
    """Both contract invariants: the mod-p congruence and dominance."""
    p = t.cfg.require_p()
    lam = wadd(t.mu, t.cfg.eta0)
    for jp, a in enumerate(data.exponents):
        oi = perm_inverse(data.orientation[jp])
        b = act(oi, a)
        if any(b[i] <= b[i + 1] for i in range(len(b) - 1)):
            return False
        if jp < t.cfg.f:
            target = act(perm_inverse(t.s[jp]), lam[jp])
            if any((x - y) % p for x, y in zip(b, target)):
                return False
    for jp in range(len(data.exponents)):
        nxt = data.exponents[(jp + 1) % len(data.exponents)]
        cur = data.exponents[jp]
        if any((p * x - y) % data.modulus for x, y in zip(cur, nxt)):
            return False
    return True


def type_character_sum(data: CharacterData) -> list[int]:
    """The exponents of ``omega_{fr}`` in ``tau``, reduced and sorted."""
    return sorted(data.reduced(0))

