"""The split group GL_n taken f times.

Weights are tuples of ``f`` integer ``n``-tuples, one per embedding
``j in Z/f``.  Permutations are stored 0-based in one-line form, so ``w[i]``
is the image of ``i``; they act on weights by ``(w lam)[w[i]] = lam[i]``,
which sends ``e_i`` to ``e_{w(i)}``.

Roots are pairs ``(i, k)`` with ``i != k`` standing for ``e_i - e_k``; the
pair is positive when ``i < k``.  The Frobenius twist ``pi`` shifts the
embedding index down by one: ``pi(lam)_j = lam_{j+1}``.

>>> act((1, 0, 2), (5, 3, 1))
(3, 5, 1)
>>> pairing((3, 1, 0), (0, 2))
3
>>> frobenius(((1, 0), (2, 2), (5, 4)))
((2, 2), (5, 4), (1, 0))
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import PreconditionError

Vec = tuple[int, ...]
Perm = tuple[int, ...]
Weight = tuple[Vec, ...]
FinWeyl = tuple[Perm, ...]
Root = tuple[int, int]


@dataclass(frozen=True)
class RootDatumConfig:
    """Numerical data fixed for a computation.

    ``e`` is the ramification index and ``p`` the residue characteristic.
    ``p`` may be omitted for purely combinatorial work.
    """

    n: int
    f: int = 1
    e: int = 1
    p: int | None = None

    def __post_init__(self) -> None:
        if self.n < 2:
            raise PreconditionError(f"rank n must be at least 2, got {self.n}")
        if self.f < 1:
            raise PreconditionError(f"f must be positive, got {self.f}")
        if self.e < 1:
            raise PreconditionError(f"e must be positive, got {self.e}")
        if self.p is not None and (self.p < 2 or not _is_prime(self.p)):
            raise PreconditionError(f"p must be a prime, got {self.p}")
        if self.p is not None and self.p <= self.n:
            raise PreconditionError(f"p must exceed n, got p = {self.p}, n = {self.n}")

    @property
    def h(self) -> int:
        """Coxeter-type constant ``max <eta0, alpha^vee>``."""
        return self.n - 1

    @property
    def eta0(self) -> Weight:
        return eta0(self.n, self.f)

    def require_p(self) -> int:
        if self.p is None:
            raise PreconditionError("this operation needs the prime p")
        return self.p


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# permutations ---------------------------------------------------------------


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(w: Perm, u: Perm) -> Perm:
    """``w u``: apply ``u`` first."""
    return tuple(w[i] for i in u)


def perm_inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, wi in enumerate(w):
        out[wi] = i
    return tuple(out)


def act(w: Perm, lam: Vec) -> Vec:
    out = [0] * len(w)
    for i, wi in enumerate(w):
        out[wi] = lam[i]
    return tuple(out)


def transposition(n: int, i: int, k: int) -> Perm:
    out = list(range(n))
    out[i], out[k] = k, i
    return tuple(out)


def reflection(n: int, root: Root) -> Perm:
    return transposition(n, root[0], root[1])


def longest(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Perm, ...]:
    return tuple(itertools.permutations(range(n)))


def perm_length(w: Perm) -> int:
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def one_line(w: Perm) -> tuple[int, ...]:
    """1-based one-line notation."""
    return tuple(x + 1 for x in w)


def from_one_line(seq) -> Perm:
    w = tuple(int(x) - 1 for x in seq)
    if sorted(w) != list(range(len(w))):
        raise PreconditionError(f"not a permutation: {list(seq)}")
    return w


def sorting_perm(v: Vec) -> Perm:
    """The ``w`` with ``w^{-1}(v)`` weakly decreasing (stable on ties)."""
    order = sorted(range(len(v)), key=lambda i: (-v[i], i))
    # w^{-1}(v)[k] = v[w[k]] must be the k-th largest entry
    return tuple(order)


# roots ----------------------------------------------------------------------


def positive_roots(n: int) -> tuple[Root, ...]:
    return tuple((i, k) for i in range(n) for k in range(i + 1, n))


def simple_roots(n: int) -> tuple[Root, ...]:
    return tuple((i, i + 1) for i in range(n - 1))


def highest_root(n: int) -> Root:
    return (0, n - 1)


def root_vector(n: int, root: Root) -> Vec:
    out = [0] * n
    out[root[0]] += 1
    out[root[1]] -= 1
    return tuple(out)


def pairing(lam: Vec, root: Root) -> int:
    """``<lam, root^vee>``."""
    return lam[root[0]] - lam[root[1]]


def act_root(w: Perm, root: Root) -> Root:
    return (w[root[0]], w[root[1]])


# vectors and weights ----------------------------------------------------------


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: int, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def eta0_vec(n: int) -> Vec:
    return tuple(range(n - 1, -1, -1))


def eta0(n: int, f: int = 1) -> Weight:
    return (eta0_vec(n),) * f


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(vadd(x, y) for x, y in zip(a, b))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(vsub(x, y) for x, y in zip(a, b))


def wscale(c: int, a: Weight) -> Weight:
    return tuple(vscale(c, x) for x in a)


def wact(w: FinWeyl, lam: Weight) -> Weight:
    return tuple(act(wj, lj) for wj, lj in zip(w, lam))


def frobenius(lam: tuple) -> tuple:
    """``pi(lam)_j = lam_{j+1}``; works on any per-embedding tuple."""
    return tuple(lam[1:]) + (lam[0],)


def frobenius_inv(lam: tuple) -> tuple:
    return (lam[-1],) + tuple(lam[:-1])


def in_x0(lam: Weight) -> bool:
    return all(len(set(v)) <= 1 for v in lam)


def is_dominant(lam: Vec) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def as_weight(data, n: int | None = None, f: int | None = None) -> Weight:
    """Normalise nested sequences (or a single n-tuple when ``f == 1``)."""
    if data and isinstance(data[0], int):
        data = (data,)
    out = tuple(tuple(int(x) for x in v) for v in data)
    if n is not None and any(len(v) != n for v in out):
        raise PreconditionError(f"expected {n} coordinates per embedding")
    if f is not None and len(out) != f:
        raise PreconditionError(f"expected {f} embeddings, got {len(out)}")
    return out
