"""Brute-force reference implementations.

These use only the group law and the simple generators: lengths come from
breadth-first search in the Cayley graph and Bruhat order from the subword
property.  They are slow and meant for cross-checking small cases.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache

from .affine import AffineElt, Local, lmul, lrho_power, lsimple
from .rootdatum import all_perms, perm_inverse


@lru_cache(maxsize=None)
def cayley_ball(n: int, zeta: int, radius: int) -> dict[Local, tuple[int, ...]]:
    """Shortest words (left generator indices) for the coset ``W_a rho^zeta``."""
    start = lrho_power(n, zeta)
    words: dict[Local, tuple[int, ...]] = {start: ()}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        wd = words[g]
        if len(wd) == radius:
            continue
        for i in range(n):
            h = lmul(lsimple(n, i), g)
            if h not in words:
                words[h] = (i,) + wd
                queue.append(h)
    return words


def bfs_length(loc: Local, radius: int = 12) -> int | None:
    n = len(loc[1])
    zeta = sum(loc[0])
    word = cayley_ball(n, zeta, radius).get(loc)
    return None if word is None else len(word)


def _product(n: int, letters, tail: Local) -> Local:
    out = tail
    for i in reversed(letters):
        out = lmul(lsimple(n, i), out)
    return out


@lru_cache(maxsize=None)
def lower_set(loc: Local, radius: int = 12) -> frozenset[Local]:
    """Every element of the form (subword of a reduced word of ``loc``) times its length-zero part."""
    n = len(loc[1])
    zeta = sum(loc[0])
    word = cayley_ball(n, zeta, radius).get(loc)
    if word is None:
        raise ValueError(f"{loc} is beyond radius {radius}")
    tail = lrho_power(n, zeta)
    out = set()
    for mask in itertools.product((0, 1), repeat=len(word)):
        out.add(_product(n, [c for c, m in zip(word, mask) if m], tail))
    return frozenset(out)


def subword_le(a: AffineElt, b: AffineElt, radius: int = 12) -> bool:
    """``a <= b`` by the subword property, embedding by embedding."""
    if a.dual or b.dual:
        raise ValueError("oracle handles the non-dual group only")
    for x, y in zip(a.locals(), b.locals()):
        if sum(x[0]) != sum(y[0]) or x not in lower_set(y, radius):
            return False
    return True


def ideal_adm(lam: tuple[int, ...], radius: int = 12) -> frozenset[Local]:
    """``Adm(lam)`` as the union of the lower sets of the ``W``-conjugates of ``t_lam``."""
    n = len(lam)
    out: set[Local] = set()
    for w in all_perms(n):
        nu = tuple(lam[perm_inverse(w)[i]] for i in range(n))
        out |= lower_set((nu, tuple(range(n))), radius)
    return frozenset(out)


def finite_bruhat_le(u, v) -> bool:
    """Finite Bruhat order through the tableau criterion."""
    n = len(u)
    for k in range(1, n):
        a = sorted(u[i] for i in range(k))
        b = sorted(v[i] for i in range(k))
        if any(x > y for x, y in zip(a, b)):
            return False
    return True
