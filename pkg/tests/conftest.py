import random

import pytest
from hypothesis import settings

from alcove.rootdatum import RootDatumConfig, all_perms
from alcove.tame import TypePresentation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def base_depth(mu, p):
    """Depth of mu in the base p-alcove, straight from the root pairings."""
    n = len(mu[0])
    out = p
    for v in mu:
        lam = [v[i] + n - 1 - i for i in range(n)]
        for i in range(n):
            for k in range(i + 1, n):
                h = lam[i] - lam[k]
                out = min(out, min(h, p - h) - 1 if 0 < h < p else -1)
    return out


def sample_presentation(n, f, e, p, depth, rng, flag="F"):
    """Random (s, mu) with mu at least ``depth``-deep in the base alcove."""
    cfg = RootDatumConfig(n=n, f=f, e=e, p=p)
    for _ in range(100_000):
        mu = []
        for _ in range(f):
            gaps = [rng.randrange(depth + 1, p) for _ in range(n - 1)]
            v = [0] * n
            for i in range(n - 2, -1, -1):
                v[i] = v[i + 1] + gaps[i] - 1
            mu.append(tuple(v))
        mu = tuple(mu)
        if base_depth(mu, p) >= depth:
            s = tuple(rng.choice(all_perms(n)) for _ in range(f))
            return TypePresentation(cfg, s, mu, flag)
    raise RuntimeError("no deep enough presentation found")


@pytest.fixture
def rng():
    return random.Random(20240601)
