"""Randomised self-check of the main invariants.

Each check returns ``(cases, counterexample)``; a ``None`` counterexample is a
pass.  Library functions are looked up through their modules at call time so
that a patched implementation is what gets exercised.
"""

from __future__ import annotations

import itertools
import random
import warnings

from . import admissible, affine, geometry, oracles, specialization, tame, weights
from .affine import AffineElt
from .rootdatum import RootDatumConfig, all_perms, compose, eta0_vec, vscale, wscale
from .tame import TypePresentation


def random_presentation(cfg: RootDatumConfig, rng: random.Random, depth: int, flag: str = "F"):
    """A presentation whose ``mu`` is ``depth``-deep in the base alcove."""
    n, p = cfg.n, cfg.require_p()
    mus = []
    for _ in range(cfg.f):
        for _ in range(10_000):
            v = sorted(rng.sample(range(0, p - n), n), reverse=True)
            v = tuple(x - v[-1] for x in v)
            if geometry.depth_in_base((v,), p) >= depth:
                break
        else:
            raise ValueError(f"p = {p} is too small for depth {depth}")
        mus.append(v)
    s = tuple(rng.choice(all_perms(n)) for _ in range(cfg.f))
    return TypePresentation(cfg, s, tuple(mus), flag)


def _fmt(x):
    if isinstance(x, AffineElt):
        return str(x)
    if isinstance(x, TypePresentation):
        return x.as_dict()
    if isinstance(x, (list, tuple)):
        return [_fmt(y) for y in x]
    return x


# checks ----------------------------------------------------------------------------------------------


def check_length(rng):
    cases = 0
    for n in (2, 3):
        for z in range(n):
            for g, word in oracles.cayley_ball(n, z, 6).items():
                cases += 1
                if affine.llength(g) != len(word):
                    return cases, {"element": str(AffineElt.from_locals([g])), "bfs": len(word)}
    return cases, None


def check_bruhat_subword(rng):
    cases = 0
    for n, f in ((2, 1), (3, 1), (2, 2), (3, 2)):
        radius = 6 // f if f > 1 else 5
        pools = [
            [g for g, wd in oracles.cayley_ball(n, z, radius).items()] for z in range(n)
        ]
        for _ in range(150):
            z = rng.randrange(n)
            a = AffineElt.from_locals(rng.choice(pools[z]) for _ in range(f))
            b = AffineElt.from_locals(rng.choice(pools[z]) for _ in range(f))
            for x, y in ((a, b), (b, a), (a, a)):
                cases += 1
                if affine.bruhat_le(x, y) != oracles.subword_le(x, y):
                    return cases, {"a": str(x), "b": str(y), "oracle": oracles.subword_le(x, y)}
    return cases, None


def check_wang(rng):
    cases = 0
    for n in (2, 3):
        pool = [g for z in range(n) for g in oracles.cayley_ball(n, z, 5)]
        dom = [g for g in pool if geometry._ldominant(g)]
        for a, b in itertools.product(dom, repeat=2):
            if sum(a[0]) != sum(b[0]):
                continue
            cases += 1
            x, y = AffineElt.from_locals([a]), AffineElt.from_locals([b])
            if geometry.up_le(x, y) != affine.bruhat_le(x, y):
                return cases, {"a": str(x), "b": str(y)}
    return cases, None


def check_corridors(rng):
    cases = 0
    for n in (2, 3):
        for e in (1, 2, 3):
            top = vscale(e, eta0_vec(n))
            adm = admissible.ladm(top)
            for w in all_perms(n):
                for a in range(1, n):
                    cases += 1
                    c = admissible.corridor((w,), a, e)
                    elts = {x.element for x in c}
                    if len(elts) != 2 * e + 1 or any(x.local(0) not in adm for x in elts):
                        return cases, {"n": n, "e": e, "w": w, "alpha": a}
    return cases, None


def check_two_sigma(rng):
    cases = 0
    for n in (2, 3):
        for e in (1, 2, 3):
            for w in all_perms(n):
                for a in range(1, n):
                    sw = (compose(admissible.simple_reflection_perm(n, a), w),)
                    for c in admissible.corridor((w,), a, e):
                        cases += 1
                        got = admissible.two_sigma_bound(c.element, e)
                        kind, k = c.tags[0].kind, c.tags[0].k
                        if kind == admissible.TRANSLATION and k == 0:
                            want = {(w,)}
                        elif kind == admissible.TRANSLATION and k == e:
                            want = {sw}
                        else:
                            want = {(w,), sw}
                        if got != want:
                            return cases, {"element": str(c.element), "got": sorted(got)}
    return cases, None


def check_canform(rng):
    cases = 0
    for n, f, e in ((2, 1, 1), (3, 1, 2), (3, 2, 1)):
        for _ in range(60):
            w1 = geometry.restricted_lift(tuple(rng.choice(all_perms(n)) for _ in range(f)))
            w2 = geometry.restricted_lift(tuple(rng.choice(all_perms(n)) for _ in range(f)))
            nu = []
            for _ in range(f):
                v = sorted((rng.randrange(6) for _ in range(n)), reverse=True)
                nu.append(tuple(x - v[-1] for x in v))
            a = geometry.materialize(w1, w2, tuple(nu), e)
            cases += 1
            if geometry.regular_decompose(a, e) != (w1, w2, tuple(nu)):
                return cases, {"element": str(a), "e": e}
    return cases, None


def _configs(max_f=2):
    for n, f, e in ((2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 1, 2), (2, 2, 1), (3, 2, 1)):
        if f <= max_f:
            yield n, f, e


def check_chain(rng):
    cases = 0
    for n, f, e in _configs():
        cfg = RootDatumConfig(n=n, f=f, e=e, p=211)
        for _ in range(3):
            rho = random_presentation(cfg, rng, (e + 2) * (n - 1) + 1)
            w = tuple(rng.choice(all_perms(n)) for _ in range(f))
            alpha = (rng.randrange(f), rng.randrange(1, n))
            _, _, rows = specialization.chain(rho, w, alpha)
            for r in rows:
                cases += 1
                if not r.verified:
                    return cases, {"rho": rho.as_dict(), "w": w, "alpha": alpha, "m": r.m}
    return cases, None


def check_intersection(rng):
    cases = 0
    for n, f, e in _configs():
        cfg = RootDatumConfig(n=n, f=f, e=e, p=211)
        top = AffineElt.translation(wscale(e, cfg.eta0))
        pool = affine.lball(n, e * n * (n - 1) // 2, top.length() // f + 2)
        done = 0
        while done < 4:
            rho = random_presentation(cfg, rng, max(2, e) * (n - 1))
            shape = AffineElt.from_locals(rng.choice(pool) for _ in range(f))
            tau = TypePresentation.from_element(cfg, rho.w_tau() * shape.inverse(), "E")
            if tau.depth < 2 * (n - 1):
                continue
            done += 1
            cases += 1
            a = weights.w_question_tau(rho, tau).as_set()
            b = weights.w_question(rho).as_set() & weights.jh(tau).as_set()
            if a != b:
                return cases, {"rho": rho.as_dict(), "shape": str(shape)}
    return cases, None


def check_theta(rng):
    cases = 0
    for n, f, e in _configs():
        cfg = RootDatumConfig(n=n, f=f, e=e, p=211)
        rho = random_presentation(cfg, rng, (e + 2) * (n - 1) + 1)
        pairs = [
            specialization.SpecializationPair.extremal(rho, w)
            for w in itertools.product(all_perms(n), repeat=f)
        ]
        specialization.validate_pairs(pairs)
        for pr in pairs[:3]:
            alpha = (rng.randrange(f), rng.randrange(1, n))
            k = rng.randrange(2 * e)
            cases += 1
            q = specialization.reflect_step(pr, alpha, k)
            want = specialization.s_alpha_right(specialization.theta(pr), alpha)
            if specialization.theta(q) != want:
                return cases, {"rho": rho.as_dict(), "w": pr.w_index, "alpha": alpha, "k": k}
    return cases, None


def check_schein(rng):
    cases = 0
    for p, e, f in ((13, 2, 1), (101, 2, 1), (101, 3, 1), (101, 2, 2)):
        cfg = RootDatumConfig(n=2, f=f, e=e, p=p)
        for _ in range(5):
            rho = random_presentation(cfg, rng, e)
            cases += 1
            if not weights.schein_compare(rho)["equal"]:
                return cases, {"rho": rho.as_dict()}
    return cases, None


def check_extremal(rng):
    cases = 0
    for n, f, e in _configs():
        cfg = RootDatumConfig(n=n, f=f, e=e, p=211)
        rho = random_presentation(cfg, rng, max(2, e) * (n - 1))
        ext = weights.extremal_set(rho)
        cases += 1
        want = len(all_perms(n)) ** f
        wq = weights.w_question(rho).as_set()
        if len(set(ext.values())) != want or not set(ext.values()) <= wq:
            return cases, {"rho": rho.as_dict(), "count": len(set(ext.values()))}
    return cases, None


def check_characters(rng):
    cases = 0
    for n in (2, 3):
        for f in (1, 2):
            cfg = RootDatumConfig(n=n, f=f, e=1, p=101)
            for _ in range(20):
                t = random_presentation(cfg, rng, 1, "E")
                cases += 1
                if not tame.check_characters(t, tame.render_characters(t)):
                    return cases, {"tau": t.as_dict()}
    return cases, None


def check_geometry(rng):
    cases = 0
    for n, f, e in ((2, 1, 2), (3, 2, 1), (2, 2, 2)):
        for w in itertools.product(all_perms(n), repeat=f):
            for c in admissible.corridor(w, 1, e):
                cases += 1
                g = specialization.predict_geometry(c.element, e)
                m = sum(not t.is_endpoint(e) for t in c.tags)
                if g.m != m or g.components != 2**m or g.smooth != (m == 0):
                    return cases, {"shape": str(c.element), "m": g.m}
    return cases, None


CHECKS = {
    "length_vs_bfs": check_length,
    "bruhat_vs_subword": check_bruhat_subword,
    "up_equals_bruhat_on_dominant": check_wang,
    "corridor_cardinality": check_corridors,
    "two_sigma_bound": check_two_sigma,
    "canonical_form_round_trip": check_canform,
    "chain_coherence": check_chain,
    "intersection_identity": check_intersection,
    "theta_reflection": check_theta,
    "schein_agreement": check_schein,
    "extremal_cardinality": check_extremal,
    "character_invariants": check_characters,
    "geometry_predictor": check_geometry,
}


def run(seed: int = 0, only=None) -> list[dict]:
    """Run every check with a fresh ``Random(seed)`` each; one record per check."""
    out = []
    for name, fn in CHECKS.items():
        if only and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                cases, cex = fn(rng)
                err = None
            except Exception as exc:  # a crash is a failure with its own record
                cases, cex, err = 0, None, f"{type(exc).__name__}: {exc}"
        rec = {"invariant": name, "pass": cex is None and err is None, "cases": cases}
        if cex is not None:
            rec["counterexample"] = _fmt(cex)
        if err is not None:
            rec["error"] = err
        out.append(rec)
    return out


__all__ = ["run", "CHECKS", "random_presentation"]
