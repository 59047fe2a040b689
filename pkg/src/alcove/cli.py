"""Command-line front end.

Every subcommand prints JSON Lines on stdout (or TSV with a header under
``--output tsv``).  Exit codes: 0 success, 1 usage error, 2 failed
precondition, 3 enumeration cap exceeded.

Input syntax
  elements   ``t[2,0;1,0]·w(2,1;1,2)`` (either half optional, ``*`` or ``.``
             for the dot), ``eta0`` / ``3*eta0`` for ``t_{k eta0}``, or
             ``endpoint(w)`` for ``t_{w^{-1}(e eta0)}``, ``id`` or ``w0``
  weights    ``3,1;2,0`` (one row per embedding), ``eta0`` or ``k*eta0``
  Weyl       ``id``, ``w0`` or one-line ``2,1,3;1,2,3``
  roots      ``i`` for ``alpha_i`` (f = 1) or ``j:i`` for embedding ``j``
"""

from __future__ import annotations

import argparse
import itertools
import json
import re
import sys
import warnings

from . import admissible, affine, geometry, selftest, specialization, tame, weights
from .affine import AffineElt
from .errors import AlcoveError, CapExceeded, ParseError, PreconditionError
from .rootdatum import (
    RootDatumConfig,
    all_perms,
    eta0_vec,
    from_one_line,
    longest,
    one_line,
    perm_inverse,
    act,
    vscale,
    wscale,
)
from .tame import TypePresentation

# parsing -----------------------------------------------------------------------------------------------


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 by default
        raise UsageError(message)


_MULT_ETA = re.compile(r"^(?:(-?\d+|e)\*)?eta0$")


def _eta_multiple(text: str, cfg: RootDatumConfig) -> int | None:
    m = _MULT_ETA.match(text)
    if not m:
        return None
    k = m.group(1)
    return 1 if k is None else (cfg.e if k == "e" else int(k))


def parse_weight(text: str, cfg: RootDatumConfig):
    s = "".join(text.split())
    k = _eta_multiple(s, cfg)
    if k is not None:
        return wscale(k, cfg.eta0)
    try:
        rows = tuple(tuple(int(x) for x in r.split(",")) for r in s.split(";"))
    except ValueError as exc:
        raise ParseError(f"cannot parse weight {text!r}") from exc
    if len(rows) == 1 and cfg.f > 1:
        rows = rows * cfg.f
    if len(rows) != cfg.f or any(len(r) != cfg.n for r in rows):
        raise ParseError(f"weight {text!r} does not have shape {cfg.f}x{cfg.n}")
    return rows


def parse_weyl(text: str, cfg: RootDatumConfig):
    s = "".join(text.split())
    if s == "id":
        return (tuple(range(cfg.n)),) * cfg.f
    if s == "w0":
        return (longest(cfg.n),) * cfg.f
    try:
        rows = [from_one_line(int(x) for x in r.split(",")) for r in s.split(";")]
    except (ValueError, PreconditionError) as exc:
        raise ParseError(f"cannot parse Weyl element {text!r}") from exc
    if len(rows) == 1 and cfg.f > 1:
        rows = rows * cfg.f
    if len(rows) != cfg.f or any(len(r) != cfg.n for r in rows):
        raise ParseError(f"Weyl element {text!r} does not have shape {cfg.f}x{cfg.n}")
    return tuple(rows)


def parse_element(text: str, cfg: RootDatumConfig) -> AffineElt:
    s = "".join(text.split())
    k = _eta_multiple(s, cfg)
    if k is not None:
        return AffineElt.translation(wscale(k, cfg.eta0))
    if s in ("id", "w0"):
        return AffineElt.finite(parse_weyl(s, cfg))
    m = re.match(r"^endpoint\((.*)\)$", s)
    if m:
        w = parse_weyl(m.group(1), cfg)
        top = vscale(cfg.e, eta0_vec(cfg.n))
        return AffineElt.translation(tuple(act(perm_inverse(wj), top) for wj in w))
    return affine.parse(s, cfg.n, cfg.f)


def parse_root(text: str, cfg: RootDatumConfig):
    s = "".join(text.split())
    try:
        if ":" in s:
            j, i = (int(x) for x in s.split(":"))
            return (j, i)
        if "," in s:
            return tuple(int(x) for x in s.split(","))
        return int(s)
    except ValueError as exc:
        raise ParseError(f"cannot parse root {text!r}") from exc


def parse_zeta(text: str):
    try:
        return tuple(int(x) for x in text.replace(";", ",").split(","))
    except ValueError as exc:
        raise ParseError(f"cannot parse zeta {text!r}") from exc


# records -------------------------------------------------------------------------------------------------


def _w_json(w):
    return [list(one_line(x)) for x in w]


def _weight_records(ws: weights.WeightSet):
    mult = ws.multiplicities or {}
    for sw in ws:
        rec = {"provenance": ws.provenance, **sw.as_dict()}
        if ws.provenance in ("JH", "WqTau"):
            rec["multiplicity"] = 1 if mult.get(sw) == 1 else ">=1 (untracked)"
        yield rec


def _presentation(args, cfg, flag: str, prefix: str = "") -> TypePresentation:
    s_text = getattr(args, f"{prefix}s")
    mu_text = getattr(args, f"{prefix}mu")
    if s_text is None or mu_text is None:
        raise UsageError(f"--{prefix.replace('_', '-')}s and --{prefix.replace('_', '-')}mu are required")
    return TypePresentation(cfg, parse_weyl(s_text, cfg), parse_weight(mu_text, cfg), flag)


# commands -------------------------------------------------------------------------------------------


def cmd_adm(args, cfg):
    lam = parse_weight(args.lam, cfg)
    for a in admissible.adm_enumerate(lam):
        yield {"element": str(a), "length": a.length()}


def cmd_corridor(args, cfg):
    w = parse_weyl(args.w, cfg)
    for c in admissible.corridor(w, parse_root(args.alpha, cfg), cfg.e):
        yield {
            "element": str(c.element),
            "tags": [t.as_dict() for t in c.tags],
            "position": [admissible.corridor_position(t, cfg.e) for t in c.tags],
        }


def cmd_classify(args, cfg):
    a = parse_element(args.elt, cfg)
    c = admissible.classify_corridor(a, cfg.e)
    rec = {"element": str(a), "admissible": admissible.adm_contains(a, wscale(cfg.e, cfg.eta0))}
    if c is None:
        rec["corridor"] = None
    else:
        rec["corridor"] = [t.as_dict() for t in c.tags]
        rec["two_sigma"] = [_w_json(s) for s in sorted(admissible.two_sigma_bound(a, cfg.e))]
    yield rec


def cmd_canform(args, cfg):
    a = parse_element(args.elt, cfg)
    w1, w2, nu = geometry.regular_decompose(a, cfg.e)
    yield {
        "element": str(a),
        "w1": str(w1),
        "w2": str(w2),
        "nu": [list(v) for v in nu],
        "round_trip": geometry.materialize(w1, w2, nu, cfg.e) == a,
    }


def cmd_jh(args, cfg):
    yield from _weight_records(weights.jh(_presentation(args, cfg, "E"), args.strict))


def cmd_wq(args, cfg):
    yield from _weight_records(weights.w_question(_presentation(args, cfg, "F"), args.strict))


def _tau_for(args, cfg, rho):
    if args.shape is not None:
        shape = parse_element(args.shape, cfg)
        return TypePresentation.from_element(cfg, rho.w_tau() * shape.inverse(), "E")
    return _presentation(args, cfg, "E", "tau_")


def cmd_wqtau(args, cfg):
    rho = _presentation(args, cfg, "F")
    tau = _tau_for(args, cfg, rho)
    yield from _weight_records(weights.w_question_tau(rho, tau, args.strict))


def cmd_extremal(args, cfg):
    rho = _presentation(args, cfg, "F")
    for w, sw in weights.extremal_set(rho, args.strict).items():
        yield {"provenance": "Extremal", "w": _w_json(w), **sw.as_dict()}


def cmd_chain(args, cfg):
    rho = _presentation(args, cfg, "F")
    w = parse_weyl(args.w, cfg)
    _, _, rows = specialization.chain(rho, w, parse_root(args.alpha, cfg), args.strict)
    for r in rows:
        yield r.as_dict()


def cmd_reflect(args, cfg):
    rho = _presentation(args, cfg, "F")
    pair = specialization.SpecializationPair.extremal(rho, parse_weyl(args.w, cfg))
    alpha = parse_root(args.alpha, cfg)
    out = specialization.reflect_step(pair, alpha, args.k)
    th0, th1 = specialization.theta(pair), specialization.theta(out)
    yield {
        **out.as_dict(),
        "theta_before": _w_json(th0),
        "theta_after": _w_json(th1),
        "theta_reflected": th1 == specialization.s_alpha_right(th0, alpha),
    }


def cmd_eliminate(args, cfg):
    rho = _presentation(args, cfg, "F")
    sigma = weights.weight_from_highest(parse_weight(args.lam, cfg), cfg.require_p())
    tau, adm = specialization.elimination_type(sigma, rho, args.strict)
    yield {"sigma": sigma.as_dict(), "tau": tau.as_dict(), "admissible": adm}


def cmd_theta(args, cfg):
    rho = _presentation(args, cfg, "F")
    pair = specialization.SpecializationPair.extremal(rho, parse_weyl(args.w, cfg))
    zeta = parse_zeta(args.zeta) if args.zeta else None
    yield {"w": _w_json(pair.w_index), "theta": _w_json(specialization.theta(pair, zeta))}


def cmd_tame_check(args, cfg):
    rho = _presentation(args, cfg, "F")
    if args.w:
        ws = [parse_weyl(x, cfg) for x in args.w]
    else:
        ws = list(itertools.product(all_perms(cfg.n), repeat=cfg.f))
    pairs = [specialization.SpecializationPair.extremal(rho, w, with_tau=False) for w in ws]
    specialization.validate_pairs(pairs)
    yield specialization.tameness_count(pairs).as_dict()


def cmd_geometry(args, cfg):
    shape = parse_element(args.shape, cfg)
    yield {"shape": str(shape), **specialization.predict_geometry(shape, cfg.e).as_dict()}


def cmd_schein(args, cfg):
    rep = weights.schein_compare(_presentation(args, cfg, "F"), args.strict)
    yield {
        "equal": rep["equal"],
        "delta_regular": rep["delta_regular"],
        "union": [s.as_dict()["lambda"] for s in rep["union"]],
        "w_question": [s.as_dict()["lambda"] for s in rep["w_question"]],
        "missing": [s.as_dict()["lambda"] for s in rep["missing"]],
        "extra": [s.as_dict()["lambda"] for s in rep["extra"]],
    }


def cmd_chars(args, cfg):
    t = _presentation(args, cfg, "E")
    d = tame.render_characters(t)
    for jp, a in enumerate(d.exponents):
        yield {
            "j": jp,
            "niveau": d.r,
            "modulus": d.modulus,
            "exponents": list(d.reduced(jp)),
            "orientation": list(one_line(d.orientation[jp])),
            "valid": tame.check_characters(t, d),
        }


def cmd_order(args, cfg):
    a, b = parse_element(args.a, cfg), parse_element(args.b, cfg)
    if args.kind == "bruhat":
        val = affine.bruhat_le(a, b)
    else:
        val = geometry.up_le(a, b)
    yield {"a": str(a), "b": str(b), "kind": args.kind, "le": val}


def cmd_selftest(args, cfg):
    records = selftest.run(args.seed)
    yield from records
    yield {"summary": True, "passed": sum(r["pass"] for r in records), "total": len(records)}


P_FREE = {"adm", "corridor", "classify", "canform", "geometry", "order"}

COMMANDS = {
    "adm": (cmd_adm, "enumerate Adm(lambda)"),
    "corridor": (cmd_corridor, "list a rank-one corridor"),
    "classify": (cmd_classify, "locate an element among the corridors"),
    "canform": (cmd_canform, "regular decomposition of an e-regular element"),
    "jh": (cmd_jh, "Jordan-Holder weights of a type"),
    "wq": (cmd_wq, "the weight set W? of residual data"),
    "wqtau": (cmd_wqtau, "W? intersected with a type, by the Bruhat filter"),
    "extremal": (cmd_extremal, "extremal weights indexed by W"),
    "chain": (cmd_chain, "the type chain along a simple root"),
    "reflect": (cmd_reflect, "walk an extremal pair along a simple root"),
    "eliminate": (cmd_eliminate, "weight elimination type for a weight"),
    "theta": (cmd_theta, "theta of an extremal pair"),
    "tame-check": (cmd_tame_check, "count extremal weights"),
    "geometry": (cmd_geometry, "predict the geometry of a deformation ring"),
    "schein": (cmd_schein, "rank-two comparison with the reflection recipe"),
    "chars": (cmd_chars, "characters of a tame type"),
    "order": (cmd_order, "Bruhat or up-arrow comparison"),
    "selftest": (cmd_selftest, "run the randomised invariant suite"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, required=True)
    common.add_argument("--f", type=int, default=1)
    common.add_argument("--e", type=int, default=1)
    common.add_argument("--p", type=int, required=True)
    common.add_argument("--output", choices=("json", "tsv"), default="json")
    common.add_argument("--strict", action="store_true", help="turn genericity warnings into errors")

    parser = _Parser(prog="alcove", description="Alcove combinatorics for Serre weights.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    subs = {}
    for name, (_, text) in COMMANDS.items():
        if name != "selftest":
            subs[name] = sub.add_parser(name, parents=[common], help=text)
    subs["selftest"] = sub.add_parser("selftest", help=COMMANDS["selftest"][1])
    subs["selftest"].add_argument("--output", choices=("json", "tsv"), default="json")

    subs["adm"].add_argument("--lambda", dest="lam", required=True)
    for name in ("corridor", "chain", "reflect"):
        subs[name].add_argument("--w", required=True)
        subs[name].add_argument("--alpha", required=True)
    subs["classify"].add_argument("--elt", required=True)
    subs["canform"].add_argument("--elt", required=True)
    for name in ("jh", "wq", "wqtau", "extremal", "chain", "reflect", "eliminate", "theta",
                 "tame-check", "schein", "chars"):
        subs[name].add_argument("--s", required=True)
        subs[name].add_argument("--mu", required=True)
    subs["wqtau"].add_argument("--tau-s", dest="tau_s")
    subs["wqtau"].add_argument("--tau-mu", dest="tau_mu")
    subs["wqtau"].add_argument("--shape", help="relative shape instead of --tau-s/--tau-mu")
    subs["reflect"].add_argument("--k", type=int, required=True)
    subs["eliminate"].add_argument("--lambda", dest="lam", required=True)
    subs["theta"].add_argument("--w", required=True)
    subs["theta"].add_argument("--zeta")
    subs["tame-check"].add_argument("--w", action="append", help="repeat to pick indices")
    subs["geometry"].add_argument("--shape", required=True)
    subs["order"].add_argument("--a", required=True)
    subs["order"].add_argument("--b", required=True)
    subs["order"].add_argument("--kind", choices=("bruhat", "up"), default="bruhat")
    subs["selftest"].add_argument("--seed", type=int, default=0)
    return parser


def _tsv_cell(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, ensure_ascii=False, separators=(",", ":"))


def emit(records, fmt: str, out) -> int:
    count = 0
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec, ensure_ascii=False, separators=(",", ":")) + "\n")
            count += 1
        return count
    rows = list(records)
    keys: list[str] = []
    for rec in rows:
        keys.extend(k for k in rec if k not in keys)
    out.write("\t".join(keys) + "\n")
    for rec in rows:
        out.write("\t".join(_tsv_cell(rec.get(k, "")) for k in keys) + "\n")
    return len(rows)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    fn = COMMANDS[args.command][0]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", tame.GenericityWarning)
        try:
            if args.command == "selftest":
                cfg = None
            else:
                cfg = RootDatumConfig(n=args.n, f=args.f, e=args.e, p=args.p)
            records = fn(args, cfg)
            if args.command in P_FREE:
                records = ({**r, "p_used": False} for r in records)
            emit(records, args.output, out)
            code = 0
        except (UsageError, ParseError) as exc:
            err.write(f"usage error: {exc}\n")
            code = 1
        except CapExceeded as exc:
            err.write(f"cap exceeded: {exc}\n")
            code = 3
        except PreconditionError as exc:
            err.write(f"precondition failed: {type(exc).__name__}: {exc}\n")
            code = 2
        except AlcoveError as exc:
            err.write(f"error: {exc}\n")
            code = 2
    for w in caught:
        if issubclass(w.category, tame.GenericityWarning):
            err.write(f"warning: {w.message}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
