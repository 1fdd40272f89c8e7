"""Command-line front end.

Exit codes: 0 when every checked condition holds (or a search finished),
1 when a checked condition fails (a witness is printed), 2 for unreadable
input, bad flags or a lattice unsuited to the command.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .birkhoff import birkhoff_embed, verify_embedding
from .errors import LatticeIneqError, ParamError, PreconditionFailed
from .formats import (
    dump_json,
    format_lattice,
    format_weights,
    load_lattice,
    load_weights,
    parse_selection,
    split_elements,
)
from .inequalities import (
    DECREASING,
    INCREASING,
    WeightQuadruple,
    check_4ft_conclusion,
    check_ad_hypothesis,
    check_fkg_q,
    check_q4ft,
    check_q4ft_stronger,
    check_setminus_lemma,
    is_log_supermodular,
    is_monotone,
)
from .lattice import boolean, chain, check_rank_modularity, divisor, is_distributive, product, subset_label
from .polynomial import format_rational, parse_rational
from .reduction import replay_q4ft
from .search import (
    REFERENCE_TABLE,
    SearchConfig,
    check_conjecture9,
    iter_counterexamples,
    reference_quadruple,
    random_ad_quadruple,
    random_selection,
    verify_paper_counterexample,
)

CHECK_KINDS = (
    "distributive", "modular-rank", "embed", "ad", "4ft", "q4ft", "q4ft-stronger",
    "lemma8", "lsm", "monotone", "fkg", "qfkg", "conjecture9",
)


def _fmt(value) -> str:
    if hasattr(value, "serialize"):
        return value.serialize()
    try:
        return format_rational(value)
    except (TypeError, ValueError):
        return str(value)


def _status(ok: bool) -> str:
    return "OK" if ok else "FAIL"


def _witness_line(verdict, names=("x", "y")) -> str:
    parts = [f"{n}={w}" for n, w in zip(names, verdict.witness)]
    parts += [f"lhs={_fmt(verdict.lhs)}", f"rhs={_fmt(verdict.rhs)}"]
    return "witness: " + " ".join(parts)


def _report_verdict(title, verdict, names=("x", "y")):
    print(f"{title}: {_status(verdict.holds)}")
    if not verdict.holds:
        print(_witness_line(verdict, names))


# --- input loading ----------------------------------------------------------

def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        command = " ".join(filter(None, (args.command, getattr(args, "kind", None))))
        raise ParamError(f"'{command}' needs " + ", ".join("--" + n for n in missing))


def _lattice(args):
    _need(args, "lattice")
    return load_lattice(args.lattice)


def _quad(args, L):
    _need(args, "alpha", "beta", "gamma", "delta")
    return WeightQuadruple(*(load_weights(getattr(args, n), L)
                             for n in ("alpha", "beta", "gamma", "delta")))


def _selections(args, L):
    X = parse_selection(args.X, L)
    Y = parse_selection(args.Y, L)
    return X, Y


# --- check ------------------------------------------------------------------

def _check(args):
    L = _lattice(args)
    kind = args.kind

    if kind == "distributive":
        v = is_distributive(L)
        _report_verdict("distributive", v, ("x", "y", "z"))
        return v.holds, {"verdict": v}

    if kind == "modular-rank":
        v = check_rank_modularity(L)
        _report_verdict("rank modularity", v)
        return v.holds, {"verdict": v, "ranks": L.ranks}

    if kind == "embed":
        return _embed_report(L)

    if kind in ("ad", "4ft", "q4ft", "q4ft-stronger", "lemma8", "conjecture9"):
        quad = _quad(args, L)
        if kind == "ad":
            v = check_ad_hypothesis(quad)
            _report_verdict("AD hypothesis", v)
            return v.holds, {"verdict": v}
        if kind == "4ft":
            X, Y = _selections(args, L)
            v = check_4ft_conclusion(quad, X, Y)
            s = v.details["sums"]
            print(f"alpha(X) = {_fmt(s['alpha'])}  beta(Y) = {_fmt(s['beta'])}  "
                  f"gamma(X v Y) = {_fmt(s['gamma'])}  delta(X ^ Y) = {_fmt(s['delta'])}")
            print(f"LHS: {_fmt(v.lhs)}")
            print(f"RHS: {_fmt(v.rhs)}")
            print(f"4FT: {_status(v.holds)}" + (" (vacuous)" if v.details["vacuous"] else ""))
            return v.holds, {"verdict": v, "X": X, "Y": Y}
        if kind == "q4ft":
            X, Y = _selections(args, L)
            v = check_q4ft(quad, X, Y)
            print(f"LHS: {v.lhs.serialize()}")
            print(f"RHS: {v.rhs.serialize()}")
            print(f"q-4FT: {v.lhs.pretty()} << {v.rhs.pretty()}: {_status(v.holds)}"
                  + (" (vacuous)" if v.details["vacuous"] else ""))
            if not v.holds:
                print(f"witness: k={v.witness[0]} lhs={_fmt(v.details['lhs_coeff'])} "
                      f"rhs={_fmt(v.details['rhs_coeff'])}")
            return v.holds, {"verdict": v, "X": X, "Y": Y}
        if kind == "q4ft-stronger":
            v = check_q4ft_stronger(quad)
            print(f"LHS: {_fmt(v.lhs)}")
            print(f"RHS: {_fmt(v.rhs)}")
            print(f"complement sums: {_status(v.holds)}")
            return v.holds, {"verdict": v}
        if kind == "lemma8":
            hyp, concl = check_setminus_lemma(quad)
            _report_verdict("set-difference hypothesis", hyp, ("A", "B"))
            print(f"total mass: {_fmt(concl.lhs)} <= {_fmt(concl.rhs)}: {_status(concl.holds)}")
            return hyp.holds and concl.holds, {"hypothesis": hyp, "conclusion": concl}
        v = check_conjecture9(quad)
        _report_verdict("pairwise conjecture", v, ("A", "B"))
        return v.holds, {"verdict": v}

    if kind == "lsm":
        _need(args, "mu")
        v = is_log_supermodular(load_weights(args.mu, L))
        _report_verdict("log-supermodular", v)
        return v.holds, {"verdict": v}

    if kind == "monotone":
        _need(args, "f", "direction")
        v = is_monotone(load_weights(args.f, L), args.direction)
        _report_verdict(args.direction, v, ("x", "y"))
        return v.holds, {"verdict": v}

    # fkg / qfkg
    _need(args, "mu", "f", "g")
    mu, f, g = (load_weights(getattr(args, n), L) for n in ("mu", "f", "g"))
    v = check_fkg_q(mu, f, g)
    P = v.details["polynomials"]
    print(f"direction: {v.details['direction']}")
    if kind == "fkg":
        d = v.details
        print(f"FKG: {_fmt(d['fkg_lhs'])} <= {_fmt(d['fkg_rhs'])}: {_status(d['fkg_holds'])}")
        return d["fkg_holds"], {"verdict": v}
    for name in ("f", "g", "one", "fg"):
        print(f"P_mu({name if name != 'one' else '1'}): {P[name].serialize()}")
    print(f"LHS: {v.lhs.serialize()}")
    print(f"RHS: {v.rhs.serialize()}")
    print(f"q-FKG: {_status(v.holds)}")
    if not v.holds:
        print(f"witness: k={v.witness[0]} lhs={_fmt(v.details['lhs_coeff'])} "
              f"rhs={_fmt(v.details['rhs_coeff'])}")
    return v.holds, {"verdict": v}


def _embed_report(L):
    emb = birkhoff_embed(L)
    v = verify_embedding(L, emb)
    print(f"n = {emb.n}")
    print("irreducibles: " + " ".join(emb.irreducibles))
    for a in L:
        print(f"phi({a}) = {subset_label(emb.image[a])}")
    print(f"embedding (injective, meet, join, rank): {_status(v.holds)}")
    if not v.holds:
        print("witness: " + " ".join(str(w) for w in v.witness))
    data = {
        "irreducibles": emb.irreducibles,
        "image": {a: sorted(emb.image[a]) for a in L},
        "verdict": v,
    }
    return v.holds, data


def _embed(args):
    return _embed_report(_lattice(args))


# --- search -----------------------------------------------------------------

def _search(args):
    grid = []
    for token in split_elements(args.grid):
        try:
            grid.append(parse_rational(token))
        except ValueError as exc:
            raise ParamError(f"--grid: {exc}") from None
    mode = "random" if args.random else "exhaustive"
    cfg = SearchConfig(args.n, tuple(grid), mode, args.seed, args.limit)
    reference = tuple(tuple(v) for v in REFERENCE_TABLE.values())
    found = []
    contains_reference = False
    out = Path(args.out) if args.out else None
    for cex in iter_counterexamples(cfg):
        vectors = [tuple(w.vector) for w in cex.quad]
        names = ("alpha", "beta", "gamma", "delta")
        body = " ".join(f"{n}={','.join(_fmt(x) for x in vec)}" for n, vec in zip(names, vectors))
        c = cex.conjecture
        print(f"#{cex.index} {body} witness A={c.witness[0]} B={c.witness[1]} "
              f"lhs={_fmt(c.lhs)} rhs={_fmt(c.rhs)}", flush=True)
        contains_reference |= tuple(vectors) == reference
        found.append({
            "index": cex.index,
            "weights": {n: w for n, w in zip(names, cex.quad)},
            "witness": c.witness,
            "lhs": c.lhs,
            "rhs": c.rhs,
        })
        if out is not None:
            _write_counterexample(out / f"cex_{cex.index}", cex)
    examined = cfg.space if mode == "exhaustive" else cfg.limit
    print(f"examined {examined} candidates, found {len(found)} counterexample(s)"
          + (" including the reference table" if contains_reference else ""))
    data = {
        "config": {"n": cfg.n, "grid": list(cfg.value_grid), "mode": mode,
                   "seed": cfg.seed, "limit": cfg.limit},
        "examined": examined,
        "count": len(found),
        "contains_reference_table": contains_reference,
        "counterexamples": found,
    }
    return True, data


def _write_counterexample(directory: Path, cex):
    directory.mkdir(parents=True, exist_ok=True)
    L = cex.quad.carrier
    (directory / "lattice.lat").write_text(format_lattice(L), encoding="utf-8")
    for name, w in zip(("alpha", "beta", "gamma", "delta"), cex.quad):
        (directory / f"{name}.w").write_text(format_weights(w), encoding="utf-8")
    c = cex.conjecture
    dump_json({"index": cex.index, "witness": c.witness, "lhs": c.lhs, "rhs": c.rhs,
               "ad_hypothesis": cex.ad.holds, "pairwise_conjecture": c.holds},
              directory / "summary.json")


# --- replay-proof -----------------------------------------------------------

def _replay(args):
    if args.lattice is None:
        quad = reference_quadruple()
        L = quad.carrier
        print("instance: reference table on P(2)")
    else:
        L = load_lattice(args.lattice)
        quad = _quad(args, L)
    X, Y = _selections(args, L)
    return _print_replay(quad, X, Y, verbose=True)


def _print_replay(quad, X, Y, verbose):
    report = replay_q4ft(quad, X, Y)
    d = report.direct
    if verbose:
        print(f"embedding: n = {report.embedding.n}, irreducibles "
              + " ".join(report.embedding.irreducibles))
        print(f"{'k':>3} {'lhs':>8} {'rhs':>8} {'slices':>6}  identity  holds")
        for v in report.coefficients:
            active = [s for s in v.details["slices"] if not s.skipped]
            print(f"{v.details['k']:>3} {_fmt(v.lhs):>8} {_fmt(v.rhs):>8} {len(active):>6}  "
                  f"{'yes' if v.details['identity'] else 'NO':>8}  {_status(v.holds)}")
            for s in active:
                if s.lhs or s.rhs:
                    print(f"      F={s.F} G={s.G}: {_fmt(s.lhs)} <= {_fmt(s.rhs)}"
                          + ("" if s.holds else "  FAIL"))
    print(f"direct: {d.lhs.pretty()} << {d.rhs.pretty()}: {_status(d.holds)}")
    print(f"slice route: {_status(report.slice_route_holds)}; "
          f"routes agree: {'yes' if report.agree else 'NO'}")
    ok = d.holds and report.agree and report.identities_hold
    data = {"direct": d, "coefficients": report.coefficients, "agree": report.agree,
            "identities": report.identities_hold}
    return ok, data


# --- verify-paper -----------------------------------------------------------

CATALOG = {
    "divisor(12)": lambda: divisor(12),
    "divisor(36)": lambda: divisor(36),
    "divisor(60)": lambda: divisor(60),
    "boolean(3)": lambda: boolean(3),
    "chain(5)": lambda: chain(5),
    "product(chain(3),chain(4))": lambda: product(chain(3), chain(4)),
}

REPLAY_INSTANCES = (
    ("boolean(3)", 1),
    ("divisor(12)", 2),
    ("product(chain(3),chain(4))", 3),
)


def _verify_paper(args):
    ok = True
    data = {}

    r = verify_paper_counterexample()
    c = r.conjecture
    where = f"({c.witness[0]},{c.witness[1]}) {_fmt(c.lhs)}>{_fmt(c.rhs)}" if c.witness else "none"
    print(f"pairwise conjecture counterexample: hypothesis {_status(r.ad.holds)}, "
          f"violation at {where}: {_status(r.ok)}")
    print(f"q-4FT reference table: {r.q4ft.lhs.pretty()} << {r.q4ft.rhs.pretty()}: "
          f"{_status(r.q4ft.holds)}")
    print(f"complement sums reference table: {_fmt(r.stronger.lhs)} <= {_fmt(r.stronger.rhs)}: "
          f"{_status(r.stronger.holds)}")
    ok &= r.ok
    data["reference_table"] = {"ad": r.ad, "conjecture": r.conjecture, "q4ft": r.q4ft,
                           "stronger": r.stronger, "ok": r.ok}

    data["birkhoff"] = {}
    for name, make in CATALOG.items():
        L = make()
        emb = birkhoff_embed(L)
        v = verify_embedding(L, emb)
        print(f"Birkhoff {name}: injective/meet/join/rank {_status(v.holds)}, n={emb.n}")
        ok &= v.holds
        data["birkhoff"][name] = v

    data["replay"] = {}
    for name, seed in REPLAY_INSTANCES:
        L = CATALOG[name]()
        quad = random_ad_quadruple(L, seed)
        X, Y = random_selection(L, seed + 100), random_selection(L, seed + 200)
        print(f"proof replay {name} seed={seed}:")
        good, rep = _print_replay(quad, X, Y, verbose=False)
        ok &= good
        data["replay"][f"{name}#{seed}"] = rep

    print(f"verify-paper: {_status(ok)}")
    return ok, data


# --- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticeineq",
        description="Exact checks of four-functions-type inequalities on finite lattices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def weights(p):
        for name in ("alpha", "beta", "gamma", "delta"):
            p.add_argument(f"--{name}", metavar="FILE", help=f"weight file for {name}")

    def selections(p):
        p.add_argument("--X", default="all", help="'all', comma-separated ids, or @file")
        p.add_argument("--Y", default="all", help="'all', comma-separated ids, or @file")

    def json_flag(p):
        p.add_argument("--json", metavar="PATH", help="also write a JSON report")

    p = sub.add_parser("check", help="run one checker on input files")
    p.add_argument("kind", choices=CHECK_KINDS)
    p.add_argument("--lattice", metavar="FILE", help="lattice file")
    weights(p)
    selections(p)
    for name in ("mu", "f", "g"):
        p.add_argument(f"--{name}", metavar="FILE", help=f"weight file for {name}")
    p.add_argument("--direction", choices=(INCREASING, DECREASING))
    json_flag(p)
    p.set_defaults(handler=_check)

    p = sub.add_parser("embed", help="print the Birkhoff embedding of a lattice")
    p.add_argument("--lattice", metavar="FILE", help="lattice file")
    json_flag(p)
    p.set_defaults(handler=_embed)

    p = sub.add_parser("search", help="search for counterexamples to the pairwise conjecture")
    p.add_argument("--n", type=int, required=True, help="ground set size (0..3)")
    p.add_argument("--grid", required=True, help="comma-separated weight values, e.g. 0,1,1/2")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="enumerate every candidate (default)")
    mode.add_argument("--random", action="store_true", help="sample --limit candidates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=10**6)
    p.add_argument("--out", metavar="DIR", help="write each counterexample as files under DIR")
    json_flag(p)
    p.set_defaults(handler=_search)

    p = sub.add_parser("replay-proof", help="check q-4FT directly and via embedding + slices")
    p.add_argument("--lattice", metavar="FILE", help="lattice file (default: the reference table)")
    weights(p)
    selections(p)
    json_flag(p)
    p.set_defaults(handler=_replay)

    p = sub.add_parser("verify-paper", help="reproduce the reference results: counterexample table, embeddings, proof replay")
    json_flag(p)
    p.set_defaults(handler=_verify_paper)
    return parser


def _strip_json(argv):
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--json":
            skip = True
        elif not a.startswith("--json="):
            out.append(a)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        ok, data = args.handler(args)
    except PreconditionFailed as exc:
        print(f"precondition failed ({exc.premise}): {exc}")
        if exc.witness:
            print("witness: " + " ".join(str(w) for w in exc.witness))
        ok, data = False, {"precondition": exc.premise, "message": str(exc),
                           "witness": exc.witness}
    except LatticeIneqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        report = {"argv": _strip_json(argv), "command": args.command, "ok": ok, **data}
        try:
            dump_json(report, args.json)
        except OSError as exc:
            print(f"error: cannot write {args.json}: {exc.strerror}", file=sys.stderr)
            return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
