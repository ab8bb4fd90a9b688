"""Command-line front end.

JSON reports go to standard output (and optionally ``--json-out``); a short
human summary goes to standard error.  Exit status: 0 when every verdict is
HOLDS, VACUOUS or NOT_APPLICABLE, 2 when any verdict is VIOLATED, 1 on
usage, parse or guard errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import balls_bins, instances, warning_verify as wv, zerosum_apps as za
from .multipoly import MultiPoly
from .polyparse import PolySyntaxError, parse_polys
from .ring_core import fq_build
from .schanuel_brink import RestrictedBox, build_context, congruence_equiv_check, delta_power

SEED_MAX = 2**64 - 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ---------------------------------------------------------------------------
# flag parsing helpers
# ---------------------------------------------------------------------------


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None


def _sets(text: str, n: int | None, what: str) -> list[list[int]]:
    """'0,1;0,2' gives one set per coordinate; a single set is repeated n times."""
    parts = [_ints(part, what) for part in text.split(";")]
    if len(parts) == 1 and n is not None and n > 1:
        parts = parts * n
    return parts


def _seed(value: str) -> int:
    s = int(value)
    if not 0 <= s <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return s


def _workers(value: str) -> int:
    w = int(value)
    if w < 1:
        raise argparse.ArgumentTypeError("worker count must be at least 1")
    return w


def _load_instance(args) -> dict | None:
    if not getattr(args, "instance", None):
        return None
    with open(args.instance) as fh:
        return json.load(fh)


def _field(args):
    if args.field:
        vals = _ints(args.field, "--field")
        if len(vals) == 1:
            vals.append(1)
        if len(vals) != 2:
            raise UsageError("--field expects p,ell")
        return fq_build(vals[0], vals[1])
    return None


def _nvars(args, texts: Sequence[str]) -> int | None:
    if getattr(args, "nvars", None):
        return args.nvars
    if getattr(args, "box", None) and ";" in args.box:
        return len(args.box.split(";"))
    if getattr(args, "caps", None):
        return len(_ints(args.caps, "--caps"))
    return None


def _polys(args, nvars=None) -> list[MultiPoly]:
    if not args.poly:
        raise UsageError("at least one --poly is required")
    return parse_polys(args.poly, nvars or _nvars(args, args.poly))


def _group(args) -> za.GroupSpec:
    if not args.group:
        raise UsageError("--group p:v1,v2,... is required")
    return za.GroupSpec.parse(args.group)


def _element(group: za.GroupSpec, text: str | None):
    if text is None:
        return 0
    vals = _ints(text, "element")
    return vals[0] if group.rank == 1 and len(vals) == 1 else vals


def _sequence(group: za.GroupSpec, text: str | None) -> za.GSequence:
    if text is None:
        raise UsageError("--seq is required")
    if ";" in text:
        entries = [_ints(part, "--seq") for part in text.split(";") if part.strip()]
    elif group.rank == 1:
        entries = _ints(text, "--seq")
    else:
        entries = [_ints(text, "--seq")]
    return za.GSequence(group, entries)


# ---------------------------------------------------------------------------
# subcommands; each returns a JSON-ready dict
# ---------------------------------------------------------------------------


def cmd_mbound(args) -> dict:
    data = _load_instance(args) or {}
    bins = data.get("bins") or (_ints(args.bins, "--bins") if args.bins else None)
    balls = data.get("balls", args.balls)
    if bins is None or balls is None:
        raise UsageError("mbound needs --bins and --balls")
    m, greedy, closed = balls_bins.min_product_details(bins, int(balls))
    return {
        "command": "mbound",
        "bins": list(bins),
        "balls": int(balls),
        "m": m,
        "greedy_counts": list(greedy.counts) if greedy else None,
        "closed_form_used": closed,
    }


def _delta_one(f: MultiPoly, box: RestrictedBox, iterations: int, v: int | None, workers: int) -> dict:
    ctx = build_context(box)
    image = delta_power(f, ctx, iterations)
    out = {
        "p": box.p,
        "box": [list(s) for s in box.sets],
        "poly": f.to_json(),
        "iterations": iterations,
        "taus": [t.to_json() for t in ctx.taus],
        "sigmas": [s.to_json() for s in ctx.sigmas],
        "image": image.to_json(),
        "image_text": str(image),
    }
    if v is not None:
        rep = congruence_equiv_check(f, ctx, v, workers)
        out["equivalence"] = rep.to_json()
        out["verdict"] = (wv.Verdict.HOLDS if rep.passed else wv.Verdict.VIOLATED).value
    return out


def cmd_delta(args) -> dict:
    if args.random:
        rng = random.Random(args.seed)
        reports = []
        for _ in range(args.random):
            f, box, v = instances.equiv_instance(rng)
            reports.append(_delta_one(f, box, 1, v, args.workers))
        return _batch("delta", args, reports)
    data = _load_instance(args)
    if data:
        box = RestrictedBox(int(data["prime"]), data["box"])
        f = MultiPoly.from_json(data["polys"][0], box.n)
        v = (data.get("exps") or [None])[0]
    else:
        if args.p is None or args.box is None:
            raise UsageError("delta needs --p, --box and --poly")
        (f,) = _polys(args)[:1]
        box = RestrictedBox(args.p, _sets(args.box, f.nvars, "--box"))
        v = args.v[0] if args.v else None
        if box.n != f.nvars:
            f = parse_polys(args.poly, box.n)[0]
    out = _delta_one(f, box, args.iterations, v, args.workers)
    out["command"] = "delta"
    return out


def _verify_inputs(args):
    """(system, box, caps) from --instance or from the inline flags."""
    data = _load_instance(args)
    if data:
        return wv.instance_from_json(data)
    field = _field(args)
    caps = tuple(_ints(args.caps, "--caps")) if args.caps else None
    polys = _polys(args)
    n = polys[0].nvars
    if field is None and args.theorem in ("warning2", "chevalley"):
        if args.p is None:
            raise UsageError("need --field or --p")
        field = fq_build(args.p, 1)
    if field is not None:
        system = wv.FqSystem(field, polys)
        box = None
        if args.box:
            box = wv.fq_box(field, _sets(args.box, n, "--box"))
        return system, box, caps
    if args.p is None:
        raise UsageError("need --p (or --field)")
    system = wv.CongruenceSystem(args.p, polys, args.v or None)
    box = RestrictedBox(args.p, _sets(args.box, n, "--box")) if args.box else None
    return system, box, caps


def _run_verify(theorem: str, system, box, caps, workers: int, guard: int = wv.GRID_GUARD) -> dict:
    if theorem == "rvw2":
        rep = wv.rvw2_report(system, box, workers, guard)
    elif theorem == "warning2":
        rep = wv.warning2_report(_as_fq(system), workers, guard)
    elif theorem == "chevalley":
        rep = wv.chevalley_report(_as_fq(system), box, workers, guard)
    elif theorem == "brink":
        if box is None:
            box = RestrictedBox(system.p, [(0, 1)] * system.nvars)
        rep = wv.brink_report(system, box, workers, guard)
    elif theorem == "schanuel":
        if caps is None:
            raise UsageError("schanuel needs --caps")
        rep = wv.schanuel_box_expand(system, caps, workers).report
    elif theorem == "alonfuredi":
        if len(system.polys) != 1:
            raise UsageError("alonfuredi takes exactly one polynomial")
        if box is None and not isinstance(system, wv.FqSystem):
            raise UsageError("alonfuredi over the integers needs --box")
        rep = wv.alon_furedi_report(system.polys[0], box, workers, guard)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown theorem {theorem}")
    out = rep.to_json()
    out["input"] = wv.instance_to_json(system, box, caps)
    return out


def _as_fq(system):
    if isinstance(system, wv.FqSystem):
        return system
    if any(v != 1 for v in system.exps):
        raise UsageError("this check needs a field system (exponents must be 1)")
    return wv.FqSystem(fq_build(system.p, 1), system.polys)


def _random_verify_instance(theorem: str, rng: random.Random, args):
    if theorem in ("rvw2", "brink"):
        system, box = instances.congruence_system_instance(rng)
        return system, box, None
    if theorem == "schanuel":
        system, _ = instances.congruence_system_instance(rng, max_n=3, anchor=0.0)
        polys = [f - f.constant_term() for f in system.polys]
        caps = tuple(rng.randint(0, 3) for _ in range(system.nvars))
        return wv.CongruenceSystem(system.p, polys, system.exps), None, caps
    if theorem == "alonfuredi":
        p = rng.choice((3, 5))
        n = rng.randint(1, 3)
        f = instances.random_poly(rng, n, rng.randint(0, 3))
        return wv.CongruenceSystem(p, [f]), instances.random_box(rng, p, n), None
    field = _field(args) or fq_build(rng.choice((2, 3)), 1)
    n = rng.randint(2, 3)
    degs = rng.choice(instances.degree_profiles(n))
    polys = [
        instances.random_poly(rng, n, d, coeff_bound=field.p).map_coefficients(field) for d in degs
    ]
    polys = [f if f.total_degree() == d else f + MultiPoly.variable(0, n, field.one) ** d
             for f, d in zip(polys, degs)]
    return wv.FqSystem(field, polys), None, None


def cmd_verify(args) -> dict:
    if args.random:
        rng = random.Random(args.seed)
        reports = []
        for _ in range(args.random):
            system, box, caps = _random_verify_instance(args.theorem, rng, args)
            reports.append(_run_verify(args.theorem, system, box, caps, args.workers, args.grid_guard))
        return _batch(f"verify {args.theorem}", args, reports)
    system, box, caps = _verify_inputs(args)
    out = _run_verify(args.theorem, system, box, caps, args.workers, args.grid_guard)
    out["command"] = f"verify {args.theorem}"
    return out


def _zerosum_inputs(args):
    data = _load_instance(args) or {}
    if data.get("group"):
        group = za.GroupSpec(int(data["group"]["p"]), data["group"]["exps"])
    else:
        group = _group(args)
    if "sequence" in data:
        seq = za.GSequence(group, data["sequence"])
    elif args.seq is not None:
        seq = _sequence(group, args.seq)
    else:
        seq = None
    if "target" in data:
        target = data["target"]
    else:
        target = _element(group, args.target)
    box = None
    if data.get("box") is not None:
        box = RestrictedBox(group.p, data["box"])
    elif getattr(args, "box", None) and seq is not None:
        box = RestrictedBox(group.p, _sets(args.box, len(seq), "--box"))
    k = data.get("k", getattr(args, "k", None))
    return group, seq, target, box, k


def cmd_davenport(args) -> dict:
    group = _group(args) if not args.instance else za.GroupSpec(**_load_instance(args)["group"])
    out = za.davenport_constant(group).to_json()
    out["command"] = "davenport"
    out["verdict"] = (wv.Verdict.HOLDS if out["D"] == out["d"] else wv.Verdict.VIOLATED).value
    return out


def cmd_ngsum(args) -> dict:
    if args.random:
        rng = random.Random(args.seed)
        reports = []
        for _ in range(args.random):
            group = instances.random_group(rng)
            seq = instances.random_sequence(rng, group, rng.randint(0, 8))
            reports.append(za.ng_bound_report(seq, instances.random_element(rng, group)).to_json())
        return _batch("ngsum", args, reports)
    if args.min_length is not None:
        out = za.ng_minimum_report(_group(args), args.min_length).to_json()
        out["command"] = "ngsum"
        return out
    group, seq, target, _, _ = _zerosum_inputs(args)
    if seq is None:
        raise UsageError("ngsum needs --seq (or --min-length)")
    out = za.ng_bound_report(seq, target).to_json()
    out["command"] = "ngsum"
    return out


def _random_weighted(rng: random.Random, equal: bool = False):
    group = instances.random_group(rng)
    n = rng.randint(1, 6)
    seq = instances.random_sequence(rng, group, n)
    box = instances.random_weight_box(rng, group.p, n, equal=equal)
    return group, seq, box


def cmd_gensub(args) -> dict:
    if args.random:
        rng = random.Random(args.seed)
        reports = []
        for _ in range(args.random):
            group, seq, box = _random_weighted(rng)
            target = instances.random_element(rng, group)
            reports.append(za.generalized_report(seq, target, box, args.workers, args.grid_guard).to_json())
        return _batch("gensub", args, reports)
    group, seq, target, box, _ = _zerosum_inputs(args)
    if seq is None or box is None:
        raise UsageError("gensub needs --seq and --box")
    out = za.generalized_report(seq, target, box, args.workers, args.grid_guard).to_json()
    out["command"] = "gensub"
    return out


def cmd_setsystem(args) -> dict:
    if args.random:
        rng = random.Random(args.seed)
        reports = []
        for _ in range(args.random):
            F, _ = instances.random_setsystem(rng)
            m = rng.choice((2, 3, 4))
            reports.append(za.setsystem_report(F, m, rng.randrange(m)).to_json())
        return _batch("setsystem", args, reports)
    if args.extremal:
        d, m = _ints(args.extremal, "--extremal")
        F = za.extremal_setsystem(d, m)
        out = za.setsystem_report(F, m, 0).to_json()
        out["extremal"] = {"d": d, "m": m, "length": len(F)}
        out["command"] = "setsystem"
        return out
    data = _load_instance(args) or {}
    sets = data.get("sets")
    if sets is None:
        if args.sets is None:
            raise UsageError("setsystem needs --sets (or --extremal d,m)")
        sets = [_ints(part, "--sets") for part in args.sets.split(";")]
    m = int(data.get("modulus", args.modulus))
    g = int(data.get("target", args.target or 0))
    F = za.SetSystem(sets)
    out = za.setsystem_report(F, m, g).to_json()
    if len(F) <= za.UNION_POLY_GUARD:
        out["union_poly"] = za.union_poly(F).to_json()
    out["command"] = "setsystem"
    return out


def cmd_egz(args) -> dict:
    if args.classic is not None:
        out = za.egz_classic_verify(args.classic).to_json()
        out["command"] = "egz"
        return out
    if args.random:
        rng = random.Random(args.seed)
        reports = []
        for _ in range(args.random):
            group, seq, box = _random_weighted(rng)
            k = rng.randint(1, 2)
            rep = za.egz_report(seq, box, k, instances.random_element(rng, group)).to_json()
            rep["crosscheck_points"] = za.indicator_crosscheck(box, k)
            reports.append(rep)
        return _batch("egz", args, reports)
    group, seq, target, box, k = _zerosum_inputs(args)
    if seq is None or box is None:
        raise UsageError("egz needs --seq and --box (or --classic m)")
    k = int(k or 1)
    out = za.egz_report(seq, box, k, target).to_json()
    out["crosscheck_points"] = za.indicator_crosscheck(box, k)
    out["command"] = "egz"
    return out


def cmd_dags(args) -> dict:
    if args.random:
        rng = random.Random(args.seed)
        reports = []
        for _ in range(args.random):
            _, seq, box = _random_weighted(rng, equal=True)
            reports.append(za.dags_report(seq, box).to_json())
        return _batch("dags", args, reports)
    group, seq, _, box, _ = _zerosum_inputs(args)
    if seq is None or box is None:
        raise UsageError("dags needs --seq and --box")
    out = za.dags_report(seq, box).to_json()
    out["command"] = "dags"
    return out


def _batch(command: str, args, reports: list[dict]) -> dict:
    tally: dict[str, int] = {}
    for r in reports:
        v = r.get("verdict", "NONE")
        tally[v] = tally.get(v, 0) + 1
    return {"command": command, "seed": args.seed, "instances": len(reports), "verdicts": tally, "reports": reports}


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------


def _common(sp):
    sp.add_argument("--instance", help="JSON instance file")
    sp.add_argument("--workers", type=_workers, default=1, help="worker processes for grid sweeps")
    sp.add_argument("--seed", type=_seed, default=0, help="seed for --random instance generation")
    sp.add_argument("--json-out", help="also write the JSON report to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rvwarning", description="Restricted-variable Chevalley-Warning workbench")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    sp = sub.add_parser("mbound", help="balls-in-bins minimum m(a; N)")
    sp.add_argument("--bins", help="capacities, e.g. 3,3,2")
    sp.add_argument("--balls", type=int, help="number of balls N")
    _common(sp)

    sp = sub.add_parser("delta", help="apply the Schanuel-Brink operator")
    sp.add_argument("--p", type=int)
    sp.add_argument("--box", help="'0,1;0,1,2' per variable, or one set for all")
    sp.add_argument("--poly", action="append")
    sp.add_argument("--nvars", type=int)
    sp.add_argument("--iterations", type=int, default=1)
    sp.add_argument("--v", type=int, action="append", help="also check the mod p^v equivalence")
    sp.add_argument("--random", type=int, help="run N seeded equivalence instances")
    _common(sp)

    sp = sub.add_parser("verify", help="count solutions and check a theorem's bound")
    sp.add_argument("theorem", choices=["rvw2", "warning2", "chevalley", "brink", "schanuel", "alonfuredi"])
    sp.add_argument("--p", type=int)
    sp.add_argument("--field", help="p,ell for GF(p^ell)")
    sp.add_argument("--box")
    sp.add_argument("--poly", action="append")
    sp.add_argument("--v", type=int, action="append")
    sp.add_argument("--nvars", type=int)
    sp.add_argument("--caps", help="cap b_i per variable (schanuel)")
    sp.add_argument("--grid-guard", type=int, default=wv.GRID_GUARD, help="largest grid swept (default %(default)s)")
    sp.add_argument("--random", type=int, help="run N seeded instances")
    _common(sp)

    sp = sub.add_parser("davenport", help="Davenport constant of a p-group")
    sp.add_argument("--group", help="p:v1,v2,...")
    _common(sp)

    for name, helptext in [
        ("ngsum", "count g-sum subsequences"),
        ("gensub", "count generalized (weighted) subsequences"),
        ("egz", "EGZ-type counts with a support condition"),
        ("dags", "equal-weight EGZ bound"),
    ]:
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--group", help="p:v1,v2,...")
        sp.add_argument("--seq", help="elements; ';' between elements of non-cyclic groups")
        sp.add_argument("--target", help="target element (default 0)")
        if name != "ngsum":
            sp.add_argument("--box", help="weight sets")
        if name == "egz":
            sp.add_argument("--k", type=int, default=1)
            sp.add_argument("--classic", type=int, help="check the classical statement for Z/m")
        if name == "gensub":
            sp.add_argument("--grid-guard", type=int, default=za.WEIGHT_GRID_GUARD,
                            help="largest weight grid swept (default %(default)s)")
        if name == "ngsum":
            sp.add_argument("--min-length", type=int, help="minimum of N_0 over all multisets of this length")
        sp.add_argument("--random", type=int, help="run N seeded instances")
        _common(sp)

    sp = sub.add_parser("setsystem", help="union cardinalities modulo m")
    sp.add_argument("--sets", help="'1,2;2,3' atom lists")
    sp.add_argument("--modulus", type=int, default=2)
    sp.add_argument("--target", type=int)
    sp.add_argument("--extremal", help="d,m: the extremal construction")
    sp.add_argument("--random", type=int, help="run N seeded instances")
    _common(sp)
    return parser


COMMANDS = {
    "mbound": cmd_mbound,
    "delta": cmd_delta,
    "verify": cmd_verify,
    "davenport": cmd_davenport,
    "ngsum": cmd_ngsum,
    "gensub": cmd_gensub,
    "setsystem": cmd_setsystem,
    "egz": cmd_egz,
    "dags": cmd_dags,
}


def _verdicts(report: dict) -> list[str]:
    if "reports" in report:
        return [r.get("verdict") for r in report["reports"]]
    return [report.get("verdict")]


def _summary(report: dict) -> str:
    if "reports" in report:
        tally = ", ".join(f"{k}={v}" for k, v in sorted(report["verdicts"].items()))
        return f"{report['command']}: {report['instances']} instances ({tally})"
    bits = [report.get("command", "")]
    for key in ("m", "D", "count", "bound", "image_text", "verdict"):
        if key in report:
            bits.append(f"{key}={report[key]}")
    return " ".join(bits)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return 1
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, KeyError, OSError, PolySyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = json.dumps(report, sort_keys=True)
    print(text)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    print(_summary(report), file=sys.stderr)
    return 2 if "VIOLATED" in _verdicts(report) else 0


if __name__ == "__main__":
    sys.exit(main())
