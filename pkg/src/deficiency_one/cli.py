"""Command-line front end.

Exit codes follow ``sysexits``: 64 bad usage, 65 bad input data, 66 missing
input file, 70 internal inconsistency. ``classify`` reports its verdict as
0 (AlwaysNonempty), 1 (DependsOnKappa) or 2 (AlwaysEmpty).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .digraph import enumerate_branchings
from .netmodel import ParseError, ReactionNetwork, parse_inputs
from .steady import (
    AnalysisInput,
    OutOfScopeError,
    Verdict,
    classify,
    exists_for_kappa,
    prepare,
    sampling_check,
)

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66
EX_SOFTWARE = 70

VERDICT_CODES = {
    Verdict.ALWAYS_NONEMPTY: 0,
    Verdict.DEPENDS_ON_KAPPA: 1,
    Verdict.ALWAYS_EMPTY: 2,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="deficiency-one", description="Rate dependence of positive steady states.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="full analysis report")
    a.add_argument("file")
    a.add_argument("--format", choices=("json", "text"), default="text")
    a.add_argument("--samples", type=int, default=200, help="random rate draws for the oracle section")
    a.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("classify", help="print the verdict; exit 0/1/2")
    c.add_argument("file")

    w = sub.add_parser("witness", help="print witness and falsifier rates")
    w.add_argument("file")
    w.add_argument("--seed", type=int, default=0)

    o = sub.add_parser("oracle", help="check the verdict against random rates")
    o.add_argument("file")
    o.add_argument("--samples", type=int, default=200)
    o.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("branchings", help="list branchings of the complex graph")
    b.add_argument("file")
    b.add_argument("--roots", required=True, help="comma-separated root vertices")
    b.add_argument("--via", help="i:j, keep branchings where i reaches j")
    b.add_argument("--cyclic", action="store_true", help="also list functional arc sets with circuits")
    return p


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FileNotFoundError(str(exc)) from None
    try:
        return parse_inputs(text)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _kappa_json(kappa):
    return None if kappa is None else kappa.to_json()


def instance_summary(inp: AnalysisInput) -> dict:
    src = inp.source
    cs = inp.graph.components
    out = {
        "mode": "network" if isinstance(src, ReactionNetwork) else "graph_h",
        "n": src.n if isinstance(src, ReactionNetwork) else None,
        "c": len(inp.graph),
        "arcs": [f"{i}->{j}" for i, j in inp.graph.sorted_arcs()],
        "ell": inp.ell,
        "t": inp.t,
        "delta": inp.delta,
        "cprime": list(inp.cprime),
        "cdouble": list(inp.cdouble),
        "strong_components": [list(s) for s in cs.strong],
        "h": None if inp.h is None else [str(inp.h[v]) for v in inp.graph.vertices],
    }
    return out


def build_report(instance, samples: int = 200, seed: int = 0) -> dict:
    """Full analysis as a JSON-ready dictionary."""
    inp = prepare(instance)
    res = classify(inp)
    oracle = sampling_check(inp, res, samples, seed).to_json() if samples > 0 else None
    if oracle is not None and not oracle["consistent"]:
        raise AssertionError("random rates contradict the verdict")
    return {
        "instance": instance_summary(inp),
        "classification": {"verdict": res.verdict.value, "reason": res.reason},
        "exists_conditions": [c.to_json() for c in res.exists_conditions],
        "forall_conditions": [c.to_json() for c in res.forall_conditions],
        "witness_kappa": _kappa_json(res.witness_kappa),
        "falsifier_kappa": _kappa_json(res.falsifier_kappa),
        "oracle": oracle,
    }


def _cond_line(c: dict) -> str:
    rel = "<" if c["relation"] == "<0" else "<="
    mark = "ok" if c["satisfied"] else "FAILS"
    body = ",".join(map(str, c["vertices"]))
    return f"  h({{{body}}}) {rel} 0   value {c['value']}   {mark}"


def render_text(report: dict) -> str:
    inst = report["instance"]
    lines = [
        f"mode: {inst['mode']}",
        f"complexes: {inst['c']}" + (f", species: {inst['n']}" if inst["n"] is not None else ""),
        f"linkage classes: {inst['ell']}, absorbing components: {inst['t']}, deficiency: {inst['delta']}",
        "strong components: " + " ".join("{" + ",".join(map(str, s)) + "}" for s in inst["strong_components"]),
        "absorbing part: {" + ",".join(map(str, inst["cprime"])) + "}",
    ]
    if inst["h"] is not None:
        lines.append("h: (" + ", ".join(inst["h"]) + ")")
    cl = report["classification"]
    lines.append(f"verdict: {cl['verdict']} ({cl['reason']})")
    lines.append("exists conditions:")
    lines += [_cond_line(c) for c in report["exists_conditions"]] or ["  (none)"]
    lines.append("all-rates conditions:")
    lines += [_cond_line(c) for c in report["forall_conditions"]] or ["  (none)"]
    for key, label in (("witness_kappa", "witness rates"), ("falsifier_kappa", "falsifier rates")):
        if report[key] is not None:
            lines.append(f"{label}: " + ", ".join(f"{a}={q}" for a, q in report[key].items()))
    if report["oracle"] is not None:
        o = report["oracle"]
        lines.append(
            f"oracle: {o['positive_samples']}/{o['samples']} random draws positive (seed {o['seed']}), "
            f"consistent: {o['consistent']}"
        )
    return "\n".join(lines)


def _parse_vertices(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def _run(args, out) -> int:
    instance = _load(args.file)
    if args.command == "analyze":
        report = build_report(instance, args.samples, args.seed)
        if args.format == "json":
            out.write(json.dumps(report, indent=2) + "\n")
        else:
            out.write(render_text(report) + "\n")
        return 0
    if args.command == "classify":
        res = classify(instance)
        out.write(res.verdict.value + "\n")
        return VERDICT_CODES[res.verdict]
    if args.command == "witness":
        inp = prepare(instance)
        res = classify(inp)
        doc = {
            "verdict": res.verdict.value,
            "witness_kappa": _kappa_json(res.witness_kappa),
            "witness_verified": None if res.witness_kappa is None else exists_for_kappa(inp, res.witness_kappa),
            "falsifier_kappa": _kappa_json(res.falsifier_kappa),
            "falsifier_verified": None
            if res.falsifier_kappa is None
            else not exists_for_kappa(inp, res.falsifier_kappa),
            "seed": args.seed,
        }
        if doc["witness_verified"] is False or doc["falsifier_verified"] is False:
            raise AssertionError("witness or falsifier failed verification")
        out.write(json.dumps(doc, indent=2) + "\n")
        return 0
    if args.command == "oracle":
        inp = prepare(instance)
        res = classify(inp)
        rep = sampling_check(inp, res, args.samples, args.seed)
        doc = {"verdict": res.verdict.value, **rep.to_json()}
        out.write(json.dumps(doc, indent=2) + "\n")
        return 0 if rep.consistent else EX_SOFTWARE
    if args.command == "branchings":
        graph = instance.graph
        roots = _parse_vertices(args.roots)
        if not roots or any(r not in graph.vertices for r in roots):
            raise UsageError("roots must be vertices of the graph")
        via = None
        if args.via:
            parts = _parse_vertices(args.via.replace(":", ","))
            if len(parts) != 2:
                raise UsageError("--via expects i:j")
            via = (parts[0], parts[1])
        found = enumerate_branchings(graph, roots, constraint=via, include_cyclic=args.cyclic)
        rows = sorted(sorted(b) for b in found)
        for row in rows:
            out.write(" ".join(f"{i}->{j}" for i, j in row) + "\n")
        out.write(f"# {len(rows)} arc sets\n")
        return 0
    raise UsageError(f"unknown command {args.command}")


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _run(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EX_USAGE
    except FileNotFoundError as exc:
        err.write(f"cannot read input: {exc}\n")
        return EX_NOINPUT
    except (ParseError, OutOfScopeError) as exc:
        err.write(f"input error: {exc}\n")
        return EX_DATAERR
    except AssertionError as exc:
        err.write(f"internal check failed: {exc}\n")
        return EX_SOFTWARE


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
