"""Command-line front end: ``prodform <command> <network> [options]``.

Exit status 0 on success, 1 for input, file and validation errors, 2 when an
internal invariant fails.  Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time
from importlib import resources

from .classify import classify, complex_balance, witness_check
from .factor import split_factors
from .kernel import KernelBudgetExceeded, KernelInvariantError, level_kernel, master_matrix, stationary_eval
from .network import ReactionNetwork
from .oracle import FitUnavailable, product_form_fit, shape_classify
from .parser import ParseError, parse_network, render_network
from .poly import RateAssignment, RatePoly
from .relations import ideal_level, stabilization_scan
from .statespace import components_at_level, index_profile
from .structure import analyze_structure, has_unit_conservation

COMMANDS = ("info", "components", "kernel", "ideal", "classify", "verify", "fit")


class UsageError(ValueError):
    pass


def corpus_names() -> list[str]:
    root = resources.files("prodform") / "corpus"
    return sorted(p.name[: -len(".crn")] for p in root.iterdir() if p.name.endswith(".crn"))


def load_network(path: str) -> ReactionNetwork:
    """Read a network file; ``corpus:NAME`` selects a bundled example."""
    if path.startswith("corpus:"):
        name = path[len("corpus:"):]
        res = resources.files("prodform") / "corpus" / f"{name}.crn"
        if not res.is_file():
            raise FileNotFoundError(f"no bundled network {name!r}; available: {', '.join(corpus_names())}")
        text, origin = res.read_text(encoding="utf-8"), path
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        origin, name = path, os.path.splitext(os.path.basename(path))[0]
    net = parse_network(text, origin=origin)
    return dataclasses.replace(net, name=name)


def factored_text(p: RatePoly) -> str:
    """``content*(primitive)`` with the primitive part split into factors where possible."""
    if p.is_zero() or p.is_constant():
        return str(p)
    content, factors = split_factors(p)
    parts = [] if content == 1 else [str(content)]
    for f in factors:
        s = str(f)
        parts.append(f"({s})" if len(f) > 1 else s)
    return "*".join(parts) if parts else "1"


# -- commands -------------------------------------------------------------------------------


def cmd_info(net, args):
    rep = analyze_structure(net)
    out = {"network": net.name, "reactions": render_network(net).splitlines(), **rep.to_json()}
    if has_unit_conservation(net):
        out["index_profile"] = index_profile(net, args.levels).to_json()
    lines = [f"network: {net.name}", f"species: {', '.join(net.species)}",
             f"complexes: {rep.complex_count}  linkage classes: {rep.linkage_count}  stoichiometric dim: {rep.stoich_dim}",
             f"deficiency: {rep.deficiency}", f"reversibility: {rep.reversibility.value}",
             "conservation: " + ("none" if rep.conservation is None else "(" + ", ".join(str(x) for x in rep.conservation) + ")")]
    if "index_profile" in out:
        lines.append(f"index set starts at level: {out['index_profile']['q']}")
        lines += [f"  {c}" for c in out["index_profile"]["essential_caveats"]]
    return out, lines


def _state_text(s) -> str:
    return "(" + ",".join(map(str, s)) + ")"


def cmd_components(net, args):
    levels = [args.level] if args.level is not None else list(range(1, args.levels + 1))
    out, lines = {"network": net.name, "levels": []}, []
    for lv in levels:
        dec = components_at_level(net, lv)
        out["levels"].append({
            "level": lv,
            "components": [c.to_json() for c in dec.components],
            "transient": [list(s) for s in dec.transient],
        })
        lines.append(f"level {lv}: {len(dec.components)} closed class(es), {len(dec.transient)} transient state(s)")
        for c in dec.components:
            flag = " full simplex" if c.flags.is_full_simplex else ""
            lines.append(f"  {{{' '.join(_state_text(s) for s in c.states)}}}{flag}")
        if dec.transient:
            lines.append(f"  transient: {' '.join(_state_text(s) for s in dec.transient)}")
    return out, lines


def cmd_kernel(net, args):
    lv = args.level if args.level is not None else 2
    h = level_kernel(net, lv, args.max_states)
    out = {"network": net.name, **h.to_json(), "states": [list(s) for s in h.states]}
    text = "(" + ", ".join(factored_text(e) for e in h.entries) + ")" if args.factored else h.text()
    lines = [text]
    if args.show_matrix:
        comp = components_at_level(net, lv).components[0]
        mat = master_matrix(net, comp)
        out["matrix"] = mat.to_json()
        lines += ["matrix:"] + ["  [" + ", ".join(row) + "]" for row in out["matrix"]["entries"]]
    if args.rates is not None:
        probs = stationary_eval(h, args.rates)
        out["stationary"] = [str(p) for p in probs]
        lines += [f"  {_state_text(s)}: {p}" for s, p in zip(h.states, probs)]
    return out, lines


def cmd_ideal(net, args):
    if args.level is not None:
        gs = ideal_level(net, args.level, args.max_states, include_transient=args.include_transient)
        out = {"network": net.name, **gs.to_json()}
        lines = [f"level {gs.level} (index set from {gs.q}): {len(gs.generators)} generator(s), "
                 f"{gs.zero_relation_count} of {gs.relation_count} relations vanish identically"]
        for g in gs.generators:
            lines.append(f"  [{g.sign.value}] content {g.content}: {g.poly}")
        return out, lines
    scan = stabilization_scan(net, args.levels, args.max_states)
    out = {"network": net.name, **scan.to_json()}
    lines = [f"index set from level {scan.q}; first nonzero level {scan.first_nonzero_level}"]
    lines += [f"  level {k}: {v} new generator(s)" for k, v in scan.new_generator_counts.items()]
    return out, lines


def cmd_classify(net, args):
    witnesses = [args.rates] if args.rates is not None else None
    rep = classify(net, args.levels, witness_rates=witnesses, seed=args.seed, max_states=args.max_states)
    out = rep.to_json(timings=args.timings)
    lines = [f"{net.name}: {rep.verdict.value} ({rep.certainty})"]
    for c in rep.certificates:
        where = "" if c.level is None else f" at level {c.level}"
        lines.append(f"  certificate {c.kind.value}{where}")
        for k, v in c.to_json()["payload"].items():
            lines.append(f"    {k}: {v}")
    lines += [f"  caveat: {c}" for c in rep.caveats]
    if args.timings:
        lines += [f"  time {k}: {v:.3f}s" for k, v in rep.timings.items()]
    return out, lines


def cmd_verify(net, args):
    wr = witness_check(net, args.rates, args.levels, args.max_states)
    cb = complex_balance(net, args.rates)
    out = {"network": net.name, "witness": wr.to_json(), "complex_balance": cb.to_json(net)}
    status = "consistent with product form" if wr.product_form_consistent else "violates product form"
    lines = [f"{net.name} at {args.rates.to_text()}: {status} through level {args.levels}"]
    if wr.violated_relation is not None:
        lines.append(f"  relation {wr.violated_relation.describe()} residual {wr.residual}")
        lines.append(f"  {len(wr.violations)} violated relation(s)")
    lines.append(f"  complex balanced: {'yes' if cb.balanced else 'no'}")
    if cb.point_c is not None:
        lines.append("  balancing point: (" + ", ".join(str(c) for c in cb.point_c) + ")")
    return out, lines


def cmd_fit(net, args):
    fit = product_form_fit(net, args.rates, args.levels)
    out = {"network": net.name, **fit.to_json()}
    lines = [f"{net.name}: fit {'consistent' if fit.succeeded else 'failed'} through level {fit.consistent_through}"]
    if fit.first_failure is not None:
        lines.append(f"  first failure: {fit.first_failure}")
    for sp, table in zip(fit.species, fit.f_tables):
        lines.append(f"  f_{sp}: " + ", ".join(str(v) for v in table))
    if fit.succeeded and fit.consistent_through >= 4:
        shapes = shape_classify(fit)
        out["shapes"] = [s.to_json() for s in shapes]
        lines.append("  shapes: " + ", ".join(s.label for s in shapes))
    return out, lines


HANDLERS = {
    "info": cmd_info, "components": cmd_components, "kernel": cmd_kernel, "ideal": cmd_ideal,
    "classify": cmd_classify, "verify": cmd_verify, "fit": cmd_fit,
}


def _levels(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("levels must be at least 2")
    return v


def _rates(text: str) -> RateAssignment:
    try:
        return RateAssignment.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prodform", description="Product-form analysis of stochastic reaction networks.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("network", help="network file, or corpus:NAME for a bundled example")
    p.add_argument("--levels", type=_levels, default=6, help="highest level to analyse (default 6)")
    p.add_argument("--level", type=int, help="single level for components, kernel and ideal")
    p.add_argument("--rates", type=_rates, help="rate values such as a=1,b=3/2")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="write the report here instead of standard output")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    p.add_argument("--max-states", type=int, default=12, help="state budget for symbolic kernels")
    p.add_argument("--factored", action="store_true", help="print kernel entries in factored form")
    p.add_argument("--show-matrix", action="store_true", help="also print the master matrix")
    p.add_argument("--include-transient", action="store_true",
                   help="ideal: also use lower levels whose single closed class leaves transient states")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    t0 = time.perf_counter()
    try:
        if args.command in ("verify", "fit") and args.rates is None:
            raise UsageError(f"{args.command} needs --rates")
        net = load_network(args.network)
        if args.rates is not None:
            args.rates.require(net.rate_symbols)
        out, lines = HANDLERS[args.command](net, args)
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"prodform: cannot read {args.network}: {exc.strerror or exc}", file=sys.stderr)
        return 1
    except (KernelInvariantError, AssertionError) as exc:
        print(f"prodform: internal invariant violated: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KernelBudgetExceeded, FitUnavailable, KeyError) as exc:
        print(f"prodform: {exc}", file=sys.stderr)
        return 1
    if args.timings and args.command != "classify":
        out["timings"] = {"total": round(time.perf_counter() - t0, 4)}
        lines.append(f"time: {time.perf_counter() - t0:.3f}s")
    text = json.dumps(out, indent=2, ensure_ascii=False) if args.format == "json" else "\n".join(lines)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"prodform: cannot write {args.output}: {exc.strerror or exc}", file=sys.stderr)
            return 1
    else:
        print(text)
    return 0


def main() -> None:
    sys.exit(run())
