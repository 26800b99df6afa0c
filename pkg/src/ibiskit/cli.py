"""Command-line interface: ``ibiskit COMMAND [GROUP] [options]``.

Exit codes: 0 when a question was decided or an object constructed, 2 when
the outcome is UNDECIDED (budget exhausted, or a random search found
nothing), 1 on usage, parse and validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import __version__
from .actions import (
    DEFAULT_CAP,
    ActionMap,
    ActionTooLarge,
    NotASubgroup,
    coset_action,
    is_primitive,
    natural_action,
    subset_action,
)
from .catalog import CatalogCorruption, CatalogError, catalog_names, certificate_json, load_catalog, load_group_file
from .group import BudgetExhausted, GeneratedGroup, GroupFileError
from .ibis import (
    DEFAULT_BUDGET,
    Decision,
    IbisCertificate,
    IrredundantTuple,
    all_bases_reorder_invariant,
    base_size,
    check_reorder_invariance,
    enumerate_irredundant_bases,
    enumerate_irredundant_tuples,
    extract_matroid,
    is_ibis,
    minimal_base,
    verify_base_exchange,
)
from .perm import CycleParseError, format_cycles
from .techniques import DEFAULT_MAX_ITERS, t1_certificate, t2_certificate, t3_certificate

REPORT_SCHEMA = "ibiskit-report/1"

# Rows of the reproduction table: catalog group, action, expected decision, expected b.
THEOREM_ROWS = [
    ("M11", "natural", "IBIS", 4),
    ("M12", "natural", "IBIS", 5),
    ("M22", "natural", "IBIS", 5),
    ("M23", "natural", "IBIS", 6),
    ("M24", "natural", "IBIS", 7),
]
CONTROL_ROWS = [
    ("M11", "subsets:2", "NOT_IBIS", None),
    ("M12", "subsets:2", "NOT_IBIS", None),
    ("M24", "subsets:2", "NOT_IBIS", None),
]
EXCLUSION_NOTE = (
    "Not reproduced: the cases with socle Ly, J4, Th, M (Monster) and B (Baby Monster). "
    "Their actions have degrees far beyond what exhaustive search on a desk machine can handle, "
    "so this tool makes no claim about them."
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# group and action specs ---------------------------------------------------------


def load_group_spec(spec: str) -> GeneratedGroup:
    kind, sep, rest = spec.partition(":")
    if not sep or not rest:
        raise UsageError(f"group spec {spec!r} must be catalog:NAME or file:PATH")
    if kind == "catalog":
        return load_catalog(rest)
    if kind == "file":
        return load_group_file(rest)
    raise UsageError(f"unknown group spec kind {kind!r}; use catalog:NAME or file:PATH")


def build_action(G: GeneratedGroup, spec: str, cap: int) -> ActionMap:
    if spec == "natural":
        return natural_action(G)
    if spec.startswith("subsets:"):
        k = spec.split(":", 1)[1]
        if not k.isdigit():
            raise UsageError(f"bad subset size in {spec!r}")
        return subset_action(G, int(k), cap)
    if spec.startswith("cosets:"):
        H = load_group_spec(spec.split(":", 1)[1])
        if H.degree != G.degree:
            raise UsageError(f"subgroup degree {H.degree} differs from group degree {G.degree}")
        return coset_action(G, H, cap)
    raise UsageError(f"unknown action {spec!r}; use natural, subsets:k or cosets:file:PATH")


@dataclass
class Context:
    args: argparse.Namespace
    source: GeneratedGroup
    action: ActionMap
    group: GeneratedGroup
    descriptor: str


def _context(args) -> Context:
    source = load_group_spec(args.group)
    action = build_action(source, args.action, args.cap)
    return Context(args, source, action, action.image(), f"{args.group} {args.action}")


# output -----------------------------------------------------------------------


def _report(ctx: Context | None, command: str, result: dict, group: str | None = None) -> dict:
    out = {"schema": REPORT_SCHEMA, "command": command}
    if ctx is not None:
        out.update(group=ctx.descriptor, degree=ctx.group.degree, order=ctx.group.order())
    elif group is not None:
        out["group"] = group
    out["result"] = result
    return out


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        for line in text_lines:
            print(line)


def _tuple_text(t: IrredundantTuple) -> str:
    pts = " ".join(map(str, t.points))
    orders = " > ".join(map(str, t.stab_orders))
    return f"({pts})  orders {orders}"


def _certificate_text(cert: IbisCertificate) -> list[str]:
    lines = [
        f"group     {cert.group}",
        f"degree    {cert.degree}",
        f"order     {cert.order}",
        f"b         {cert.b}",
        f"decision  {cert.decision.value}",
        f"method    {cert.method.value}",
    ]
    if cert.seed is not None:
        lines.append(f"seed      {cert.seed}")
    if cert.witness is not None:
        pts = cert.witness["points"]
        lines.append(f"witness   {' '.join(map(str, pts))}")
        lines.append(f"orders    {' > '.join(map(str, cert.witness['stab_orders']))}")
    for k in ("nodes", "reps_examined"):
        if k in cert.stats:
            lines.append(f"{k:<9} {cert.stats[k]}")
    return lines


def _emit_certificate(args, cert: IbisCertificate) -> int:
    if args.json:
        sys.stdout.write(certificate_json(cert))
    else:
        for line in _certificate_text(cert):
            print(line)
    return 2 if cert.decision is Decision.UNDECIDED else 0


# commands -----------------------------------------------------------------------


def cmd_order(args) -> int:
    ctx = _context(args)
    G = ctx.group
    res = {"order": G.order(), "transitive": G.is_transitive(), "orbits": len(G.orbits())}
    _emit(args, _report(ctx, "order", res), [f"degree {G.degree}", f"order  {G.order()}"])
    return 0


def cmd_base_size(args) -> int:
    ctx = _context(args)
    tup = minimal_base(ctx.group, args.budget)
    res = {"b": len(tup), **tup.as_dict()}
    _emit(args, _report(ctx, "base-size", res), [f"b = {len(tup)}", f"base {_tuple_text(tup)}"])
    return 0


def cmd_is_ibis(args) -> int:
    ctx = _context(args)
    cert = is_ibis(ctx.group, args.budget, ctx.descriptor, args.threads)
    return _emit_certificate(args, cert)


def cmd_enumerate_bases(args) -> int:
    ctx = _context(args)
    if args.length is None:
        it = enumerate_irredundant_bases(ctx.group, args.mode, args.budget)
    else:
        it = enumerate_irredundant_tuples(ctx.group, args.length, args.mode, args.budget)
    shown, count = [], 0
    for t in it:
        count += 1
        if len(shown) < args.limit:
            shown.append(t)
    res = {
        "mode": args.mode,
        "length": args.length,
        "count": count,
        "tuples": [t.as_dict() for t in shown],
        "truncated": count > len(shown),
    }
    lines = [_tuple_text(t) for t in shown]
    if count > len(shown):
        lines.append(f"... {count - len(shown)} more")
    lines.append(f"count {count}")
    _emit(args, _report(ctx, "enumerate-bases", res), lines)
    return 0


def cmd_matroid_check(args) -> int:
    ctx = _context(args)
    M = extract_matroid(ctx.group, args.budget)
    ex = verify_base_exchange(M)
    res = {
        "bases": len(M.bases),
        "sizes": sorted(M.sizes()),
        "uniform": M.is_uniform(),
        "exchange": ex.ok,
        "reason": ex.reason,
    }
    if ex.counterexample is not None:
        res["counterexample"] = [sorted(x) if isinstance(x, frozenset) else x for x in ex.counterexample]
    lines = [
        f"bases     {len(M.bases)}",
        f"sizes     {' '.join(map(str, sorted(M.sizes())))}",
        f"uniform   {M.is_uniform()}",
        f"exchange  {'holds' if ex else 'fails: ' + ex.reason}",
    ]
    _emit(args, _report(ctx, "matroid-check", res), lines)
    return 0


def cmd_reorder_check(args) -> int:
    ctx = _context(args)
    G = ctx.group
    if args.points:
        pts = tuple(int(p) for p in args.points.split(","))
        tup = IrredundantTuple(pts, tuple(G.stabilizer_orders(pts)))
        if not (tup.is_irredundant() and tup.is_base()):
            raise UsageError(f"{pts} is not an irredundant base: orders {tup.stab_orders}")
        r = check_reorder_invariance(G, tup, args.budget)
        scope = "tuple"
    else:
        r = all_bases_reorder_invariant(G, args.budget)
        scope = "all-bases"
    res = {"scope": scope, "invariant": r.ok}
    lines = [f"reorder invariant ({scope}): {r.ok}"]
    if not r.ok:
        res["failing_order"] = list(r.failing_order)
        res["failing_tuple"] = r.failing_tuple.as_dict()
        lines.append(f"failing reordering {_tuple_text(r.failing_tuple)}")
    _emit(args, _report(ctx, "reorder-check", res), lines)
    return 0


def cmd_t1(args) -> int:
    ctx = _context(args)
    cert = t1_certificate(ctx.group, args.target, args.seed, args.max_iters, ctx.descriptor, budget=args.budget)
    return _emit_certificate(args, cert)


def cmd_t2(args) -> int:
    if args.subgroup is None:
        raise UsageError("t2 needs --subgroup")
    G = load_group_spec(args.group)
    H = load_group_spec(args.subgroup)
    if H.degree != G.degree:
        raise UsageError(f"subgroup degree {H.degree} differs from group degree {G.degree}")
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not a subgroup of G")
    b = args.b
    if b is None and G.order() // H.order() <= args.cap:
        b = base_size(coset_action(G, H, args.cap).image(), args.budget)
    length = args.length if args.length is not None else b
    if length is None:
        raise UsageError("index above cap: give --length or --b")
    cert = t2_certificate(G, H, length, b, args.seed, args.max_iters, f"{args.group} cosets:{args.subgroup}",
                          args.budget)
    return _emit_certificate(args, cert)


def cmd_t3(args) -> int:
    if args.subgroup is None:
        raise UsageError("t3 needs --subgroup")
    ctx = _context(args)
    K0 = load_group_spec(args.subgroup)
    if K0.degree != ctx.source.degree or not K0.is_subgroup_of(ctx.source):
        raise NotASubgroup("K is not a subgroup of the source group")
    K = GeneratedGroup(ctx.group.degree, [ctx.action.act(k) for k in K0.generators])
    cert = t3_certificate(ctx.group, K, args.target, args.seed, args.max_iters, ctx.descriptor,
                          budget=args.budget)
    return _emit_certificate(args, cert)


def cmd_primitivity(args) -> int:
    ctx = _context(args)
    r = is_primitive(ctx.group)
    res = {"status": r.status, "block": sorted(r.block) if r.block else None}
    lines = [r.status]
    if r.block:
        lines.append(f"block {' '.join(map(str, sorted(r.block)))}")
    _emit(args, _report(ctx, "primitivity", res), lines)
    return 0


def cmd_coset_action(args) -> int:
    if args.subgroup is None:
        raise UsageError("coset-action needs --subgroup")
    G = load_group_spec(args.group)
    H = load_group_spec(args.subgroup)
    A = coset_action(G, H, args.cap)
    group_text, labels = A.export()
    if args.out:
        with open(args.out, "w") as f:
            f.write(group_text)
        with open(args.out + ".labels", "w") as f:
            f.write(labels)
    descriptor = f"{args.group} cosets:{args.subgroup}"
    res = {
        "degree": A.target_degree,
        "generators": [format_cycles(g) for g in A.generator_images],
        "labels": [" ".join(str(j + 1) for j in w) or "e" for w in A.labels],
    }
    payload = {"schema": REPORT_SCHEMA, "command": "coset-action", "group": descriptor,
               "degree": A.target_degree, "order": G.order(), "result": res}
    _emit(args, payload, [group_text.rstrip("\n")])
    return 0


def cmd_reproduce_theorem(args) -> int:
    rows = []
    all_pass = True
    for name, action, expected, exp_b in THEOREM_ROWS + CONTROL_ROWS:
        G = build_action(load_catalog(name), action, args.cap).image()
        cert = is_ibis(G, args.budget, f"catalog:{name} {action}", args.threads)
        ok = cert.decision.value == expected and (exp_b is None or cert.b == exp_b)
        if cert.decision is Decision.NOT_IBIS:
            ok = ok and cert.replay(G)
        all_pass &= ok
        rows.append({
            "group": name,
            "action": action,
            "degree": G.degree,
            "order": G.order(),
            "expected": expected if exp_b is None else f"{expected} b={exp_b}",
            "decision": cert.decision.value,
            "b": cert.b,
            "witness_length": len(cert.witness["points"]) if cert.witness else None,
            "status": "PASS" if ok else "FAIL",
        })
    payload = {"schema": REPORT_SCHEMA, "command": "reproduce-theorem",
               "result": {"rows": rows, "all_pass": all_pass, "excluded": ["Ly", "J4", "Th", "M", "B"],
                          "note": EXCLUSION_NOTE}}
    head = f"{'group':<6} {'action':<10} {'degree':>6} {'order':>10} {'expected':<14} {'decision':<9} {'b':>2}  status"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(f"{r['group']:<6} {r['action']:<10} {r['degree']:>6} {r['order']:>10} {r['expected']:<14} "
                     f"{r['decision']:<9} {r['b']:>2}  {r['status']}")
    lines += ["", EXCLUSION_NOTE]
    _emit(args, payload, lines)
    return 0 if all_pass else 1


def cmd_catalog(args) -> int:
    names = catalog_names()
    rows = []
    for n in names:
        G = load_catalog(n)
        rows.append({"name": n, "degree": G.degree, "order": G.order()})
    payload = {"schema": REPORT_SCHEMA, "command": "catalog", "result": {"groups": rows}}
    _emit(args, payload, [f"{r['name']:<8} degree {r['degree']:>3}  order {r['order']}" for r in rows])
    return 0


# parser -------------------------------------------------------------------------


COMMANDS = {
    "order": (cmd_order, "group order"),
    "base-size": (cmd_base_size, "base size b(G) and a minimal base"),
    "is-ibis": (cmd_is_ibis, "exhaustive IBIS decision with certificate"),
    "enumerate-bases": (cmd_enumerate_bases, "irredundant bases or t-tuples"),
    "matroid-check": (cmd_matroid_check, "base family and the base-exchange axiom"),
    "reorder-check": (cmd_reorder_check, "do reorderings of irredundant bases stay irredundant"),
    "t1": (cmd_t1, "random partial base search"),
    "t2": (cmd_t2, "chains of intersections of conjugate subgroups"),
    "t3": (cmd_t3, "random search restricted to a subgroup"),
    "primitivity": (cmd_primitivity, "primitivity test with a block if imprimitive"),
    "coset-action": (cmd_coset_action, "export the action on the cosets of a subgroup"),
    "reproduce-theorem": (cmd_reproduce_theorem, "Mathieu natural actions and non-IBIS controls"),
    "catalog": (cmd_catalog, "list the built-in groups"),
}
NO_GROUP = {"reproduce-theorem", "catalog"}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--action", default="natural", help="natural | subsets:k | cosets:file:PATH (default natural)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands (default 0)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget (default 10^8)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest induced degree (default 10^6)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for the IBIS search")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="JSON output without timings")
    out.add_argument("--text", dest="json", action="store_false", help="text output with timing (default)")

    p = _Parser(prog="ibiskit", description="Irredundant bases and the IBIS property for permutation groups.")
    p.add_argument("--version", action="version", version=f"ibiskit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name not in NO_GROUP:
            sp.add_argument("group", help="catalog:NAME or file:PATH")
        if name in ("t2", "t3", "coset-action"):
            sp.add_argument("--subgroup", help="subgroup as catalog:NAME or file:PATH")
        if name in ("t1", "t2", "t3"):
            sp.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
        if name in ("t1", "t3"):
            sp.add_argument("--target", type=int, help="target length (default b(G))")
        if name == "t2":
            sp.add_argument("--length", type=int, help="chain length (default b of the coset action)")
            sp.add_argument("--b", type=int, help="known base size of the coset action")
        if name == "enumerate-bases":
            sp.add_argument("--mode", choices=["representatives", "all"], default="representatives")
            sp.add_argument("--length", type=int, help="tuple length (default: full bases of any length)")
            sp.add_argument("--limit", type=int, default=1000, help="tuples to list (all are counted)")
        if name == "reorder-check":
            sp.add_argument("--points", help="comma-separated irredundant base (default: every base)")
        if name == "coset-action":
            sp.add_argument("--out", help="write the group file here and labels to OUT.labels")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    start = time.perf_counter()
    try:
        code = handler(args)
    except BudgetExhausted as e:
        print(f"ibiskit: UNDECIDED: {e}", file=sys.stderr)
        return 2
    except (UsageError, CatalogError, CatalogCorruption, GroupFileError, CycleParseError, ActionTooLarge,
            NotASubgroup, ValueError, OSError) as e:
        print(f"ibiskit: error: {e}", file=sys.stderr)
        return 1
    if not args.json:
        print(f"elapsed {time.perf_counter() - start:.3f} s")
    return code


if __name__ == "__main__":
    sys.exit(main())
