"""Command-line pipeline: irregular-type specs in, trees/decompositions out.

Input format (JSON): a single block

    {"lie_type": "A", "rank": 2, "p": 2,
     "coefficients": [["-1", "1", "0"], ["-1", "-1", "2"]]}

with coefficient i the vector of the x^i coefficient, entries integers or
exact rational strings "num/den"; or {"points": [block, ...]} for the
many-point product.  Family A (and G2) vectors are given in eigenvalue
coordinates and are projected onto trace zero with a warning whenever the
input trace is nonzero.

Subcommands: decompose (--oracle / --check), tree (--format json|dot),
cable, stokes-verify, selftest.  Exit codes: 0 success, 1 check failure,
2 parse/validation error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import braid, fission, rootsys, stokes
from .fission import FissionTree, TreeNode


class InputError(ValueError):
    """Malformed input document; carries field context in the message."""


class TraceProjectionWarning(UserWarning):
    pass


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"{where}: entry {value!r} is not an exact rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: invalid rational {value!r}") from exc
    raise InputError(f"{where}: entry {value!r} is not an exact rational")


def _parse_block(block: dict, where: str) -> tuple[rootsys.RootSystem, fission.IrregularType]:
    if not isinstance(block, dict):
        raise InputError(f"{where}: expected an object")
    for key in ("lie_type", "rank", "coefficients"):
        if key not in block:
            raise InputError(f"{where}: missing field {key!r}")
    family = block["lie_type"]
    if family not in rootsys.FAMILIES:
        raise InputError(f"{where}.lie_type: unknown family {family!r}")
    rank = block["rank"]
    if not isinstance(rank, int):
        raise InputError(f"{where}.rank: expected an integer")
    try:
        rs = rootsys.build_root_system(family, rank)
    except rootsys.UnsupportedRankError as exc:
        raise InputError(f"{where}: {exc}") from exc
    vectors = block["coefficients"]
    if not isinstance(vectors, list) or (not vectors and "p" not in block):
        raise InputError(f"{where}.coefficients: p >= 1 required")
    p = block.get("p", len(vectors))
    if not isinstance(p, int) or p < 1:
        raise InputError(f"{where}.p: p >= 1 required")
    if len(vectors) > p:
        raise InputError(f"{where}: {len(vectors)} coefficients exceed p = {p}")
    coeffs = []
    for i, vecdata in enumerate(vectors, start=1):
        loc = f"{where}.coefficients[{i}]"
        if not isinstance(vecdata, list) or len(vecdata) != rs.ambient_dim:
            raise InputError(
                f"{loc}: expected {rs.ambient_dim} entries for {family}_{rank}"
            )
        values = [_parse_rational(v, loc) for v in vecdata]
        if rs.family in ("A", "G2") and sum(values) != 0:
            warnings.warn(
                f"{loc}: nonzero trace projected out", TraceProjectionWarning
            )
            values = list(rootsys.project_traceless(values))
        coeffs.append(rootsys.cartan(rs, values))
    zero = rootsys.cartan(rs, [0] * rs.ambient_dim)
    coeffs.extend([zero] * (p - len(coeffs)))
    return rs, fission.IrregularType(rs, tuple(coeffs))


def parse_input(source):
    """Parse a spec document from a path or a JSON text.

    Returns a single (RootSystem, IrregularType) pair, or a list of pairs
    for a many-point document.
    """
    if isinstance(source, Path):
        text = source.read_text()
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    elif isinstance(source, str):
        path = Path(source)
        if not path.exists():
            raise InputError(f"no such input file: {source}")
        text = path.read_text()
    else:
        raise InputError("expected a path or a JSON text")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if isinstance(data, dict) and "points" in data:
        if not isinstance(data["points"], list) or not data["points"]:
            raise InputError("points: expected a nonempty list of blocks")
        return [
            _parse_block(b, f"points[{i}]") for i, b in enumerate(data["points"])
        ]
    return _parse_block(data, "input")


def parse_blocks(source) -> list[tuple[rootsys.RootSystem, fission.IrregularType]]:
    parsed = parse_input(source)
    return parsed if isinstance(parsed, list) else [parsed]


def emit_input(rs: rootsys.RootSystem, q: fission.IrregularType) -> str:
    """Canonical JSON for a parsed spec (round-trip companion of parse_input)."""
    doc = {
        "lie_type": rs.family,
        "rank": rs.rank,
        "p": q.p,
        "coefficients": [
            [str(c) for c in coeff.coords] for coeff in q.coefficients
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Emitters
# ---------------------------------------------------------------------------


def emit_tree(tree: FissionTree, format: str = "json") -> str:
    """Serialize a fission tree; byte-deterministic for a fixed input."""
    if format == "json":
        doc = {
            "family": tree.family,
            "nodes": [
                {
                    "id": n.id,
                    "level": n.level,
                    "parent": n.parent,
                    "colour": n.colour,
                    "diameter": n.diameter,
                }
                for n in tree.nodes
            ],
            "leaf_order": list(tree.leaf_order),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if format == "dot":
        return _emit_dot(tree)
    raise ValueError(f"unknown tree format {format!r}")


def _emit_dot(tree: FissionTree) -> str:
    lines = ["digraph fission_tree {", "  rankdir=BT;"]
    top = max(n.level for n in tree.nodes)
    leaf_pos = {leaf: i + 1 for i, leaf in enumerate(tree.leaf_order)}
    for level in range(1, top + 1):
        members = [n for n in tree.nodes if n.level == level]
        lines.append("  { rank=same;")
        for n in members:
            attrs = []
            if n.level == 1:
                attrs.append(f'label="{leaf_pos[n.id]}"')
            else:
                attrs.append('label=""')
            if n.diameter == fission.SMALL:
                attrs.append("shape=point")
            else:
                attrs.append("shape=circle")
            if n.colour == fission.BLUE:
                attrs.append("style=filled")
                attrs.append("fillcolor=lightblue")
            lines.append(f"    n{n.id} [{', '.join(attrs)}];")
        lines.append("  }")
    for n in tree.nodes:
        if n.parent is not None:
            lines.append(f"  n{n.id} -> n{n.parent};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_from_json(text: str) -> FissionTree:
    """Inverse of emit_tree(..., "json"); coordinates are not round-tripped."""
    data = json.loads(text)
    nodes = tuple(
        TreeNode(
            n["id"], n["level"], n["parent"], n["colour"], n["diameter"], None
        )
        for n in sorted(data["nodes"], key=lambda n: n["id"])
    )
    tree = FissionTree(data["family"], nodes)
    fission.check_tree_invariants(tree)
    if tuple(data["leaf_order"]) != tree.leaf_order:
        raise InputError("leaf_order does not match the level-1 nodes")
    return tree


def emit_decomposition(d: fission.GroupDecomposition) -> str:
    return d.canonical_string()


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _collect_warnings(fn, *args):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = fn(*args)
    return result, [str(w.message) for w in caught]


def _cmd_decompose(args) -> int:
    blocks, notes = _collect_warnings(parse_blocks, args.input)
    method = "oracle" if args.oracle else ("check" if args.check else "tree")
    decs = [fission.decompose(q, method=method) for _, q in blocks]
    merged = fission.merge_decompositions(decs)
    if args.json:
        trees = [
            json.loads(emit_tree(fission.fission_tree(q)))
            if rs.family != "G2"
            else None
            for rs, q in blocks
        ]
        payload = {
            "decomposition": merged.canonical_string(),
            "factors": [str(f) for f in merged.factors],
            "method": method,
            "trees": trees,
            "warnings": notes,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for note in notes:
            print(f"warning: {note}", file=sys.stderr)
        print(merged.canonical_string())
    return 0


def _cmd_tree(args) -> int:
    blocks, notes = _collect_warnings(parse_blocks, args.input)
    if len(blocks) != 1:
        raise InputError("tree requires a single-point spec")
    for note in notes:
        print(f"warning: {note}", file=sys.stderr)
    _, q = blocks[0]
    tree = fission.fission_tree(q)
    sys.stdout.write(emit_tree(tree, args.format))
    return 0


def _cmd_cable(args) -> int:
    blocks, notes = _collect_warnings(parse_blocks, args.input)
    if len(blocks) != 1:
        raise InputError("cable requires a single-point spec")
    for note in notes:
        print(f"warning: {note}", file=sys.stderr)
    rs, q = blocks[0]
    if rs.family != "A":
        raise InputError("cable is defined for family A only")
    tree = fission.fission_tree(q)
    groups = braid.cabled_group_generators(tree)
    strands = len(tree.leaf_order)
    if args.json:
        payload = {
            "strands": strands,
            "groups": [
                {
                    "node": node_id,
                    "level": tree.by_id[node_id].level,
                    "children": tree.k(node_id),
                    "generators": [braid.format_word(g) for g in gens],
                }
                for node_id, gens in groups
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    print(f"strands {strands}")
    for node_id, gens in groups:
        node = tree.by_id[node_id]
        print(f"node {node_id} (level {node.level}, k={tree.k(node_id)}):")
        for g in gens:
            print(f"  {braid.format_word(g)}")
    return 0


def _cmd_stokes_verify(args) -> int:
    rng = random.Random(args.seed)
    failures = []
    for i in range(args.count):
        t = stokes.random_tuple(rng)
        report = stokes.verify_properties(t, rng)
        if not report.passed:
            failures.append((i, report.failures()))
    if args.json:
        print(
            json.dumps(
                {
                    "tuples": args.count,
                    "passed": not failures,
                    "failures": [
                        {"tuple": i, "checks": [n for n, _ in cs]} for i, cs in failures
                    ],
                },
                indent=2,
                sort_keys=True,
            )
        )
    else:
        print(f"stokes-verify: {args.count} tuples, {len(failures)} failures")
        for i, checks in failures:
            for name, detail in checks:
                print(f"  tuple {i}: {name} failed {detail}")
    return 1 if failures else 0


def _cmd_selftest(args) -> int:
    from . import selfcheck

    results = selfcheck.run_all(fast=not args.full)
    width = max(len(name) for name, _, _ in results)
    ok = True
    for name, passed, detail in results:
        status = "PASS" if passed else "FAIL"
        ok = ok and passed
        line = f"{name.ljust(width)}  {status}"
        if detail:
            line += f"  {detail}"
        print(line)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wildbraid",
        description="fission trees, wild mapping class group decompositions, cabled braids",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decomposition of the local WMCG")
    p.add_argument("input", help="spec file path or inline JSON")
    p.add_argument("--oracle", action="store_true", help="force the arrangement path")
    p.add_argument("--check", action="store_true", help="run both paths and compare")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("tree", help="emit the fission tree")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(fn=_cmd_tree)

    p = sub.add_parser("cable", help="emit cabled generators (family A)")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_cable)

    p = sub.add_parser("stokes-verify", help="run the Stokes braiding verifier")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_stokes_verify)

    p = sub.add_parser("selftest", help="run the acceptance property suites")
    p.add_argument("--full", action="store_true", help="full-size sweeps")
    p.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    use_json = getattr(args, "json", False)
    try:
        return args.fn(args)
    except fission.DecompositionMismatchError as exc:
        if use_json:
            print(json.dumps({"error": str(exc), "kind": "check-failure"}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, rootsys.SubsystemError, rootsys.UnsupportedRankError, ValueError) as exc:
        if use_json:
            print(json.dumps({"error": str(exc), "kind": "input-error"}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
