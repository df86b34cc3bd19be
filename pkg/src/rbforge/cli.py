"""Command-line front end: `rbforge <subcommand> ...`.

Exit codes: 0 all checks passed or classification clean, 1 violation or
mismatch (a certificate is printed), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from . import __version__, catalog
from .braces import (
    PostGroup, SkewBrace, brace_from_rb, brace_from_rrb, brace_to_postgroup, conjugation_postgroup,
    is_homomorphic_postgroup, is_lambda_homomorphic, lambda_of, nilpotent_postgroup, postgroup_to_brace,
    trivial_postgroup,
)
from .errors import (
    CenterConditionViolated, GroupSpecError, InvalidActionError, InvalidBraceError, InvalidOperatorError,
    InvalidPostGroupError, SearchBoundExceeded, Violation,
)
from .groups import (
    Action, CarrierMap, FiniteGroup, all_actions, build_group, find_isomorphism, identify, is_isomorphic,
    semidirect,
)
from .nilfree import NilWord
from .operators import (
    DEFAULT_NODE_BOUND, RBOperator, RRBOperator, check_rb, check_rrb, default_workers, enumerate_rb,
    enumerate_rrb, lift_to_semidirect, map_from_json, project_to_rrb,
)
from .ybe import (
    ALL_FAMILIES, LISTED_FAMILIES, FiniteSolution, Matrix2, VerbalSolution, check_braid_finite, check_verbal,
    classify_matrices, classify_verbal, matrix_forms, matrix_ybe_check, solution_from_brace, verbal_to_finite,
)
from .zp2 import classify_zp2, oracle_rrbs

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

REPRODUCE_IDS = ("s3-rb", "z4-rrb-brace", "heis3-n2", "zp2-p3", "matrix-z5", "verbal-box2")

# Extra remarks attached to enumeration reports.
ENUMERATION_NOTES = {
    ("Z4", 1): "4 operators, all endomorphisms: x -> 0, x -> -x, x -> 2x and the identity; lists giving only the first three miss the identity",
}


class UsageError(Exception):
    pass


@dataclass
class Result:
    """A report plus its exit code; `rows` is set only for list-shaped reports."""

    payload: dict
    code: int = EXIT_OK
    rows: list[dict] | None = None
    summary: list[str] = field(default_factory=list)


# input helpers


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _ints(text: str, count: int, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(v) for v in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"{what} must be {count} comma-separated integers") from None
    if len(vals) != count:
        raise UsageError(f"{what} must be {count} comma-separated integers")
    return vals


def _load_map(args, expect_action: bool):
    data = _read_json(args.op)
    if not isinstance(data, dict) or "image" not in data:
        raise UsageError(f"{args.op}: operator JSON needs an 'image' list")
    if not expect_action and "group_spec" not in data and getattr(args, "group", None):
        data = {**data, "group_spec": args.group}
    if not expect_action and getattr(args, "group", None) and data.get("group_spec") != args.group:
        if build_group(data["group_spec"]) != build_group(args.group):
            raise UsageError(f"--group {args.group} disagrees with the file's group_spec")
    if expect_action and "action" not in data:
        raise UsageError(f"{args.op}: relative operator JSON needs an 'action'")
    if not expect_action and "group_spec" not in data:
        raise UsageError(f"{args.op}: operator JSON needs 'group_spec' (or pass --group)")
    try:
        fmap, action, weight = map_from_json(data)
    except (KeyError, IndexError, TypeError) as exc:
        raise UsageError(f"{args.op}: malformed operator ({exc})") from None
    if getattr(args, "weight", None) is not None:
        weight = args.weight
    if weight not in (1, -1):
        raise UsageError("weight must be 1 or -1")
    return fmap, action, weight


def _violation_payload(v: Violation, dom: FiniteGroup, cod: FiniteGroup | None = None) -> dict:
    cod = cod or dom
    out = v.to_json()
    key = "pair" if len(v.witness) == 2 else "triple"
    out[f"{key}_labels"] = [dom.labels[w] for w in v.witness]
    if isinstance(v.lhs, int) and isinstance(v.rhs, int):
        out["lhs_label"], out["rhs_label"] = cod.labels[v.lhs], cod.labels[v.rhs]
    return out


def _check_result(kind: str, v: Violation | None, dom: FiniteGroup, cod: FiniteGroup, pairs: int) -> Result:
    if v is None:
        return Result({"check": kind, "ok": True, "pairs_checked": pairs}, summary=[f"{kind}: ok ({pairs} pairs)"])
    cert = _violation_payload(v, dom, cod)
    return Result({"check": kind, "ok": False, "violation": cert}, EXIT_VIOLATION,
                  summary=[f"{kind}: violation at {cert['pair_labels']}: {cert['lhs_label']} != {cert['rhs_label']}"])


def _load_rb(args) -> RBOperator | Result:
    fmap, _, weight = _load_map(args, expect_action=False)
    v = check_rb(fmap, weight)
    if v is not None:
        return _check_result("rb", v, fmap.domain, fmap.codomain, fmap.domain.order ** 2)
    return RBOperator(fmap, weight)


def _load_rrb(args) -> RRBOperator | Result:
    fmap, action, weight = _load_map(args, expect_action=True)
    v = check_rrb(fmap, action, weight)
    if v is not None:
        return _check_result("rrb", v, fmap.domain, fmap.codomain, fmap.domain.order ** 2)
    return RRBOperator(action, fmap, weight)


def _load_brace(args) -> SkewBrace | Result:
    if args.brace:
        data = _read_json(args.brace)
        if "circ_table" not in data:
            raise UsageError(f"{args.brace}: brace JSON needs dot_table and circ_table")
        try:
            return SkewBrace.from_json(data)
        except (ValueError, KeyError, TypeError) as exc:
            if isinstance(exc, InvalidBraceError):
                raise
            raise UsageError(f"{args.brace}: malformed brace ({exc})") from None
    if not args.op:
        raise UsageError("give --brace FILE or --op FILE")
    data = _read_json(args.op)
    if isinstance(data, dict) and "action" in data:
        Q = _load_rrb(args)
        return Q if isinstance(Q, Result) else brace_from_rrb(Q)
    B = _load_rb(args)
    return B if isinstance(B, Result) else brace_from_rb(B)


def _action_from_args(args) -> Action:
    if args.action:
        data = _read_json(args.action)
        try:
            return Action.from_json(data)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"{args.action}: malformed action ({exc})") from None
    if not (args.space and args.actor):
        raise UsageError("give --action FILE or both --space and --actor")
    H, G = build_group(args.space), build_group(args.actor)
    actions = all_actions(G, H)
    if not 0 <= args.action_index < len(actions):
        raise UsageError(f"--action-index must lie in [0, {len(actions) - 1}]")
    return actions[args.action_index]


def _map_entry(fmap: CarrierMap) -> dict:
    return {"image": list(fmap.image), "labels": [fmap.codomain.labels[i] for i in fmap.image]}


def _workers(args) -> int:
    return args.workers if args.workers is not None else default_workers()


# subcommands


def cmd_verify_rb(args) -> Result:
    fmap, _, weight = _load_map(args, expect_action=False)
    res = _check_result("rb", check_rb(fmap, weight), fmap.domain, fmap.codomain, fmap.domain.order ** 2)
    res.payload["weight"] = weight
    return res


def cmd_verify_rrb(args) -> Result:
    fmap, action, weight = _load_map(args, expect_action=True)
    res = _check_result("rrb", check_rrb(fmap, action, weight), fmap.domain, fmap.codomain, fmap.domain.order ** 2)
    res.payload["weight"] = weight
    return res


def cmd_enumerate_rb(args) -> Result:
    G = build_group(args.group)
    ops = enumerate_rb(G, args.weight, args.bound, _workers(args))
    payload = {"group": args.group, "weight": args.weight, "count": len(ops),
               "operators": [_map_entry(f) for f in ops], "domain_labels": list(G.labels)}
    note = ENUMERATION_NOTES.get((args.group, args.weight))
    if note:
        payload["notes"] = [note]
    rows = [{"index": i, "image": " ".join(e["labels"])} for i, e in enumerate(payload["operators"])]
    return Result(payload, rows=rows, summary=[f"{len(ops)} RB operators of weight {args.weight} on {args.group}"])


def cmd_enumerate_rrb(args) -> Result:
    action = _action_from_args(args)
    ops = enumerate_rrb(action, args.weight, args.bound, _workers(args))
    payload = {"action": action.to_json(), "weight": args.weight, "count": len(ops),
               "operators": [_map_entry(f) for f in ops], "domain_labels": list(action.space.labels)}
    rows = [{"index": i, "image": " ".join(e["labels"])} for i, e in enumerate(payload["operators"])]
    return Result(payload, rows=rows, summary=[f"{len(ops)} RRB operators of weight {args.weight}"])


def cmd_lift(args) -> Result:
    Q = _load_rrb(args)
    if isinstance(Q, Result):
        return Q
    sdp = semidirect(Q.space, Q.actor, Q.action)
    B = lift_to_semidirect(Q, sdp)
    back = project_to_rrb(B, sdp)
    payload = {"product": sdp.product.to_json(), "weight": 1, "image": list(B.map.image),
               "check_rb": "ok", "round_trip": back.map == Q.map}
    return Result(payload, summary=[f"lifted to an RB operator on a group of order {sdp.product.order}; check ok"])


def cmd_project(args) -> Result:
    data = _read_json(args.op)
    try:
        action = Action.from_json(data["action"])
        sdp = semidirect(action.space, action.actor, action)
        image = tuple(int(v) for v in data["image"])
        fmap = CarrierMap(sdp.product, sdp.product, image)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{args.op}: malformed operator ({exc})") from None
    v = check_rb(fmap, 1)
    if v is not None:
        return _check_result("rb", v, fmap.domain, fmap.codomain, fmap.domain.order ** 2)
    try:
        Q = project_to_rrb(RBOperator(fmap, 1, semidirect=sdp), sdp)
    except CenterConditionViolated as exc:
        h = exc.witness
        return Result({"ok": False, "error": "center condition violated", "witness": h,
                       "witness_label": action.space.labels[h]}, EXIT_VIOLATION,
                      summary=[f"center condition fails at {action.space.labels[h]}"])
    return Result({"ok": True, **Q.to_json()}, summary=["projected to a relative RB operator; check ok"])


def _brace_payload(brace: SkewBrace) -> dict:
    return {**brace.to_json(), "circ_type": brace.circ_type(), "dot_type": identify(brace.dot),
            "trivial": brace.is_trivial(), "lambda_homomorphic": is_lambda_homomorphic(brace)}


def cmd_brace_from_rb(args) -> Result:
    B = _load_rb(args)
    if isinstance(B, Result):
        return B
    brace = brace_from_rb(B)
    return Result(_brace_payload(brace), summary=[f"brace with (G,o) of type {brace.circ_type()}"])


def cmd_brace_from_rrb(args) -> Result:
    Q = _load_rrb(args)
    if isinstance(Q, Result):
        return Q
    brace = brace_from_rrb(Q)
    return Result(_brace_payload(brace), summary=[f"brace with (H,o) of type {brace.circ_type()}"])


def cmd_postgroup(args) -> Result:
    if args.brace or args.op:
        brace = _load_brace(args)
        if isinstance(brace, Result):
            return brace
        pg = brace_to_postgroup(brace)
    else:
        if not args.group:
            raise UsageError("give --group with --nilpotent N, --conjugation or --trivial, or a --brace/--op file")
        G = build_group(args.group)
        if args.nilpotent is not None:
            pg = nilpotent_postgroup(G, args.nilpotent)
        elif args.conjugation:
            pg = conjugation_postgroup(G)
        else:
            pg = trivial_postgroup(G)
    brace = postgroup_to_brace(pg)
    payload = {**pg.to_json(), "homomorphic": is_homomorphic_postgroup(pg),
               "lambda_homomorphic": is_lambda_homomorphic(brace), "circ_type": brace.circ_type(),
               "circ_two_step_nilpotent": brace.circ.is_two_step_nilpotent}
    return Result(payload, summary=[f"post-group ok; induced (G,o) of type {payload['circ_type']}"])


def cmd_lambda_check(args) -> Result:
    brace = _load_brace(args)
    if isinstance(brace, Result):
        return brace
    ok = is_lambda_homomorphic(brace)
    payload = {"lambda_homomorphic": ok, "lambda": [list(p) for p in lambda_of(brace).perms]}
    return Result(payload, EXIT_OK if ok else EXIT_VIOLATION,
                  summary=[f"lambda-homomorphic: {'yes' if ok else 'no'}"])


def _solution_result(S: FiniteSolution) -> Result:
    v = check_braid_finite(S)
    if v is None:
        return Result({"check": "braid", "ok": True, "n": S.n}, summary=[f"braid relation holds on {S.n}^3 triples"])
    return Result({"check": "braid", "ok": False, "violation": v.to_json()}, EXIT_VIOLATION,
                  summary=[f"braid relation fails at {v.witness}: {v.lhs} != {v.rhs}"])


def cmd_ybe_check(args) -> Result:
    data = _read_json(args.solution)
    try:
        S = FiniteSolution(int(data["n"]), data["f"], data["g"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.solution}: malformed solution ({exc})") from None
    return _solution_result(S)


def cmd_ybe_from_brace(args) -> Result:
    brace = _load_brace(args)
    if isinstance(brace, Result):
        return brace
    S = solution_from_brace(brace)
    res = _solution_result(S)
    res.payload["solution"] = S.to_json()
    return res


def cmd_matrix_ybe(args) -> Result:
    if args.matrix:
        M = Matrix2(*_ints(args.matrix, 4, "--matrix"))
        res = matrix_ybe_check(M, args.q)
        payload = {"matrix": list(M), "modulus": args.q, "ok": res is None, "forms": matrix_forms(M, args.q)}
        if res is not None:
            payload["residue"] = [list(r) for r in res]
        return Result(payload, EXIT_OK if res is None else EXIT_VIOLATION,
                      summary=[f"matrix {tuple(M)}: {'solution' if res is None else 'not a solution'}"])
    if (args.q is None) == (args.box is None):
        raise UsageError("give exactly one of --q or --box (or --matrix)")
    if args.q is not None and args.q < 2:
        raise UsageError("--q must be at least 2")
    report = classify_matrices(q=args.q, box=args.box)
    payload = report.to_json()
    return Result(payload, EXIT_OK if report.clean else EXIT_VIOLATION,
                  summary=[f"{report.ring}: {len(report.passing)} of {report.total} pass; "
                           f"four-form union {len(report.family_members)}; equal={report.equal}"])


def cmd_verbal_check(args) -> Result:
    S = VerbalSolution.from_tuple(_ints(args.tuple, 6, "--tuple"))
    res = check_verbal(S)
    payload = {"solution": str(S), "tuple": list(S.as_tuple()), "ok": res is None,
               "families": [f.tag for f in ALL_FAMILIES if f.match(S.as_tuple()) is not None]}
    if res is not None:
        payload["residue"] = res.to_json()
    code = EXIT_OK if res is None else EXIT_VIOLATION
    for spec in args.group or []:
        G = build_group(spec)
        v = check_braid_finite(verbal_to_finite(S, G))
        payload.setdefault("finite", {})[spec] = {"ok": v is None, **({"violation": v.to_json()} if v else {})}
        if v is not None:
            code = EXIT_VIOLATION
    return Result(payload, code, summary=[f"{S}: {'braid ok' if res is None else 'braid fails'}"])


def cmd_verbal_classify(args) -> Result:
    families = LISTED_FAMILIES if args.families == "listed" else ALL_FAMILIES
    report = classify_verbal(args.K, args.U, families, _workers(args))
    return Result(report.to_json(), EXIT_OK if report.clean else EXIT_VIOLATION,
                  summary=[f"box K={args.K}: {len(report.passing)} passing tuples, "
                           f"{len(report.unmatched_passing)} unmatched, "
                           f"{len(report.failing_family_instances)} failing family instances"])


def cmd_zp2_classify(args) -> Result:
    try:
        report = classify_zp2(args.p, allow_large=args.allow_large)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = report.to_json()
    nonhom = report.non_homomorphic
    payload["valid_count"] = len(report.valid())
    payload["non_homomorphic_count"] = len(nonhom)
    expected_ok = bool(nonhom) if args.p == 2 else not nonhom
    return Result(payload, EXIT_OK if expected_ok else EXIT_VIOLATION,
                  summary=[f"p={args.p}: {len(report.valid())} valid RRB operators, {len(nonhom)} non-homomorphic"])


# reproduction of worked examples


def _rep_s3_rb() -> tuple[dict, bool]:
    B = catalog.s3_operator()
    G = B.group
    ops = enumerate_rb(G, 1, workers=1)
    pi_b, b_pi = catalog.s3_projection_witness()
    sdp, iso = catalog.s3_split()
    projected = project_to_rrb(RBOperator(catalog.transport(B.map, iso), 1, semidirect=sdp), sdp)
    brace = brace_from_rb(B)
    payload = {
        "operator": {G.labels[g]: G.labels[B(g)] for g in G},
        "check_rb": check_rb(B.map) is None,
        "pairs_checked": G.order ** 2,
        "projection_witness": {"pi_B_s1": pi_b, "B_pi_s1": b_pi},
        "projected_on_A3": [projected.actor.labels[x] for x in projected.map.image],
        "rb_operators_on_S3": len(ops),
        "contains_operator": B.map in ops,
        "brace_circ_type": brace.circ_type(),
    }
    ok = payload["check_rb"] and pi_b != b_pi and payload["contains_operator"]
    return payload, ok


def _rep_z4_rrb_brace() -> tuple[dict, bool]:
    Q = catalog.z4_operator()
    brace = brace_from_rrb(Q)
    target = build_group("Z2xZ2")
    iso = find_isomorphism(brace.circ, target)
    Z4 = build_group("Z4")
    rb_braces = [brace_from_rb(RBOperator(f)) for f in enumerate_rb(Z4, 1, workers=1)]
    payload = {
        "check_rrb": check_rrb(Q.map, Q.action) is None,
        "rrb_count_for_action": len(enumerate_rrb(Q.action, workers=1)),
        "circ_type": brace.circ_type(),
        "isomorphism_to_Z2xZ2": list(iso.image) if iso else None,
        "lambda_homomorphic": is_lambda_homomorphic(brace),
        "rb_operators_on_Z4": len(rb_braces),
        "rb_braces_all_trivial": all(b.is_trivial() for b in rb_braces),
    }
    ok = payload["check_rrb"] and iso is not None and payload["rb_braces_all_trivial"]
    return payload, ok


def _rep_heis3_n2() -> tuple[dict, bool]:
    G = build_group("Heis3")
    pg = nilpotent_postgroup(G, 2)
    brace = postgroup_to_brace(pg)
    circ = brace.circ
    payload = {
        "postgroup_ok": True,
        "circ_abelian": circ.is_abelian,
        "circ_type": identify(circ),
        "isomorphic_to_dot": is_isomorphic(circ, G),
        "lambda_homomorphic": is_lambda_homomorphic(brace),
        "formula_holds": all(circ.mul(a, b) == G.prod(a, b, G.pow(G.commutator(b, a), 2)) for a in G for b in G),
    }
    ok = payload["circ_abelian"] and payload["circ_type"] == "Z3xZ3xZ3" and not payload["isomorphic_to_dot"]
    return payload, ok


def _rep_zp2_p3() -> tuple[dict, bool]:
    report = classify_zp2(3)
    agree = all(
        sorted(tuple(e["image"]) for e in es if e["status"] == "valid") == sorted(oracle_rrbs(3, *k))
        for k, es in report.entries.items()
    )
    payload = {**report.to_json(), "valid_count": len(report.valid()), "all_homomorphisms":
               report.all_valid_are_homomorphisms, "oracle_agrees": agree}
    return payload, agree and report.all_valid_are_homomorphisms


def _rep_matrix_z5() -> tuple[dict, bool]:
    report = classify_matrices(q=5)
    return report.to_json(), report.equal


def _rep_verbal_box2() -> tuple[dict, bool]:
    report = classify_verbal(2, 3, LISTED_FAMILIES, workers=1)
    extended = classify_verbal(2, 3, ALL_FAMILIES, workers=1)
    payload = report.to_json()
    payload["with_supplementary_families"] = {
        "unmatched_passing": [list(t) for t in extended.unmatched_passing],
        "failing_family_instances": extended.failing_family_instances,
    }
    return payload, report.clean


REPRODUCERS: dict[str, Callable[[], tuple[dict, bool]]] = {
    "s3-rb": _rep_s3_rb,
    "z4-rrb-brace": _rep_z4_rrb_brace,
    "heis3-n2": _rep_heis3_n2,
    "zp2-p3": _rep_zp2_p3,
    "matrix-z5": _rep_matrix_z5,
    "verbal-box2": _rep_verbal_box2,
}


def golden_path(example: str) -> Path:
    return Path(str(resources.files("rbforge") / "golden" / f"{example}.json"))


def canonical_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def cmd_reproduce(args) -> Result:
    payload, ok = REPRODUCERS[args.example]()
    path = golden_path(args.example)
    text = canonical_json(payload)
    if args.update_golden:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    golden = path.read_text(encoding="utf-8") if path.exists() else None
    matches = golden == text
    out = {"example": args.example, "assertions_hold": ok, "golden_match": matches, "report": payload}
    if golden is None:
        out["golden_missing"] = str(path)
    code = EXIT_OK if ok and matches else EXIT_VIOLATION
    return Result(out, code, summary=[f"{args.example}: assertions {'hold' if ok else 'FAIL'}; "
                                      f"golden {'matches' if matches else 'differs'}"])


# argument grammar


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="json", help="output format")
    p.add_argument("--workers", type=_positive, default=None,
                   help="worker processes (default: RBFORGE_WORKERS or 1)")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _weight(text: str) -> int:
    if text not in ("1", "-1", "+1"):
        raise argparse.ArgumentTypeError("weight must be 1 or -1")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rbforge", description="Rota-Baxter operators, skew braces and "
                                     "Yang-Baxter solutions on small finite groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p.set_defaults(fn=fn)
        _add_common(p)
        return p

    p = add("verify-rb", cmd_verify_rb, "check an RB operator file")
    p.add_argument("--op", required=True, help="operator JSON {group_spec, weight, image}")
    p.add_argument("--group", help="group spec, e.g. S3 or Z2xZ2")
    p.add_argument("--weight", type=_weight, help="override the file's weight")

    p = add("verify-rrb", cmd_verify_rrb, "check a relative RB operator file")
    p.add_argument("--op", required=True, help="operator JSON {space_spec, actor_spec, action, weight, image}")
    p.add_argument("--weight", type=_weight)

    p = add("enumerate-rb", cmd_enumerate_rb, "list every RB operator on a group")
    p.add_argument("--group", required=True)
    p.add_argument("--weight", type=_weight, default=1)
    p.add_argument("--bound", type=_positive, default=DEFAULT_NODE_BOUND, help="search node bound")

    p = add("enumerate-rrb", cmd_enumerate_rrb, "list every relative RB operator for an action")
    p.add_argument("--action", help="action JSON {actor, space, auts}")
    p.add_argument("--space", help="space group spec (with --actor)")
    p.add_argument("--actor", help="actor group spec (with --space)")
    p.add_argument("--action-index", type=int, default=0,
                   help="pick the i-th homomorphism actor -> Aut(space); 0 is the trivial action")
    p.add_argument("--weight", type=_weight, default=1)
    p.add_argument("--bound", type=_positive, default=DEFAULT_NODE_BOUND)

    p = add("lift", cmd_lift, "lift a relative RB operator to an RB operator on the semidirect product")
    p.add_argument("--op", required=True)

    p = add("project", cmd_project, "project an RB operator on a semidirect product to a relative one")
    p.add_argument("--op", required=True, help="JSON {action, image} with image indexed by h*|G| + a")

    p = add("brace-from-rb", cmd_brace_from_rb, "skew brace induced by an RB operator")
    p.add_argument("--op", required=True)
    p.add_argument("--group")
    p.add_argument("--weight", type=_weight)

    p = add("brace-from-rrb", cmd_brace_from_rrb, "skew brace induced by a relative RB operator")
    p.add_argument("--op", required=True)
    p.add_argument("--weight", type=_weight)

    for name, fn, help_ in (("postgroup", cmd_postgroup, "build a post-group and report its properties"),
                            ("lambda-check", cmd_lambda_check, "is a brace lambda-homomorphic (exit 1 if not)"),
                            ("ybe-from-brace", cmd_ybe_from_brace, "Yang-Baxter solution of a brace")):
        p = add(name, fn, help_)
        p.add_argument("--brace", help="brace JSON {n, dot_table, circ_table}")
        p.add_argument("--op", help="RB or relative RB operator JSON")
        p.add_argument("--group")
        p.add_argument("--weight", type=_weight)
        if name == "postgroup":
            mode = p.add_mutually_exclusive_group()
            mode.add_argument("--nilpotent", type=int, metavar="N", help="a |> b = a^-N b a^N")
            mode.add_argument("--conjugation", action="store_true", help="a |> b = a^-1 b a")
            mode.add_argument("--trivial", action="store_true", help="a |> b = b")

    p = add("ybe-check", cmd_ybe_check, "braid check of a finite solution")
    p.add_argument("--solution", required=True, help="JSON {n, f, g}")

    p = add("matrix-ybe", cmd_matrix_ybe, "2x2 matrix solutions: one matrix or an exhaustive sweep")
    p.add_argument("--matrix", help="a,b,c,d")
    p.add_argument("--q", type=int, help="work over Z_q")
    p.add_argument("--box", type=int, help="integer entries in [-box, box]")

    p = add("verbal-check", cmd_verbal_check, "braid check of a verbal solution")
    p.add_argument("--tuple", required=True, help="a,b,m,c,d,n for (x^a y^b [y,x]^m, x^c y^d [y,x]^n)")
    p.add_argument("--group", action="append", help="also check on this class-2 group (repeatable)")

    p = add("verbal-classify", cmd_verbal_classify, "classify verbal solutions in an exponent box")
    p.add_argument("--K", type=int, default=2, help="exponent box [-K, K]")
    p.add_argument("--U", type=int, default=3, help="family parameter sweep [-U, U]")
    p.add_argument("--families", choices=("listed", "all"), default="listed",
                   help="listed families only, or with the supplementary ones")

    p = add("zp2-classify", cmd_zp2_classify, "relative RB operators Z_{p^2} -> Z_p x Z_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--allow-large", action="store_true", help="permit p = 5")

    p = add("reproduce", cmd_reproduce, "replay a worked example and diff it against its golden file")
    p.add_argument("example", choices=REPRODUCE_IDS)
    p.add_argument("--update-golden", action="store_true", help="rewrite the golden file first")
    return parser


# output


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(result.payload)
    if fmt == "text":
        return "\n".join(result.summary or [json.dumps(result.payload, sort_keys=True)]) + "\n"
    if result.rows is None:
        raise UsageError("csv output is only available for list-shaped reports; use --format json")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(result.rows[0]) if result.rows else ["index", "image"],
                            lineterminator="\n")
    writer.writeheader()
    writer.writerows(result.rows)
    return buf.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        result = args.fn(args)
        sys.stdout.write(render(result, args.format))
        return result.code
    except (UsageError, GroupSpecError, InvalidActionError) as exc:
        print(f"rbforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidBraceError, InvalidPostGroupError, InvalidOperatorError) as exc:
        print(f"rbforge: violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except SearchBoundExceeded as exc:
        print(f"rbforge: search bound exceeded: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, KeyError) as exc:
        print(f"rbforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv: Sequence[str] | None = None) -> None:
    sys.exit(main(argv))


__all__ = ["main", "run", "build_parser", "render", "Result", "REPRODUCE_IDS", "REPRODUCERS", "golden_path"]
