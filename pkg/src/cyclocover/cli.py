"""Command-line front end.

    cyclocover solve  --problem P --method {construct,xp,brute} --graph FILE [--root R] [--json]
    cyclocover verify --problem P --graph FILE --solution FILE
    cyclocover gen    --family F --params ... [--seed S] [--out FILE]
    cyclocover bench  --trials T --n N --cmax C --seed S [--families ...] [--exact-upto K]

Exit codes: 0 ok / valid, 1 invalid or bound violation, 2 bad input,
3 exact solver limit hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import ceil
from pathlib import Path

import numpy as np

from .dispatch import CONSTRUCTIONS, construct
from .errors import InputError, LimitExceeded, MinDegreeTooSmall, TooManyEdges, VertexOutOfRange
from .graph_core import Graph, articulation_points, format_graph, parse_graph, structure_profile
from .instances import (
    FAMILIES,
    FamilySpec,
    base_graph_relabelled,
    gen_bouquet,
    gen_family,
    gen_k2k_plus_edge,
    gen_random_cyclomatic,
)
from .oracle import (
    XP_PROBLEMS,
    brute_force_min_path_system,
    brute_force_min_set,
    verify_path_system,
    verify_set,
    xp_solve,
)
from .solutions import PATH_MODES, PATH_PROBLEMS, SET_PROBLEMS, PathSystem, size_bound

PROBLEMS = SET_PROBLEMS + PATH_PROBLEMS

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _read_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc.strerror}") from None
    return parse_graph(text)


def _solve(problem: str, method: str, g: Graph, root: int | None):
    if method == "construct":
        return construct(problem, g, root)
    if root is not None:
        raise InputError("--root only applies to --method construct")
    if method == "brute":
        if problem in PATH_PROBLEMS:
            return brute_force_min_path_system(problem, g)
        return brute_force_min_set(problem, g)
    if problem not in XP_PROBLEMS:
        raise InputError(f"--method xp is not available for {problem}")
    return xp_solve(problem, g)


def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    sol = _solve(args.problem, args.method, g, args.root)
    if args.json:
        print(_dump(sol.to_json()))
    elif isinstance(sol, PathSystem):
        print(f"{args.problem}: {sol.count} paths (bound {sol.claimed_bound})")
        for p in sol.paths:
            print(" ".join(map(str, p)))
    else:
        print(f"{args.problem}: size {sol.size} (bound {sol.claimed_bound})")
        print(" ".join(map(str, sol.vertices)))
    return EXIT_OK


def _load_solution(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read solution file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"solution file is not JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("solution JSON must be an object")
    return data


def _int_list(values, what: str) -> list[int]:
    if not isinstance(values, list) or not all(type(v) is int for v in values):
        raise InputError(f"{what} must be a list of integers")
    return values


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    data = _load_solution(args.solution)
    if args.problem in PATH_PROBLEMS:
        raw = data.get("paths")
        if not isinstance(raw, list):
            raise InputError("path solution needs a 'paths' list")
        paths = tuple(tuple(_int_list(p, "each path")) for p in raw)
        for p in paths:
            for v in p:
                if not 0 <= v < g.n:
                    raise VertexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")
        report = verify_path_system(g, PathSystem(PATH_MODES[args.problem], paths, 0))
    elif args.problem in SET_PROBLEMS:
        report = verify_set(args.problem, g, _int_list(data.get("vertices"), "'vertices'"))
    else:
        raise InputError(f"unknown problem {args.problem!r}")
    print(_dump(report.to_json()))
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_gen(args) -> int:
    try:
        params = tuple(int(x) for x in args.params)
    except ValueError:
        raise InputError("--params takes integers") from None
    g = gen_family(FamilySpec(args.family, params, args.seed))
    if args.base:
        g = base_graph_relabelled(g)
    text = format_graph(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- bench


def stated_bound(problem: str, g: Graph, profile=None, has_cut=None) -> int:
    """The bound each construction must meet, written out independently of
    the constructions' own bookkeeping."""
    if g.n <= 2:
        # one or two vertices: the closed forms undershoot, use the exact values
        return size_bound(problem, g)
    p = profile or structure_profile(g)
    if has_cut is None:
        has_cut = bool(articulation_points(g))
    c, leaves = p.cyclomatic, p.leaf_count
    two_c = 2 * c if has_cut else 2 * c + 1
    mindeg2 = p.min_degree >= 2
    if problem in ("dim", "edim"):
        return two_c if mindeg2 else p.dim_lower_bound + 2 * c
    if problem == "mdim":
        return two_c if mindeg2 else leaves + 2 * c
    if problem == "doubly":
        return two_c
    if problem == "geodetic":
        return 2 * c + leaves if has_cut else 2 * c + 1
    if problem == "meg":
        return 3 * c + leaves if has_cut else 3 * c + leaves + 1
    if problem == "dem":
        return c + 1
    if problem == "ipec":
        return 3 * c + ceil((leaves + 1) / 2)
    return 2 * c + leaves


def trial_seeds(seed: int, trials: int) -> list[int]:
    """Per-trial seeds: child ``i`` of ``SeedSequence(seed)``."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(trials)]


def _exact(problem: str, g: Graph) -> int:
    if problem in PATH_PROBLEMS:
        return brute_force_min_path_system(problem, g).count
    if problem in XP_PROBLEMS:
        return xp_solve(problem, g).size
    return brute_force_min_set(problem, g).size


def bench_instance(g: Graph, exact_upto: int, verify_upto: int) -> tuple[dict, list[str]]:
    profile = structure_profile(g)
    has_cut = bool(articulation_points(g))
    results: dict[str, dict] = {}
    violations: list[str] = []
    for problem in CONSTRUCTIONS:
        try:
            sol = construct(problem, g)
        except MinDegreeTooSmall:
            continue
        size = sol.count if isinstance(sol, PathSystem) else sol.size
        bound = stated_bound(problem, g, profile, has_cut)
        rec = {"size": size, "bound": bound, "bound_holds": size <= bound}
        if not rec["bound_holds"]:
            violations.append(f"{problem}: size {size} > bound {bound}")
        if g.n <= verify_upto:
            if isinstance(sol, PathSystem):
                valid = verify_path_system(g, sol).valid
            else:
                valid = verify_set(problem, g, sol.vertices).valid
            rec["oracle_valid"] = valid
            if not valid:
                violations.append(f"{problem}: construction rejected by the verifier")
        else:
            rec["oracle_valid"] = None
        if g.n <= exact_upto:
            try:
                rec["exact"] = _exact(problem, g)
            except LimitExceeded:
                rec["exact"] = None
            if rec["exact"] is not None and rec["exact"] > size:
                violations.append(f"{problem}: exact {rec['exact']} above construction {size}")
        results[problem] = rec
    record = {
        "n": g.n,
        "m": g.m,
        "c": profile.cyclomatic,
        "leaves": profile.leaf_count,
        "problems": results,
    }
    return record, violations


def tight_family_checks() -> list[dict]:
    """Exact values on the extremal families that have a closed form."""
    out = []
    for k in (1, 2):
        for l in range(4):
            if k + l < 2:
                continue  # no cut vertex: the formulas do not apply
            g = gen_bouquet(k, 5, l)
            expected = {"geodetic": 2 * k + l, "ipp": 2 * k + l - 1}
            for problem, want in expected.items():
                got = _exact(problem, g)
                out.append({"family": "bouquet", "k": k, "l": l, "problem": problem,
                            "expected": want, "exact": got, "match": got == want})
    for k in (2, 3, 4):
        got = _exact("geodetic", gen_k2k_plus_edge(k))
        out.append({"family": "k2k_plus_edge", "k": k, "problem": "geodetic",
                    "expected": k, "exact": got, "match": got == k})
    return out


def run_bench(trials: int, n: int, cmax: int, seed: int, families=(), exact_upto: int = 0,
              verify_upto: int = 300) -> dict:
    records = []
    total_violations = 0
    max_ratio: dict[str, float] = {}
    for i, s in enumerate(trial_seeds(seed, trials)):
        rng = np.random.default_rng(s)
        regime = "raw" if i % 2 == 0 or cmax == 0 else "base"
        # the base regime needs a cycle, otherwise it collapses to one vertex
        c = int(rng.integers(0 if regime == "raw" else 1, cmax + 1))
        c = min(c, (n - 1) * (n - 2) // 2)
        try:
            g = gen_random_cyclomatic(n, c, s)
        except TooManyEdges:
            continue
        if regime == "base":
            g = base_graph_relabelled(g)
        record, violations = bench_instance(g, exact_upto, verify_upto)
        record.update({"instance": i, "seed": s, "regime": regime, "violations": violations})
        total_violations += len(violations)
        for problem, rec in record["problems"].items():
            if rec["bound"]:
                ratio = rec["size"] / rec["bound"]
                max_ratio[problem] = max(max_ratio.get(problem, 0.0), round(ratio, 6))
        records.append(record)
    report = {"records": records}
    summary = {"violations": total_violations, "max_ratio": max_ratio, "trials": len(records)}
    if families:
        tight = tight_family_checks() if set(families) & {"bouquet", "k2k_plus_edge"} else []
        tight = [t for t in tight if t["family"] in families]
        report["tight"] = tight
        summary["tight_mismatches"] = sum(not t["match"] for t in tight)
    report["summary"] = summary
    return report


def cmd_bench(args) -> int:
    unknown = [f for f in args.families if f not in FAMILIES]
    if unknown:
        raise InputError(f"unknown families {unknown}")
    if args.n < 1 or args.trials < 0 or args.cmax < 0:
        raise InputError("need --n >= 1, --trials >= 0 and --cmax >= 0")
    report = run_bench(args.trials, args.n, args.cmax, args.seed, tuple(args.families),
                       args.exact_upto, args.verify_upto)
    print(_dump(report))
    return EXIT_OK if report["summary"]["violations"] == 0 else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclocover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="build or search for a solution")
    p.add_argument("--problem", required=True, choices=PROBLEMS)
    p.add_argument("--method", default="construct", choices=("construct", "xp", "brute"))
    p.add_argument("--graph", required=True)
    p.add_argument("--root", type=int)
    p.add_argument("--json", action="store_true", help="print the solution as JSON")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution JSON file")
    p.add_argument("--problem", required=True, choices=PROBLEMS)
    p.add_argument("--graph", required=True)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a generated graph in edge-list format")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--params", nargs="*", default=[])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--base", action="store_true", help="emit the base graph instead")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="check every construction on random graphs")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--n", type=int, default=25)
    p.add_argument("--cmax", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--families", nargs="*", default=[])
    p.add_argument("--exact-upto", type=int, default=0)
    p.add_argument("--verify-upto", type=int, default=300)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LimitExceeded as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
