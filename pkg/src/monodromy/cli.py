"""Command-line front end.

Reports are JSON on stdout; logs go to stderr.  Exit codes: 0 success,
1 unparseable input, 2 input that parses but is invalid, 3 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections import Counter

from .cover import (
    BranchData,
    BranchDataError,
    InvariantViolation,
    compose_winding_covers,
    cover_invariants,
    enumerate_branch_data,
    search_tower_piece,
)
from .obstructions import suspension_manifold_verdict, wilder_obstruction
from .perm import GroupTooLarge, PermutationError
from .simplicial import ComplexError, SimplicialComplex, homology, suspension
from .snf import SmithVerificationError
from .surfaces import normalization_surface

log = logging.getLogger("monodromy")

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3
SWEEP_BUDGET = 5
TOWER_LIMIT = 6


class ParseFailure(Exception):
    pass


class InvalidInput(Exception):
    pass


def verdict(claim: str, ok: bool | None, **witness) -> dict:
    status = "inconclusive" if ok is None else ("verified" if ok else "refuted")
    return {"claim": claim, "status": status, "witness": witness}


def report(command: str, input_echo, results: dict, verdicts: list[dict]) -> dict:
    return {"command": command, "input": input_echo, "results": results, "verdicts": verdicts}


def _read_json(source: str):
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(str(exc)) from exc


def load_branch_data(source: str) -> BranchData:
    payload = _read_json(source)
    try:
        return BranchData.from_json(payload)
    except (KeyError, TypeError, ValueError) as exc:
        # PermutationError is a ValueError: malformed cycles are parse failures
        raise ParseFailure(f"bad branch data: {exc}") from exc


def load_complex(source: str) -> SimplicialComplex:
    payload = _read_json(source)
    try:
        return SimplicialComplex.from_json(payload)
    except (KeyError, TypeError, ComplexError) as exc:
        raise ParseFailure(f"bad complex: {exc}") from exc


def cmd_invariants(args) -> dict:
    data = load_branch_data(args.input)
    inv = cover_invariants(data)
    k, chi = inv.branch_count, inv.chi_normalization
    verdicts = [
        verdict("chi_normalization even and <= 2", chi % 2 == 0 and chi <= 2, chi_normalization=chi),
    ]
    if k >= 4:
        verdicts.append(verdict("branch_count >= 4 implies chi_normalization <= 0", chi <= 0,
                                branch_count=k, chi_normalization=chi))
    if k <= 2:
        verdicts.append(verdict("branch_count <= 2 implies normal cover", inv.is_normal,
                                branch_count=k, is_normal=inv.is_normal))
    return report("invariants", data.to_json(), inv.to_json(), verdicts)


def theorem1_report(inner: int, outer: int) -> dict:
    if inner < 2 or outer < 2:
        raise InvalidInput(f"winding degrees must be at least 2, got {inner}, {outer}")
    data = compose_winding_covers(inner, outer)
    inv = cover_invariants(data)
    x_f = normalization_surface(data)
    surface_h = homology(x_f)
    manifold = suspension_manifold_verdict(x_f)
    rho2 = wilder_obstruction(x_f)
    results = {
        "branch_data": data.to_json(),
        "invariants": inv.to_json(),
        "normalization_surface": {
            "f_vector": x_f.f_vector(),
            "euler_characteristic": x_f.euler_characteristic(),
            "homology": surface_h.to_json(),
        },
        "suspension_verdict": manifold.value,
        "rho2": rho2,
    }
    verdicts = [
        verdict("branch_count == 4", inv.branch_count == 4, branch_count=inv.branch_count),
        verdict("genus_normalization >= 1", inv.genus_normalization >= 1,
                genus_normalization=inv.genus_normalization,
                chi_formula=inv.chi_normalization,
                chi_surface=x_f.euler_characteristic()),
        verdict("suspension of X_f is not a manifold", manifold.value == "not_manifold",
                h1_rank=surface_h.betti[1]),
        verdict("rho2 at cone point > 0", rho2 > 0, rho2=rho2),
    ]
    return report("theorem1", {"inner_degree": inner, "outer_degree": outer}, results, verdicts)


def cmd_theorem1(args) -> dict:
    return theorem1_report(args.inner_degree, args.outer_degree)


def sweep_report(n_max: int, k_max: int, override_budget: bool = False) -> dict:
    if n_max < 2 or k_max < 2:
        raise InvalidInput("sweep needs n_max >= 2 and k_max >= 2")
    if (n_max > SWEEP_BUDGET or k_max > SWEEP_BUDGET) and not override_budget:
        raise InvalidInput(
            f"sweep beyond n_max={SWEEP_BUDGET}, k_max={SWEEP_BUDGET} needs --override-budget"
        )
    buckets: Counter = Counter()
    violations = {"normal_if_k_le_2": [], "chi_le_0_if_k_ge_4": [], "chi_even_le_2": []}
    total = 0
    for data in enumerate_branch_data(n_max, k_max, allow_large=override_budget):
        inv = cover_invariants(data)
        total += 1
        k, chi = inv.branch_count, inv.chi_normalization
        buckets[(inv.degree, k, inv.genus_normalization)] += 1
        broken = [
            key for key, bad in (
                ("normal_if_k_le_2", k <= 2 and not inv.is_normal),
                ("chi_le_0_if_k_ge_4", k >= 4 and chi > 0),
                ("chi_even_le_2", chi % 2 or chi > 2),
            ) if bad
        ]
        for key in broken:
            violations[key].append({"branch_data": data.to_json(), "invariants": inv.to_json()})
    counts = [
        {"degree": n, "branch_count": k, "genus": g, "count": c}
        for (n, k, g), c in sorted(buckets.items())
    ]
    claims = {
        "normal_if_k_le_2": "branch_count <= 2 implies normal cover",
        "chi_le_0_if_k_ge_4": "branch_count >= 4 implies chi_normalization <= 0",
        "chi_even_le_2": "chi_normalization even and <= 2",
    }
    verdicts = []
    for key, claim in claims.items():
        bad = sorted(violations[key], key=lambda w: json.dumps(w, sort_keys=True))
        verdicts.append(verdict(claim, not bad, checked=total, violations=len(bad),
                                first_violation=bad[0] if bad else None))
    results = {"total": total, "counts": counts}
    return report("sweep", {"n_max": n_max, "k_max": k_max}, results, verdicts)


def cmd_sweep(args) -> dict:
    return sweep_report(args.n_max, args.k_max, args.override_budget)


def tower_report(n_max: int) -> dict:
    if not 2 <= n_max <= TOWER_LIMIT:
        raise InvalidInput(f"tower search needs 2 <= n_max <= {TOWER_LIMIT}")
    profiles = [
        ("normal_no_degree3", False, True),
        ("nonnormal_with_degree3", True, False),
    ]
    results, verdicts = {}, []
    for name, want3, want_normal in profiles:
        found = search_tower_piece(n_max, want3, want_normal)
        entry = {"want_degree3": want3, "want_normal": want_normal, "found": found is not None}
        if found is not None:
            entry["branch_data"] = found.to_json()
            entry["invariants"] = cover_invariants(found).to_json()
        results[name] = entry
        verdicts.append(verdict(
            f"torus-domain piece with local degree 3 {'present' if want3 else 'absent'}"
            f" and {'normal' if want_normal else 'non-normal'} exists up to degree {n_max}",
            found is not None or None,
            degree=found.degree if found is not None else None,
        ))
    return report("tower-search", {"n_max": n_max}, results, verdicts)


def cmd_tower_search(args) -> dict:
    return tower_report(args.n_max)


def cmd_homology(args) -> dict:
    c = load_complex(args.input)
    h = homology(c)
    results = {"f_vector": c.f_vector(), "euler_characteristic": c.euler_characteristic(),
               **h.to_json()}
    return report("homology", c.to_json(), results, [])


def cmd_suspend(args) -> dict:
    c = load_complex(args.input)
    s = suspension(c)
    results = {"complex": s.to_json(), "cone_points": list(s.cone_points),
               "homology": homology(s).to_json()}
    return report("suspend", c.to_json(), results, [])


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monodromy", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action=argparse.BooleanOptionalAction, default=True,
                        help="emit the JSON report (default); --no-json prints a summary")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", help="cover invariants of branch data")
    p.add_argument("--input", default="-", help="branch data JSON file, or - for stdin")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("theorem1", help="composite of two winding maps, full pipeline")
    p.add_argument("inner_degree", type=int)
    p.add_argument("outer_degree", type=int)
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("sweep", help="exhaustive check of the genus/normality claims")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--override-budget", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("tower-search", help="find torus-domain covers for both tower profiles")
    p.add_argument("--n-max", type=int, default=3)
    p.set_defaults(func=cmd_tower_search)

    p = sub.add_parser("homology", help="integral homology of a complex")
    p.add_argument("--input", default="-")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("suspend", help="suspension of a complex and its homology")
    p.add_argument("--input", default="-")
    p.set_defaults(func=cmd_suspend)
    return parser


def _summary(rep: dict) -> str:
    lines = [f"command: {rep['command']}"]
    for v in rep["verdicts"]:
        lines.append(f"  [{v['status']}] {v['claim']}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    try:
        rep = args.func(args)
    except ParseFailure as exc:
        log.error("parse failure: %s", exc)
        return EXIT_PARSE
    except BranchDataError as exc:
        log.error("invalid branch data (%s): %s", exc.reason, exc)
        return EXIT_INVALID
    except (InvalidInput, GroupTooLarge, ComplexError) as exc:
        log.error("invalid input: %s", exc)
        return EXIT_INVALID
    except (InvariantViolation, SmithVerificationError, AssertionError) as exc:
        log.error("internal consistency failure: %s", exc)
        return EXIT_INTERNAL
    except PermutationError as exc:
        log.error("parse failure: %s", exc)
        return EXIT_PARSE
    log.info("%s finished in %.2fs", args.command, time.perf_counter() - start)
    if args.json:
        sys.stdout.write(json.dumps(rep, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_summary(rep) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
