"""Command line front end.

Subcommands: chain, verify, eval, euler, closure, factorize.  Output on
stdout is byte-stable for a given invocation; diagnostics (timings,
error messages) go to stderr.  Exit codes: 0 success, 1 verification
mismatch, 2 usage or input error, 3 scale guard trip.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import chain as chainmod
from . import partitions
from . import permutations as perm
from . import saturated
from .permutations import ScaleGuardError
from .rigid import (
    RigidCommutator,
    commutator_mask,
    evaluate_expression,
    format_commutator,
)

__all__ = ["main", "build_parser"]


def _jobs_default() -> int:
    try:
        return max(1, int(os.environ.get("RIGIDCOMM_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rigidcomm", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chain", help="run the normalizer chain and print its table")
    c.add_argument("--n", type=int, help="rank (single run)")
    c.add_argument("--n-range", help="inclusive rank range like 3..15 (matrix of indices)")
    c.add_argument("--steps", type=int, help="step budget (default: run to the full group; 14 for --n-range)")
    c.add_argument("--format", choices=("csv", "json", "md"), default="md")
    c.add_argument("--jobs", type=int, default=None, help="parallel scan shards (default $RIGIDCOMM_JOBS or 1)")
    c.add_argument("--timings", action="store_true", help="print per-step seconds to stderr")
    c.add_argument("--out", help="write to this file instead of stdout")

    v = sub.add_parser("verify", help="run the self-check suite at a given rank")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--sym-brute", action="store_true",
                   help="also compare chain terms against exhaustive symmetric-group normalizers (rank <= 3)")
    v.add_argument("--jobs", type=int, default=None)

    e = sub.add_parser("eval", help="evaluate a commutator expression")
    e.add_argument("expr", help='e.g. "[[6,5,4,3],[2,1]]" or "6^{2,1}"')
    e.add_argument("--n", type=int, help="ambient rank (default: largest index used)")
    e.add_argument("--perm", action="store_true", help="also print the permutation in cycle form")

    u = sub.add_parser("euler", help="print the distinct-part partition count table")
    u.add_argument("--max-j", type=int, default=14)
    u.add_argument("--format", choices=("csv", "json", "md"), default="md")
    u.add_argument("--out", help="write to this file instead of stdout")

    k = sub.add_parser("closure", help="normal closure of a serialized commutator set")
    k.add_argument("set", help="JSON file with the seed set")
    k.add_argument("--within", help="JSON file with the ambient set (default: all rigid commutators)")
    k.add_argument("--out", help="write to this file instead of stdout")

    f = sub.add_parser("factorize", help="factor a serialized permutation over rigid commutators")
    f.add_argument("perm", help='JSON file {"n": ..., "images": [...]} with 1-based images')
    f.add_argument("--set", dest="set_path", help="JSON set file for the membership verdict")
    return p


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ── table layouts ────────────────────────────────────────────────────────────

def _dims_desc(step: chainmod.ChainStep) -> tuple[int, ...]:
    return tuple(reversed(step.level_dims))


def _chain_md(report: chainmod.ChainReport) -> str:
    n = report.n
    lines = [
        f"| i | dims (levels {n}..1) | log2 order | log2 index |",
        "|---|---|---|---|",
    ]
    for s in report.steps:
        dims = ", ".join(str(d) for d in _dims_desc(s))
        lines.append(f"| {s.i} | {dims} | {s.log2_order} | {s.index_log2} |")
    return "\n".join(lines) + "\n"


def _chain_csv(report: chainmod.ChainReport) -> str:
    n = report.n
    header = ["i"] + [f"dim_{j}" for j in range(n, 0, -1)] + ["log2_order", "index_log2"]
    lines = [",".join(header)]
    for s in report.steps:
        row = [s.i, *_dims_desc(s), s.log2_order, s.index_log2]
        lines.append(",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def _matrix_rows(n_lo: int, n_hi: int, steps: int, jobs: int):
    rows = []
    for n in range(n_lo, n_hi + 1):
        report = chainmod.run_chain(n, max_steps=steps, jobs=jobs)
        rows.append((n, report.index_sequence(steps)))
    return rows


def _matrix_md(rows, steps: int) -> str:
    header = "| n | " + " | ".join(f"i={i}" for i in range(1, steps + 1)) + " |"
    sep = "|---" * (steps + 1) + "|"
    lines = [header, sep]
    for n, seq in rows:
        lines.append("| " + " | ".join([str(n), *[str(v) for v in seq]]) + " |")
    return "\n".join(lines) + "\n"


def _matrix_csv(rows, steps: int) -> str:
    lines = [",".join(["n"] + [f"i{i}" for i in range(1, steps + 1)])]
    for n, seq in rows:
        lines.append(",".join(str(v) for v in [n, *seq]))
    return "\n".join(lines) + "\n"


def _euler_md(table: partitions.PartitionTable) -> str:
    js = list(range(len(table.b)))
    lines = [
        "| j | " + " | ".join(str(j) for j in js) + " |",
        "|---" * (len(js) + 1) + "|",
        "| b_j | " + " | ".join(str(v) for v in table.b) + " |",
        "| a_j | " + " | ".join(str(v) for v in table.a) + " |",
    ]
    return "\n".join(lines) + "\n"


def _euler_csv(table: partitions.PartitionTable) -> str:
    js = list(range(len(table.b)))
    lines = [
        ",".join(["j"] + [str(j) for j in js]),
        ",".join(["b"] + [str(v) for v in table.b]),
        ",".join(["a"] + [str(v) for v in table.a]),
    ]
    return "\n".join(lines) + "\n"


# ── subcommands ──────────────────────────────────────────────────────────────

def _cmd_chain(args) -> int:
    jobs = args.jobs if args.jobs is not None else _jobs_default()
    if (args.n is None) == (args.n_range is None):
        print("chain: exactly one of --n / --n-range is required", file=sys.stderr)
        return 2
    if args.n_range:
        try:
            lo_s, hi_s = args.n_range.split("..")
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            print(f"chain: bad --n-range {args.n_range!r}, expected like 3..15", file=sys.stderr)
            return 2
        steps = args.steps if args.steps is not None else 14
        rows = _matrix_rows(lo, hi, steps, jobs)
        if args.format == "csv":
            text = _matrix_csv(rows, steps)
        elif args.format == "md":
            text = _matrix_md(rows, steps)
        else:
            import json as _json
            text = _json.dumps(
                {"steps": steps, "rows": {str(n): list(seq) for n, seq in rows}},
                indent=2,
            ) + "\n"
        _emit(text, args.out)
        return 0
    report = chainmod.run_chain(args.n, max_steps=args.steps, jobs=jobs)
    if args.timings:
        for s in report.steps:
            print(f"step {s.i}: {s.seconds:.4f}s", file=sys.stderr)
    if args.format == "csv":
        text = _chain_csv(report)
    elif args.format == "md":
        text = _chain_md(report)
    else:
        text = report.to_json(indent=2) + "\n"
    _emit(text, args.out)
    return 0


def _fail(name: str, detail: str) -> int:
    print(f"fail: {name}: {detail}")
    return 1


def _cmd_verify(args) -> int:
    n = args.n
    jobs = args.jobs if args.jobs is not None else _jobs_default()

    # expand agrees with the mask product on all pairs (exhaustive, capped at 8)
    m = min(n, 8)
    perms = [perm.expand(RigidCommutator(x, m)) for x in range(1 << m)]
    for x in range(1 << m):
        for y in range(1 << m):
            lhs = perm.perm_commutator(perms[x], perms[y])
            if lhs != perms[commutator_mask(x, y)]:
                return _fail(
                    "oracle-equivalence",
                    f"masks {x} and {y} disagree at rank {m}",
                )
    print(f"ok: oracle-equivalence (exhaustive pairs, rank {m})")

    # chain terms match the closed-form prediction
    report = chainmod.run_chain(n, jobs=jobs)
    for i, good in chainmod.verify_theoretical(report):
        if not good:
            return _fail("chain-vs-closed-form", f"step {i} differs at rank {n}")
    print(f"ok: chain-vs-closed-form (steps 0..{max(n - 2, 0)}, rank {n})")

    checks = perm.translation_checks(min(n, perm.EXPAND_MAX_RANK))
    bad = [k for k, v in checks.items() if v is False]
    if bad:
        return _fail("translation-checks", ", ".join(bad))
    print(f"ok: translation-checks (rank {min(n, perm.EXPAND_MAX_RANK)})")

    if args.sym_brute:
        if n > perm.BRUTE_MAX_RANK:
            print(
                f"scale guard: --sym-brute needs rank <= {perm.BRUTE_MAX_RANK}",
                file=sys.stderr,
            )
            return 3
        current = chainmod.translation_normalizer_set(n)
        for i in range(report.terminated_at + 1):
            masks = report.member_masks_at(i)
            elements = perm.generate_group(
                [perm.expand(RigidCommutator(x, n)) for x in masks]
            )
            brute = perm.brute_normalizer_in_sym(elements, n)
            stepped = saturated.normalizing_step(
                saturated.SaturatedSet(n, masks), jobs=jobs
            )
            spanned = perm.generate_group(
                [perm.expand(RigidCommutator(x, n)) for x in stepped.masks]
            )
            if spanned != brute:
                return _fail("sym-brute", f"term {i} normalizer differs at rank {n}")
        print(f"ok: sym-brute (all {report.terminated_at + 1} terms, rank {n})")

    print("all checks passed")
    return 0


def _cmd_eval(args) -> int:
    try:
        c = evaluate_expression(args.expr, args.n)
    except ValueError as exc:
        print(f"eval: {exc}", file=sys.stderr)
        return 2
    print(format_commutator(c))
    if args.perm:
        print(perm.expand(c).cycle_string())
    return 0


def _cmd_euler(args) -> int:
    if args.max_j < 0:
        print("euler: --max-j must be >= 0", file=sys.stderr)
        return 2
    table = partitions.euler_table(args.max_j)
    if args.format == "csv":
        text = _euler_csv(table)
    elif args.format == "md":
        text = _euler_md(table)
    else:
        import json as _json
        text = _json.dumps({"b": list(table.b), "a": list(table.a)}, indent=2) + "\n"
    _emit(text, args.out)
    return 0


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _cmd_closure(args) -> int:
    try:
        n, seed = saturated.members_from_json(_read(args.set))
        A = saturated.saturate(seed, n)
        if args.within:
            B = saturated.SaturatedSet.from_json(_read(args.within))
        else:
            B = saturated.full_rigid_set(n)
        result = saturated.normal_closure(A, B)
    except (ValueError, OSError) as exc:
        print(f"closure: {exc}", file=sys.stderr)
        return 2
    _emit(result.to_json(indent=2) + "\n", args.out)
    return 0


def _cmd_factorize(args) -> int:
    try:
        g = perm.perm_from_json(_read(args.perm))
        within = None
        if args.set_path:
            within = saturated.SaturatedSet.from_json(_read(args.set_path))
        fac = saturated.factorize(g, within)
    except (ValueError, OSError) as exc:
        print(f"factorize: {exc}", file=sys.stderr)
        return 2
    print(f"factors: {fac}")
    if within is not None:
        print(f"member: {'true' if fac.member else 'false'}")
    return 0


_HANDLERS = {
    "chain": _cmd_chain,
    "verify": _cmd_verify,
    "eval": _cmd_eval,
    "euler": _cmd_euler,
    "closure": _cmd_closure,
    "factorize": _cmd_factorize,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ScaleGuardError as exc:
        print(f"scale guard: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
