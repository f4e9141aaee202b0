"""Command-line entry point exposing all computations.

Exit codes: 0 success, 1 domain error, 2 internal-consistency error,
64 usage error.  JSON output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import ConsistencyError, DomainError
from .haglund import check_pair, scan
from .macdonald import build_matrices, k_coeff
from .oracle import (
    check_pairing_normalization,
    check_Qn_plethysm,
    gram_schmidt_P,
    orthogonality_audit,
    pair_equals_qtrational,
)
from .partitions import Partition, partition, partitions_of
from .reductions import classify_bz, decompose_irreducible, f_stat, f_stat_closed

_MATRIX_CHOICES = ("k", "k1", "k1inv", "k2", "k2inv")
_BUNDLE_FIELDS = {
    "k": "kostka",
    "k1": "k1",
    "k1inv": "k1_inv",
    "k2": "k2",
    "k2inv": "k2_inv",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _partition_arg(text: str) -> Partition:
    try:
        if not text.strip():
            return ()
        return partition(int(p) for p in text.split(","))
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _cache_dir(args) -> str | None:
    if args.cache_dir is not None:
        return args.cache_dir
    return os.environ.get("QTKOSTKA_CACHE_DIR", "cache")


def oracle_verify_degree(n: int) -> dict:
    """Pass/fail results for one degree of the oracle cross-check."""
    k1 = build_matrices(n).k1
    built = gram_schmidt_P(n)
    parts = partitions_of(n)
    k1_match = all(
        pair_equals_qtrational(
            built[lam].coefficient_pair(mu), k1.entry(lam, mu)
        )
        for lam in parts
        for mu in parts
    )
    return {
        "n": n,
        "k1_match": k1_match,
        "orthogonality": orthogonality_audit(n),
        "normalization": check_pairing_normalization(n),
        "qn_plethysm": check_Qn_plethysm(n),
    }


def _cmd_kcoeff(args) -> int:
    value = k_coeff(args.lam, args.mu)
    if args.format == "latex":
        sys.stdout.write(value.latex() + "\n")
    elif args.format == "pretty":
        sys.stdout.write(f"k({list(args.lam)}, {list(args.mu)}) = {value}\n")
    else:
        _emit_json(
            {"lambda": list(args.lam), "mu": list(args.mu), "k": value.to_obj()}
        )
    return 0


def _cmd_matrix(args) -> int:
    bundle = build_matrices(args.n, cache_dir=_cache_dir(args))
    mat = getattr(bundle, _BUNDLE_FIELDS[args.which])
    if args.format == "latex":
        sys.stdout.write(mat.latex() + "\n")
    elif args.format == "pretty":
        for lam, row in zip(mat.index, mat.entries):
            rendered = ", ".join(str(e) for e in row)
            sys.stdout.write(f"{list(lam)}: [{rendered}]\n")
    else:
        _emit_json(mat.to_obj(args.which))
    return 0


def _cmd_reduce(args) -> int:
    tree = decompose_irreducible(args.lam, args.mu)
    leaves = [
        leaf for leaf in tree.leaves() if leaf.kind == "leaf"
    ]
    tags = {
        (leaf.lam, leaf.mu): classify_bz(leaf.lam, leaf.mu) for leaf in leaves
    }
    if args.format in ("pretty", "latex"):
        sys.stdout.write(tree.ascii_art() + "\n")
        for (lam, mu), cls in tags.items():
            sys.stdout.write(f"leaf {list(lam)} / {list(mu)}: {cls.tag}\n")
    else:
        obj = tree.to_obj()
        obj["leaf_classes"] = [
            {
                "lambda": list(lam),
                "mu": list(mu),
                "tag": cls.tag,
                "m": cls.m,
                "n": cls.n,
            }
            for (lam, mu), cls in tags.items()
        ]
        _emit_json(obj)
    return 0


def _cmd_haglund(args) -> int:
    verdict = check_pair(args.lam, args.mu, args.k)
    if args.format == "pretty":
        sys.stdout.write(
            f"lambda={list(verdict.lam)} mu={list(verdict.mu)} k={verdict.k}\n"
            f"quotient = {verdict.quotient}\n"
            f"nonnegative: {verdict.is_nonnegative}  "
            f"coverage: {verdict.coverage}  route: {verdict.route}\n"
        )
    else:
        _emit_json(verdict.to_obj())
    return 0


def _cmd_scan(args) -> int:
    report = scan(args.max_n, args.max_k, jobs=args.jobs)
    obj = report.to_obj()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
            fh.write("\n")
        _emit_json({"out": args.out, "summary": obj["summary"]})
    else:
        _emit_json(obj)
    return 0 if not report.violations else 2


def _cmd_oracle_verify(args) -> int:
    results = [oracle_verify_degree(n) for n in range(1, args.max_n + 1)]
    ok = all(
        all(v for key, v in r.items() if key != "n") for r in results
    )
    if args.format == "json":
        _emit_json({"degrees": results, "all_passed": ok})
    else:
        for r in results:
            line = f"n={r['n']}:"
            for key in ("k1_match", "orthogonality", "normalization", "qn_plethysm"):
                line += f" {key}={'PASS' if r[key] else 'FAIL'}"
            sys.stdout.write(line + "\n")
        sys.stdout.write(("all degrees PASS" if ok else "FAILURES found") + "\n")
    return 0 if ok else 2


def _cmd_fstat(args) -> int:
    direct = f_stat(args.mu)
    closed = f_stat_closed(args.mu)
    if direct != closed:
        raise ConsistencyError(f"f closed form mismatch for {args.mu}")
    if args.format == "latex":
        sys.stdout.write(direct.latex() + "\n")
    elif args.format == "pretty":
        sys.stdout.write(f"f({list(args.mu)}) = {direct}\n")
    else:
        _emit_json({"mu": list(args.mu), "f": direct.to_obj()})
    return 0


def _add_common_flags(parser: argparse.ArgumentParser, top: bool) -> None:
    # on subparsers the defaults are suppressed so a flag given before
    # the subcommand is not clobbered by the subparser's default
    kw = {} if top else {"default": argparse.SUPPRESS}
    parser.add_argument(
        "--format",
        choices=("json", "latex", "pretty"),
        help="output format (default json)",
        **({"default": "json"} if top else kw),
    )
    parser.add_argument(
        "--cache-dir",
        help="matrix cache directory (default $QTKOSTKA_CACHE_DIR or ./cache)",
        **({"default": None} if top else kw),
    )
    parser.add_argument(
        "--jobs",
        type=int,
        help="worker processes for scans; 0 means all cores",
        **({"default": 1} if top else kw),
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="qtkostka", description=__doc__)
    _add_common_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kcoeff", help="integral-form coefficient k(lambda, mu)")
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.set_defaults(fn=_cmd_kcoeff)

    p = sub.add_parser("matrix", help="emit a transition matrix for degree n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--which", choices=_MATRIX_CHOICES, required=True)
    p.set_defaults(fn=_cmd_matrix)

    p = sub.add_parser("reduce", help="decomposition tree of a pair")
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("haglund", help="dual Haglund verdict for one pair")
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=_cmd_haglund)

    p = sub.add_parser("scan", help="batch positivity scan")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--out", default=None, help="write the report to a file")
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("oracle-verify", help="Gram-Schmidt oracle cross-check")
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(fn=_cmd_oracle_verify)

    p = sub.add_parser("fstat", help="the arm/leg generating statistic f_mu")
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.set_defaults(fn=_cmd_fstat)

    for action in sub.choices.values():
        _add_common_flags(action, top=False)
    return parser


def dispatch(argv: list[str]) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return 1
    except ConsistencyError as exc:
        sys.stderr.write(f"internal consistency error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
