"""Dual Haglund positivity checker and batch scanner.

For a pair (lambda, mu) and k >= 0 the check substitutes q := t^k into
the integral-form coefficient, divides by (1-t)^|lambda| and inspects
the quotient.  Route selection follows cost: multiplicity-one fast
paths, then the row/column closed-form quotients, then the reduction
tree with pipeline leaves; every route is cross-checked by tests.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from multiprocessing import get_context

from .errors import DomainError
from .macdonald import build_matrices, kostka_foulkes_hook_form
from .partitions import (
    Partition,
    cells,
    conjugate,
    diagram_stats,
    dominance_leq,
    n_stat,
    partition,
    partitions_of,
)
from .qt import (
    QtPolynomial,
    divide_by_one_minus_t_power,
    is_nonneg_polynomial,
    t_number,
)
from .reductions import decompose_irreducible, fast_k
from .tableaux import kostka_number

COVERAGE_MULT_ONE = "theorem_mult_one"
COVERAGE_ROW_OR_COL = "theorem_row_or_col"
COVERAGE_CONJECTURE = "conjecture_only"


@dataclass(frozen=True)
class HaglundVerdict:
    """Outcome of one (lambda, mu, k) positivity check."""

    lam: Partition
    mu: Partition
    k: int
    quotient: QtPolynomial | None
    is_polynomial: bool
    is_nonnegative: bool
    is_zero: bool
    coverage: str
    route: str

    def to_obj(self) -> dict:
        return {
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "k": self.k,
            "quotient": None if self.quotient is None else self.quotient.to_obj(),
            "is_polynomial": self.is_polynomial,
            "is_nonnegative": self.is_nonnegative,
            "is_zero": self.is_zero,
            "coverage": self.coverage,
            "route": self.route,
        }


def fast_row_quotient(n: int, mu: Partition, k: int) -> QtPolynomial:
    """Quotient for lambda = (n): t^n(mu) prod [k(coarm+1)-coleg]_t, or 0."""
    mu = partition(mu)
    if sum(mu) != n:
        raise DomainError(f"|{mu}| != {n}")
    if k < 0:
        raise DomainError(f"negative substitution power {k}")
    if len(mu) > k:
        return QtPolynomial.zero()
    result = QtPolynomial.monomial(1, 0, n_stat(mu))
    for x in cells(mu):
        s = diagram_stats(mu, x)
        result = result * t_number(k * (s.coarm + 1) - s.coleg)
    return result


def fast_column_quotient(lam: Partition, n: int, k: int) -> QtPolynomial:
    """Quotient for mu = (1^n): K(lambda,1^n)(t) prod [k-content]_t, or 0."""
    lam = partition(lam)
    if sum(lam) != n:
        raise DomainError(f"|{lam}| != {n}")
    if k < 0:
        raise DomainError(f"negative substitution power {k}")
    if lam and lam[0] > k:
        return QtPolynomial.zero()
    result = kostka_foulkes_hook_form(lam)
    for x in cells(lam):
        s = diagram_stats(lam, x)
        result = result * t_number(k - s.content)
    return result


def _coverage(lam: Partition, mu: Partition) -> str:
    if len(lam) <= 1 or mu == (1,) * len(mu):
        return COVERAGE_ROW_OR_COL
    if (
        kostka_number(lam, mu) == 1
        or kostka_number(conjugate(mu), conjugate(lam)) == 1
    ):
        return COVERAGE_MULT_ONE
    return COVERAGE_CONJECTURE


def generic_quotient(
    lam: Partition, mu: Partition, k: int
) -> tuple[QtPolynomial | None, bool]:
    """Pipeline route: reduction tree with k_coeff leaves, then divide."""
    tree = decompose_irreducible(lam, mu)
    substituted = tree.replay().substitute_q_power(k)
    result = divide_by_one_minus_t_power(substituted, sum(lam))
    return result.quotient, result.exact


def check_pair(lam: Partition, mu: Partition, k: int) -> HaglundVerdict:
    """Verdict for one pair, via the cheapest applicable route."""
    lam = partition(lam)
    mu = partition(mu)
    if sum(lam) != sum(mu):
        raise DomainError(f"|{lam}| != |{mu}|")
    if k < 0:
        raise DomainError(f"negative substitution power {k}")
    if not dominance_leq(mu, lam):
        # K2 vanishes above the diagonal, so the quotient is identically 0
        return HaglundVerdict(
            lam, mu, k, QtPolynomial.zero(), True, True, True,
            COVERAGE_CONJECTURE, "dominance_zero",
        )
    n = sum(lam)
    if len(lam) <= 1:
        quotient, exact = fast_row_quotient(n, mu, k), True
        route = "closed_row"
    elif mu == (1,) * n:
        quotient, exact = fast_column_quotient(lam, n, k), True
        route = "closed_column"
    else:
        value = fast_k(lam, mu)
        if value is not None:
            route = "mult_one_tree"
            result = divide_by_one_minus_t_power(
                value.substitute_q_power(k), n
            )
            quotient, exact = result.quotient, result.exact
        else:
            route = "reduction_pipeline"
            quotient, exact = generic_quotient(lam, mu, k)
    nonneg = exact and is_nonneg_polynomial(quotient)
    return HaglundVerdict(
        lam=lam,
        mu=mu,
        k=k,
        quotient=quotient,
        is_polynomial=exact,
        is_nonnegative=nonneg,
        is_zero=exact and quotient.is_zero,
        coverage=_coverage(lam, mu),
        route=route,
    )


@dataclass(frozen=True)
class ScanReport:
    max_n: int
    max_k: int
    verdicts: tuple[HaglundVerdict, ...]

    @property
    def violations(self) -> tuple[HaglundVerdict, ...]:
        return tuple(v for v in self.verdicts if not v.is_nonnegative)

    def summary(self) -> dict:
        counts = {
            COVERAGE_MULT_ONE: 0,
            COVERAGE_ROW_OR_COL: 0,
            COVERAGE_CONJECTURE: 0,
        }
        for v in self.verdicts:
            counts[v.coverage] += 1
        return {
            "pairs_checked": len(self.verdicts),
            "violations": len(self.violations),
            "by_coverage": counts,
        }

    def to_obj(self) -> dict:
        return {
            "max_n": self.max_n,
            "max_k": self.max_k,
            "summary": self.summary(),
            "verdicts": [v.to_obj() for v in self.verdicts],
        }


def _scan_chunk(args) -> list[HaglundVerdict]:
    pairs, max_k = args
    return [
        check_pair(lam, mu, k)
        for lam, mu in pairs
        for k in range(max_k + 1)
    ]


def scan(max_n: int, max_k: int, jobs: int = 1) -> ScanReport:
    """Verdicts for every dominance pair of each degree n <= max_n and
    every 0 <= k <= max_k, in a deterministic order."""
    if max_n < 0 or max_k < 0:
        raise DomainError("scan bounds must be nonnegative")
    pairs = [
        (lam, mu)
        for n in range(1, max_n + 1)
        for lam in partitions_of(n)
        for mu in partitions_of(n)
        if dominance_leq(mu, lam)
    ]
    for n in range(1, max_n + 1):
        build_matrices(n)  # warm before forking so workers share the memo
    if jobs <= 0:
        jobs = os.cpu_count() or 1
    if jobs == 1 or len(pairs) < 2 * jobs:
        verdicts = _scan_chunk((pairs, max_k))
    else:
        chunks = [(pairs[i::jobs], max_k) for i in range(jobs)]
        with get_context("fork").Pool(jobs) as pool:
            results = pool.map(_scan_chunk, chunks)
        collected = [v for chunk in results for v in chunk]
        order = {pair: i for i, pair in enumerate(pairs)}
        verdicts = sorted(
            collected, key=lambda v: (order[(v.lam, v.mu)], v.k)
        )
    return ScanReport(max_n, max_k, tuple(verdicts))
