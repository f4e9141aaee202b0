"""First-principles Macdonald P construction by Gram-Schmidt against the
q,t-deformed Hall scalar product on power sums.

This is the anti-bug oracle for the psi-formula pipeline.  Its exact
arithmetic runs in sympy's rational function field ZZ(q,t), so the two
routes share no arithmetic stack; results cross into the package's own
representation only as (numerator, denominator) polynomial pairs,
compared downstream by integer cross-multiplication.  Every solved
system is verified by substitution before being accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial, gcd, lcm

from sympy import ZZ
from sympy.polys.fields import field
from sympy.polys.heuristicgcd import heugcd
from sympy.polys.polyerrors import HeuristicGCDFailed
from sympy.polys.rings import PolyElement

from .errors import ConsistencyError, DomainError
from .partitions import (
    Partition,
    cells,
    diagram_stats,
    dominance_leq,
    partitions_of,
)
from .qt import QtPolynomial, QtRational, binomial_poly

_FIELD, _q, _t = field("q,t", ZZ)

FractionPair = tuple[QtPolynomial, QtPolynomial]


def _gcd_zz_with_fallback(f, g):
    # sympy 1.14's ring gcd over ZZ gives up when its heuristic runs out
    # of retries; fall back to the dense PRS gcd it ships for other domains
    try:
        return heugcd(f, g)
    except HeuristicGCDFailed:
        return f.ring.dmp_inner_gcd(f, g)


PolyElement._gcd_ZZ = _gcd_zz_with_fallback


def zee(lam: Partition) -> int:
    """z_lambda = prod over part values i of i^mult * mult!."""
    out = 1
    for value in set(lam):
        mult = lam.count(value)
        out *= value**mult * factorial(mult)
    return out


def _multiply_by_powersum(
    f: dict[tuple[int, ...], int], k: int, nvars: int
) -> dict[tuple[int, ...], int]:
    # symmetric polynomials keyed by sorted exponent vectors; the stored
    # coefficient is the raw coefficient of that monomial
    candidates = set()
    for w in f:
        for i in range(nvars):
            v = list(w)
            v[i] += k
            candidates.add(tuple(sorted(v, reverse=True)))
    out: dict[tuple[int, ...], int] = {}
    for z in candidates:
        total = 0
        for i in range(nvars):
            if z[i] >= k:
                v = list(z)
                v[i] -= k
                c = f.get(tuple(sorted(v, reverse=True)))
                if c:
                    total += c
        if total:
            out[z] = total
    return out


@cache
def powersum_in_monomials(n: int) -> tuple[tuple[int, ...], ...]:
    """Integer matrix S with S[lam][mu] = coefficient of m_mu in p_lam,
    both indices running over the descending-lex partitions of n."""
    if n < 1:
        raise DomainError(f"degree must be positive, got {n}")
    parts = partitions_of(n)
    rows = []
    for lam in parts:
        f = {(0,) * n: 1}
        for k in lam:
            f = _multiply_by_powersum(f, k, n)
        rows.append(
            tuple(f.get(tuple(mu) + (0,) * (n - len(mu)), 0) for mu in parts)
        )
    return tuple(rows)


def _invert_rational_matrix(
    mat: tuple[tuple[int, ...], ...]
) -> list[list[Fraction]]:
    size = len(mat)
    work = [[Fraction(x) for x in row] for row in mat]
    inv = [
        [Fraction(1 if i == j else 0) for j in range(size)]
        for i in range(size)
    ]
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col] != 0), None)
        if pivot is None:
            raise ConsistencyError("singular power-sum transition matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = work[col][col]
        work[col] = [x / scale for x in work[col]]
        inv[col] = [x / scale for x in inv[col]]
        for r in range(size):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
                inv[r] = [a - factor * b for a, b in zip(inv[r], inv[col])]
    return inv


def qt_gram_powersums(n: int) -> list[QtRational]:
    """Diagonal of the q,t scalar product in the power-sum basis:
    z_lambda times prod (1-q^part)/(1-t^part)."""
    out = []
    for lam in partitions_of(n):
        num = QtPolynomial.from_int(zee(lam))
        for part in lam:
            num = num * binomial_poly(part, 0)
        out.append(QtRational(num, [(0, part) for part in lam]))
    return out


@cache
def gram_matrix_monomials(n: int):
    """Pairings <m_a, m_b>_{q,t} over the degree-n partition index.

    Built in the polynomial ring over one shared denominator (an
    integer multiple of prod_k (1-t^k)^(n//k)) so the accumulation
    never triggers a gcd; each entry costs one final cancellation.
    """
    parts = partitions_of(n)
    size = len(parts)
    ring = _FIELD.ring
    rq, rt = ring.gens
    cinv = _invert_rational_matrix(powersum_in_monomials(n))
    denominator_lcm = 1
    for row in cinv:
        for x in row:
            denominator_lcm = lcm(denominator_lcm, x.denominator)
    scale = denominator_lcm * denominator_lcm
    common = ring.one * scale
    for k in range(1, n + 1):
        common = common * (ring.one - rt**k) ** (n // k)
    lam_terms = []
    for lam in parts:
        term = ring.one * zee(lam)
        mult = [0] + [n // k for k in range(1, n + 1)]
        for part in lam:
            term = term * (ring.one - rq**part)
            mult[part] -= 1
        for k in range(1, n + 1):
            term = term * (ring.one - rt**k) ** mult[k]
        lam_terms.append(term)
    rows = [[_FIELD(0)] * size for _ in range(size)]
    for a in range(size):
        for b in range(a, size):
            acc = ring.zero
            for k in range(size):
                r = cinv[a][k] * cinv[b][k] * scale
                if r:
                    if r.denominator != 1:
                        raise ConsistencyError("gram scaling not integral")
                    acc = acc + lam_terms[k] * int(r)
            # cancel the known denominator factors by exact ring division
            # rather than asking the CAS gcd (whose heuristic can give up)
            den = ring.one * scale
            for k in range(1, n + 1):
                factor = ring.one - rt**k
                for _ in range(n // k):
                    quotient, remainder = divmod(acc, factor)
                    if remainder:
                        den = den * factor
                    else:
                        acc = quotient
            content = int(acc.content())
            if content:
                shared = gcd(content, scale)
                if shared > 1:
                    acc = acc.quo_ground(shared)
                    den = den.quo_ground(shared)
            value = _FIELD.raw_new(acc, den)
            rows[a][b] = value
            rows[b][a] = value
    return tuple(tuple(row) for row in rows)


def _element_to_pair(element) -> FractionPair:
    """A field element as an integer-coefficient (num, den) pair."""

    def to_qt(poly_element) -> QtPolynomial:
        return QtPolynomial(
            {
                (int(eq), int(et)): int(c)
                for (eq, et), c in poly_element.terms()
            }
        )

    return to_qt(element.numer), to_qt(element.denom)


def pair_equals_qtrational(pair: FractionPair, value: QtRational) -> bool:
    """Cross-multiplication equality between the two representations."""
    num, den = pair
    return num * value.den_expanded() == value.num * den


@dataclass(frozen=True)
class SymFuncInBasis:
    """A degree-homogeneous symmetric function as a coefficient vector
    over the descending-lex partition index (entries in ZZ(q,t))."""

    degree: int
    basis: str  # "monomial" | "powersum"
    coefficients: tuple

    def coefficient(self, lam: Partition):
        return self.coefficients[partitions_of(self.degree).index(tuple(lam))]

    def coefficient_pair(self, lam: Partition) -> FractionPair:
        return _element_to_pair(self.coefficient(lam))


def _solve_field_system(matrix: list[list], rhs: list) -> list:
    """Gaussian elimination over the rational function field."""
    size = len(rhs)
    work = [list(matrix[i]) + [rhs[i]] for i in range(size)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col] != 0), None)
        if pivot is None:
            raise ConsistencyError("singular Gram system")
        work[col], work[pivot] = work[pivot], work[col]
        inv_pivot = 1 / work[col][col]
        work[col] = [x * inv_pivot for x in work[col]]
        for r in range(size):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return [work[i][size] for i in range(size)]


@cache
def gram_schmidt_P(n: int) -> dict[Partition, SymFuncInBasis]:
    """Monomial expansions of all P_lambda at degree n.

    Partitions are processed upward in dominance; for each lambda the
    coefficients on strictly dominated monomials solve the
    orthogonality system against everything already built, and each
    solution is verified by substitution before being accepted.
    """
    parts = partitions_of(n)
    size = len(parts)
    pos = {p: i for i, p in enumerate(parts)}
    gram = gram_matrix_monomials(n)
    built: dict[Partition, SymFuncInBasis] = {}
    # g_rows[nu][gamma] = <m_gamma, P_nu>
    g_rows: dict[Partition, list] = {}
    for lam in reversed(parts):
        below = [mu for mu in parts if mu != lam and dominance_leq(mu, lam)]
        vec = [_FIELD(0)] * size
        vec[pos[lam]] = _FIELD(1)
        if below:
            matrix = [[g_rows[nu][pos[mu]] for mu in below] for nu in below]
            rhs = [-g_rows[nu][pos[lam]] for nu in below]
            solution = _solve_field_system(matrix, rhs)
            for mu, value in zip(below, solution):
                vec[pos[mu]] = value
            for nu in below:
                residual = sum(
                    (vec[pos[g]] * g_rows[nu][pos[g]] for g in parts),
                    _FIELD(0),
                )
                if residual != 0:
                    raise ConsistencyError(
                        f"Gram-Schmidt verification failed at {lam} vs {nu}"
                    )
        built[lam] = SymFuncInBasis(n, "monomial", tuple(vec))
        g_rows[lam] = [
            sum(
                (vec[d] * gram[gamma][d] for d in range(size) if vec[d] != 0),
                _FIELD(0),
            )
            for gamma in range(size)
        ]
    return built


def orthogonality_audit(n: int) -> bool:
    """Recompute every off-diagonal pairing from the built basis."""
    parts = partitions_of(n)
    gram = gram_matrix_monomials(n)
    built = gram_schmidt_P(n)
    size = len(parts)
    for i, lam in enumerate(parts):
        u = built[lam].coefficients
        for mu in parts[i + 1 :]:
            v = built[mu].coefficients
            pairing = sum(
                (
                    u[a] * v[b] * gram[a][b]
                    for a in range(size)
                    for b in range(size)
                    if u[a] != 0 and v[b] != 0
                ),
                _FIELD(0),
            )
            if pairing != 0:
                return False
    return True


def b_norm_factor(lam: Partition):
    """b_lambda = c_lambda / c'_lambda read off the diagram."""
    value = _FIELD(1)
    for x in cells(lam):
        s = diagram_stats(lam, x)
        value = (
            value
            * (1 - _q**s.arm * _t ** (s.leg + 1))
            / (1 - _q ** (s.arm + 1) * _t**s.leg)
        )
    return value


def check_pairing_normalization(n: int) -> bool:
    """<P_lam, Q_lam> = 1, i.e. b_lam <P_lam, P_lam> = 1."""
    parts = partitions_of(n)
    gram = gram_matrix_monomials(n)
    built = gram_schmidt_P(n)
    size = len(parts)
    for lam in parts:
        u = built[lam].coefficients
        norm = sum(
            (
                u[a] * u[b] * gram[a][b]
                for a in range(size)
                for b in range(size)
                if u[a] != 0 and u[b] != 0
            ),
            _FIELD(0),
        )
        if b_norm_factor(lam) * norm != _FIELD(1):
            return False
    return True


def check_Qn_plethysm(n: int) -> bool:
    """Does h_n[X (1-t)/(1-q)] equal b_(n) P_(n) in the monomial basis?"""
    parts = partitions_of(n)
    transition = powersum_in_monomials(n)
    size = len(parts)
    # h_n = sum_lam p_lam / z_lam; the plethysm scales p_k by (1-t^k)/(1-q^k)
    lhs = [_FIELD(0)] * size
    for i, lam in enumerate(parts):
        coeff = _FIELD(1) / _FIELD(zee(lam))
        for part in lam:
            coeff = coeff * (1 - _t**part) / (1 - _q**part)
        for j in range(size):
            if transition[i][j]:
                lhs[j] = lhs[j] + coeff * transition[i][j]
    b_row = b_norm_factor((n,))
    p_row = gram_schmidt_P(n)[(n,)].coefficients
    return all(lhs[j] == b_row * p_row[j] for j in range(size))
