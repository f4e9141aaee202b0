"""The psi weights, the K1/K2 transition matrices and inverses, the
normalization constants c, c', b, the integral-form coefficients
k(lambda, mu), and the row/column closed forms.

All matrices for one degree are indexed by the descending-lex list of
partitions of that degree, which makes unitriangularity literal.
"""

from __future__ import annotations

import json
import os
from functools import cache
from typing import Callable, NamedTuple

from .errors import ConsistencyError, DomainError
from .partitions import (
    Partition,
    cells,
    conjugate,
    diagram_stats,
    n_stat,
    partition,
    partitions_of,
)
from .qt import (
    ONE,
    QtPolynomial,
    QtRational,
    binomial_poly,
    expand_factors,
)
from .tableaux import (
    horizontal_strip_extensions,
    is_horizontal_strip,
    kostka_number,
)

CACHE_FORMAT_VERSION = 1


# -- normalization constants -----------------------------------------------


def c_factors(mu: Partition) -> tuple[tuple[int, int], ...]:
    """Binomial exponents of c_mu: one (a, l+1) per box."""
    out = []
    for x in cells(mu):
        s = diagram_stats(mu, x)
        out.append((s.arm, s.leg + 1))
    return tuple(sorted(out))


def c_prime_factors(mu: Partition) -> tuple[tuple[int, int], ...]:
    """Binomial exponents of c'_mu: one (a+1, l) per box."""
    out = []
    for x in cells(mu):
        s = diagram_stats(mu, x)
        out.append((s.arm + 1, s.leg))
    return tuple(sorted(out))


class NormalizationConstants(NamedTuple):
    c: QtPolynomial
    c_prime: QtPolynomial
    b: QtRational


def normalization(mu: Partition) -> NormalizationConstants:
    """c_mu, c'_mu as expanded polynomials and b_mu = c_mu / c'_mu."""
    cf = c_factors(mu)
    cpf = c_prime_factors(mu)
    return NormalizationConstants(
        c=expand_factors(cf),
        c_prime=expand_factors(cpf),
        b=QtRational(expand_factors(cf), cpf),
    )


# -- psi weights and K1 ------------------------------------------------------


def psi_strip(lam: Partition, mu: Partition) -> QtRational:
    """Macdonald's psi weight of the horizontal strip lam/mu.

    The product runs over boxes of mu whose row gained a box but whose
    column did not; each contributes a four-binomial factor built from
    its arms and legs in mu and in lam.
    """
    lam = partition(lam)
    mu = partition(mu)
    if not is_horizontal_strip(lam, mu):
        raise DomainError(f"{lam}/{mu} is not a horizontal strip")
    conj_lam = conjugate(lam)
    conj_mu = conjugate(mu)
    num = ONE
    den: list[tuple[int, int]] = []
    for r in range(1, len(mu) + 1):
        if lam[r - 1] == mu[r - 1]:
            continue  # row unchanged: no qualifying boxes here
        for col in range(1, mu[r - 1] + 1):
            if conj_lam[col - 1] != conj_mu[col - 1]:
                continue  # column grew
            sm = diagram_stats(mu, (r, col))
            sl = diagram_stats(lam, (r, col))
            num = num * binomial_poly(sm.arm, sm.leg + 1)
            num = num * binomial_poly(sl.arm + 1, sl.leg)
            den.append((sm.arm + 1, sm.leg))
            den.append((sl.arm, sl.leg + 1))
    return QtRational(num, den)


@cache
def _psi_cached(lam: Partition, mu: Partition) -> QtRational:
    return psi_strip(lam, mu)


@cache
def _k1_column(mu: Partition) -> dict[Partition, QtRational]:
    """psi-sums over all chains with content mu, for every final shape.

    Layered DP over intermediate shapes; chains sharing a prefix share
    all the work, which is where the per-strip memoization pays off.
    """
    layer: dict[Partition, QtRational] = {(): QtRational(ONE)}
    for step in mu:
        nxt: dict[Partition, QtRational] = {}
        for shape, weight in layer.items():
            for bigger in horizontal_strip_extensions(shape, step):
                term = weight * _psi_cached(bigger, shape)
                if bigger in nxt:
                    nxt[bigger] = nxt[bigger] + term
                else:
                    nxt[bigger] = term
        layer = nxt
    return layer


def k1_entry(lam: Partition, mu: Partition) -> QtRational:
    """K1 coefficient: the psi-sum over SSYT(lam, mu)."""
    lam = partition(lam)
    mu = partition(mu)
    if sum(lam) != sum(mu):
        return QtRational(0)
    return _k1_column(mu).get(lam, QtRational(0))


# -- partition-indexed matrices ---------------------------------------------


class TriangularMatrix:
    """Square matrix of QtRationals over the descending-lex partitions of n."""

    __slots__ = ("n", "index", "entries", "_pos")

    def __init__(self, n: int, entries: list[list[QtRational]]):
        self.n = n
        self.index = partitions_of(n)
        if len(entries) != len(self.index) or any(
            len(row) != len(self.index) for row in entries
        ):
            raise DomainError(f"entry grid does not match degree {n}")
        self.entries = entries
        self._pos = {p: i for i, p in enumerate(self.index)}

    @classmethod
    def from_function(
        cls, n: int, fn: Callable[[Partition, Partition], QtRational]
    ) -> "TriangularMatrix":
        parts = partitions_of(n)
        return cls(n, [[fn(lam, mu) for mu in parts] for lam in parts])

    @classmethod
    def identity(cls, n: int) -> "TriangularMatrix":
        parts = partitions_of(n)
        return cls(
            n,
            [
                [QtRational(1 if i == j else 0) for j in range(len(parts))]
                for i in range(len(parts))
            ],
        )

    def entry(self, lam: Partition, mu: Partition) -> QtRational:
        return self.entries[self._pos[tuple(lam)]][self._pos[tuple(mu)]]

    def is_unitriangular(self) -> bool:
        for i in range(len(self.index)):
            if not self.entries[i][i] == 1:
                return False
            for j in range(i):
                if not self.entries[i][j].is_zero:
                    return False
        return True

    def __matmul__(self, other: "TriangularMatrix") -> "TriangularMatrix":
        if self.n != other.n:
            raise DomainError("degree mismatch in matrix product")
        size = len(self.index)
        out = []
        for i in range(size):
            row = []
            for j in range(size):
                acc = QtRational(0)
                for k in range(i, j + 1):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero or b.is_zero:
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return TriangularMatrix(self.n, out)

    def inverse(self) -> "TriangularMatrix":
        """Invert by back-substitution; the unit diagonal means no division."""
        size = len(self.index)
        inv = [
            [QtRational(1 if i == j else 0) for j in range(size)]
            for i in range(size)
        ]
        for i in range(size):
            if not self.entries[i][i] == 1:
                raise ConsistencyError("non-unit diagonal in triangular inverse")
            for j in range(i + 1, size):
                acc = QtRational(0)
                for k in range(i, j):
                    term_src = inv[i][k]
                    m = self.entries[k][j]
                    if term_src.is_zero or m.is_zero:
                        continue
                    acc = acc + term_src * m
                inv[i][j] = -acc
        return TriangularMatrix(self.n, inv)

    def map_entries(
        self, fn: Callable[[QtRational], QtRational]
    ) -> "TriangularMatrix":
        return TriangularMatrix(
            self.n, [[fn(e) for e in row] for row in self.entries]
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriangularMatrix) or self.n != other.n:
            return NotImplemented
        return all(
            self.entries[i][j] == other.entries[i][j]
            for i in range(len(self.index))
            for j in range(len(self.index))
        )

    __hash__ = None

    def to_obj(self, which: str = "") -> dict:
        return {
            "format_version": CACHE_FORMAT_VERSION,
            "which": which,
            "n": self.n,
            "index": [list(p) for p in self.index],
            "entries": [[e.to_obj() for e in row] for row in self.entries],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "TriangularMatrix":
        if obj.get("format_version") != CACHE_FORMAT_VERSION:
            raise DomainError("cache format version mismatch")
        n = obj["n"]
        if [list(p) for p in partitions_of(n)] != obj["index"]:
            raise DomainError("cache index does not match the degree")
        return cls(
            n,
            [[QtRational.from_obj(e) for e in row] for row in obj["entries"]],
        )

    def latex(self) -> str:
        header = " & ".join(str(list(p)) for p in self.index)
        lines = [
            "\\begin{tabular}{l|" + "c" * len(self.index) + "}",
            f" & {header} \\\\ \\hline",
        ]
        for lam, row in zip(self.index, self.entries):
            body = " & ".join(f"${e.latex()}$" for e in row)
            lines.append(f"{list(lam)} & {body} \\\\")
        lines.append("\\end{tabular}")
        return "\n".join(lines)


class MatrixBundle(NamedTuple):
    """The five degree-n transition matrices."""

    kostka: TriangularMatrix
    k1: TriangularMatrix
    k1_inv: TriangularMatrix
    k2: TriangularMatrix
    k2_inv: TriangularMatrix


_MATRIX_NAMES = ("k", "k1", "k1inv", "k2", "k2inv")


def _cache_path(cache_dir: str, name: str, n: int) -> str:
    return os.path.join(cache_dir, f"{name}_n{n}.json")


_memory_cache: dict[int, MatrixBundle] = {}


def _compute_matrices(n: int) -> MatrixBundle:
    kostka = TriangularMatrix.from_function(
        n, lambda lam, mu: QtRational(kostka_number(lam, mu))
    )
    k1 = TriangularMatrix.from_function(n, k1_entry)
    k1_inv = k1.inverse()
    k2 = kostka @ k1_inv
    k2_inv = k1 @ kostka.inverse()
    return MatrixBundle(kostka, k1, k1_inv, k2, k2_inv)


def _load_cached(paths: list[str]) -> MatrixBundle | None:
    if not all(os.path.exists(p) for p in paths):
        return None
    try:
        mats = []
        for p in paths:
            with open(p, "r", encoding="utf-8") as fh:
                mats.append(TriangularMatrix.from_obj(json.load(fh)))
        return MatrixBundle(*mats)
    except (DomainError, KeyError, json.JSONDecodeError):
        return None  # stale or foreign cache: rebuild


def build_matrices(n: int, cache_dir: str | None = None) -> MatrixBundle:
    """K, K1, K1^-1, K2, K2^-1 at degree n, optionally cached on disk."""
    if n < 0:
        raise DomainError(f"negative degree {n}")
    bundle = _memory_cache.get(n)
    paths = (
        [_cache_path(cache_dir, name, n) for name in _MATRIX_NAMES]
        if cache_dir is not None
        else None
    )
    if bundle is None and paths is not None:
        bundle = _load_cached(paths)
    if bundle is None:
        bundle = _compute_matrices(n)
    _memory_cache[n] = bundle
    if paths is not None and not all(os.path.exists(p) for p in paths):
        os.makedirs(cache_dir, exist_ok=True)
        for name, path, mat in zip(_MATRIX_NAMES, paths, bundle):
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(mat.to_obj(name), fh, sort_keys=True)
    return bundle


# -- integral form coefficients ----------------------------------------------


@cache
def k_coeff(lam: Partition, mu: Partition) -> QtPolynomial:
    """k(lambda, mu) = K2 entry times c'_mu, normalized to a polynomial."""
    lam = partition(lam)
    mu = partition(mu)
    if sum(lam) != sum(mu):
        return QtPolynomial.zero()
    k2 = build_matrices(sum(lam)).k2.entry(lam, mu)
    value = k2 * QtRational(expand_factors(c_prime_factors(mu)))
    return value.as_polynomial()


def closed_form_row(n: int, mu: Partition) -> QtPolynomial:
    """k((n), mu) by the coarm/coleg product formula."""
    mu = partition(mu)
    if sum(mu) != n:
        raise DomainError(f"|{mu}| != {n}")
    result = QtPolynomial.monomial(1, 0, n_stat(mu))
    for x in cells(mu):
        s = diagram_stats(mu, x)
        # 1 - q^(a'+1) t^(-l'), Laurent until the prefactor clears it
        result = result * QtPolynomial(
            {(0, 0): 1, (s.coarm + 1, -s.coleg): -1}
        )
    if not result.is_genuine_polynomial():
        raise ConsistencyError(f"row closed form not polynomial for mu={mu}")
    return result


def kostka_foulkes_hook_form(lam: Partition) -> QtPolynomial:
    """K(lambda, 1^n)(t) via the t-analogue of the hook length formula."""
    lam = partition(lam)
    n = sum(lam)
    num = QtPolynomial.monomial(1, 0, n_stat(conjugate(lam)))
    for j in range(1, n + 1):
        num = num * binomial_poly(0, j)
    hooks = [(0, diagram_stats(lam, x).hook) for x in cells(lam)]
    return QtRational(num, hooks).as_polynomial()


def closed_form_column(lam: Partition, n: int) -> QtPolynomial:
    """k(lambda, 1^n) = K(lambda, 1^n)(t) times the content product."""
    lam = partition(lam)
    if sum(lam) != n:
        raise DomainError(f"|{lam}| != {n}")
    result = kostka_foulkes_hook_form(lam)
    for x in cells(lam):
        s = diagram_stats(lam, x)
        result = result * QtPolynomial({(0, 0): 1, (1, -s.content): -1})
    if not result.is_genuine_polynomial():
        raise ConsistencyError(f"column closed form not polynomial for {lam}")
    return result


def principal_specialization_P(
    lam: Partition, z: str | tuple[int, int]
) -> QtRational:
    """P_lambda evaluated at the alphabet (1-z)/(1-t), z a q,t-monomial.

    Returns the product over boxes of (t^coleg - q^coarm z) over
    (1 - q^arm t^(leg+1)).
    """
    lam = partition(lam)
    if z == "q":
        alpha, beta = 1, 0
    elif z == "t":
        alpha, beta = 0, 1
    else:
        alpha, beta = z
        if alpha < 0 or beta < 0:
            raise DomainError(f"z must be a monomial with nonneg exponents: {z}")
    num = ONE
    den: list[tuple[int, int]] = []
    for x in cells(lam):
        s = diagram_stats(lam, x)
        factor = QtPolynomial.monomial(1, 0, s.coleg) - QtPolynomial.monomial(
            1, s.coarm + alpha, beta
        )
        num = num * factor
        den.append((s.arm, s.leg + 1))
    return QtRational(num, den)
