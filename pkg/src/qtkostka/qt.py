"""Exact sparse Laurent arithmetic in q and t over arbitrary-precision integers.

QtPolynomial is a sparse Laurent polynomial (exponents may be negative).
QtRational keeps its denominator as a multiset of binomial factors
(1 - q^a t^b); the only divisions the pipeline ever needs are by such
factors, so no multivariate gcd is required anywhere.  Equality of
rationals is decided by cross-multiplication, never by canonical forms.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .errors import ConsistencyError, DomainError, PoleError

ExponentPair = tuple[int, int]


def _grading_key(exps: ExponentPair) -> tuple[int, int, int]:
    # graded lexicographic with q > t; pins iteration and serialization order
    eq, et = exps
    return (eq + et, eq, et)


class QtPolynomial:
    """Sparse Laurent polynomial in q, t with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[ExponentPair, int] | None = None):
        self._terms: dict[ExponentPair, int] = (
            {e: c for e, c in terms.items() if c} if terms else {}
        )

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "QtPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "QtPolynomial":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, coeff: int, eq: int = 0, et: int = 0) -> "QtPolynomial":
        return cls({(eq, et): coeff})

    @classmethod
    def from_int(cls, n: int) -> "QtPolynomial":
        return cls({(0, 0): n})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[ExponentPair, int]]:
        """Terms sorted in the canonical graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: _grading_key(kv[0]))

    def coefficient(self, eq: int, et: int) -> int:
        return self._terms.get((eq, et), 0)

    def is_genuine_polynomial(self) -> bool:
        """No negative exponents anywhere."""
        return all(eq >= 0 and et >= 0 for eq, et in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "QtPolynomial | int") -> "QtPolynomial":
        if isinstance(other, int):
            other = QtPolynomial.from_int(other)
        if not isinstance(other, QtPolynomial):
            return NotImplemented
        result = dict(self._terms)
        for e, c in other._terms.items():
            new = result.get(e, 0) + c
            if new:
                result[e] = new
            else:
                result.pop(e, None)
        out = QtPolynomial.__new__(QtPolynomial)
        out._terms = result
        return out

    __radd__ = __add__

    def __neg__(self) -> "QtPolynomial":
        out = QtPolynomial.__new__(QtPolynomial)
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other: "QtPolynomial | int") -> "QtPolynomial":
        if isinstance(other, int):
            other = QtPolynomial.from_int(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "QtPolynomial":
        return QtPolynomial.from_int(other) + (-self)

    def __mul__(self, other: "QtPolynomial | int") -> "QtPolynomial":
        if isinstance(other, int):
            if other == 0:
                return QtPolynomial.zero()
            out = QtPolynomial.__new__(QtPolynomial)
            out._terms = {e: c * other for e, c in self._terms.items()}
            return out
        if not isinstance(other, QtPolynomial):
            return NotImplemented
        result: dict[ExponentPair, int] = {}
        for (eq1, et1), c1 in self._terms.items():
            for (eq2, et2), c2 in other._terms.items():
                e = (eq1 + eq2, et1 + et2)
                new = result.get(e, 0) + c1 * c2
                if new:
                    result[e] = new
                else:
                    result.pop(e, None)
        out = QtPolynomial.__new__(QtPolynomial)
        out._terms = result
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QtPolynomial":
        if exponent < 0:
            raise DomainError("negative power of a polynomial")
        result = QtPolynomial.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({} if other == 0 else {(0, 0): other})
        if isinstance(other, QtPolynomial):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- substitutions -----------------------------------------------------

    def substitute_q_power(self, k: int) -> "QtPolynomial":
        """Substitute q := t^k; result lives on the t-axis."""
        if k < 0:
            raise DomainError(f"q-power substitution needs k >= 0, got {k}")
        result: dict[ExponentPair, int] = {}
        for (eq, et), c in self._terms.items():
            e = (0, k * eq + et)
            new = result.get(e, 0) + c
            if new:
                result[e] = new
            else:
                result.pop(e, None)
        out = QtPolynomial.__new__(QtPolynomial)
        out._terms = result
        return out

    def swap_qt(self) -> "QtPolynomial":
        out = QtPolynomial.__new__(QtPolynomial)
        out._terms = {(et, eq): c for (eq, et), c in self._terms.items()}
        return out

    def at_t_one(self) -> "QtPolynomial":
        """Evaluate t = 1, collapsing onto the q-axis."""
        result: dict[ExponentPair, int] = {}
        for (eq, _), c in self._terms.items():
            e = (eq, 0)
            new = result.get(e, 0) + c
            if new:
                result[e] = new
            else:
                result.pop(e, None)
        out = QtPolynomial.__new__(QtPolynomial)
        out._terms = result
        return out

    def at_q_zero(self) -> "QtPolynomial":
        """Evaluate q = 0; only legal on genuine polynomials in q."""
        if any(eq < 0 for eq, _ in self._terms):
            raise PoleError("q = 0 hits a negative q-exponent")
        out = QtPolynomial.__new__(QtPolynomial)
        out._terms = {e: c for e, c in self._terms.items() if e[0] == 0}
        return out

    # -- presentation ------------------------------------------------------

    def to_obj(self) -> list[list]:
        """JSON form: [e_q, e_t, "coeff"] triples, coefficient as string."""
        return [[eq, et, str(c)] for (eq, et), c in self.terms()]

    @classmethod
    def from_obj(cls, obj: Iterable) -> "QtPolynomial":
        return cls({(int(eq), int(et)): int(c) for eq, et, c in obj})

    def _term_strings(self, mul: str, pow_open: str, pow_close: str) -> Iterator[str]:
        for (eq, et), c in self.terms():
            vars_part = []
            for sym, e in (("q", eq), ("t", et)):
                if e == 1:
                    vars_part.append(sym)
                elif e != 0:
                    vars_part.append(f"{sym}{pow_open}{e}{pow_close}")
            body = mul.join(vars_part)
            if not body:
                yield str(c)
            elif c == 1:
                yield body
            elif c == -1:
                yield f"-{body}"
            else:
                yield f"{c}{mul}{body}"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = list(self._term_strings("*", "^", ""))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"QtPolynomial({self})"

    def latex(self) -> str:
        if self.is_zero:
            return "0"
        parts = list(self._term_strings("", "^{", "}"))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


ONE = QtPolynomial.one()
Q = QtPolynomial.monomial(1, 1, 0)
T = QtPolynomial.monomial(1, 0, 1)


def binomial_poly(a: int, b: int) -> QtPolynomial:
    """The factor 1 - q^a t^b."""
    if (a, b) == (0, 0):
        raise DomainError("1 - q^0 t^0 is zero, not a binomial factor")
    return QtPolynomial({(0, 0): 1, (a, b): -1})


def t_number(j: int) -> QtPolynomial:
    """[j]_t = 1 + t + ... + t^(j-1); [0]_t = 0."""
    if j < 0:
        raise DomainError(f"t-number needs j >= 0, got {j}")
    return QtPolynomial({(0, i): 1 for i in range(j)})


def exact_div_binomial(p: QtPolynomial, a: int, b: int) -> QtPolynomial | None:
    """Exact quotient p / (1 - q^a t^b), or None if the division leaves a remainder.

    Works on Laurent polynomials.  Processes the remainder from its
    graded-lex-smallest term upward; a term escaping past the dividend's
    top degree proves inexactness.
    """
    if (a, b) == (0, 0) or a < 0 or b < 0:
        raise DomainError(f"not a binomial denominator: (1 - q^{a} t^{b})")
    if p.is_zero:
        return QtPolynomial.zero()
    remainder = dict(p._terms)
    max_key = max(_grading_key(e) for e in remainder)
    quotient: dict[ExponentPair, int] = {}
    while remainder:
        e = min(remainder, key=_grading_key)
        if _grading_key(e) > max_key:
            return None
        c = remainder.pop(e)
        quotient[e] = c
        shifted = (e[0] + a, e[1] + b)
        new = remainder.get(shifted, 0) + c
        if new:
            remainder[shifted] = new
        else:
            remainder.pop(shifted, None)
    out = QtPolynomial.__new__(QtPolynomial)
    out._terms = quotient
    return out


class DivisionResult(NamedTuple):
    """Outcome of dividing by (1-t)^m: quotient when exact, else the stall point."""

    quotient: QtPolynomial | None
    exact: bool
    divisions_done: int


def divide_by_one_minus_t_power(p: QtPolynomial, m: int) -> DivisionResult:
    """Divide p by (1-t)^m exactly if possible."""
    if m < 0:
        raise DomainError(f"negative power {m}")
    current = p
    for i in range(m):
        nxt = exact_div_binomial(current, 0, 1)
        if nxt is None:
            return DivisionResult(None, False, i)
        current = nxt
    return DivisionResult(current, True, m)


def is_nonneg_polynomial(p: QtPolynomial) -> bool:
    """All coefficients >= 0 and all exponents >= 0."""
    return all(
        c >= 0 and eq >= 0 and et >= 0 for (eq, et), c in p._terms.items()
    )


class BinomialFactor(NamedTuple):
    """(1 - q^a t^b)^multiplicity with (a, b) != (0, 0)."""

    a: int
    b: int
    multiplicity: int


def _factor_order(f: tuple[int, int]) -> tuple[int, int, int]:
    a, b = f
    return (a + b, a, b)


def _normalize_factors(factors: Iterable) -> tuple[BinomialFactor, ...]:
    counts: dict[tuple[int, int], int] = {}
    for f in factors:
        if len(f) == 2:
            a, b, mult = f[0], f[1], 1
        else:
            a, b, mult = f
        if (a, b) == (0, 0) or a < 0 or b < 0 or mult < 1:
            raise DomainError(f"invalid binomial factor {f}")
        counts[(a, b)] = counts.get((a, b), 0) + mult
    return tuple(
        BinomialFactor(a, b, counts[(a, b)])
        for (a, b) in sorted(counts, key=_factor_order)
    )


def expand_factors(factors: Iterable) -> QtPolynomial:
    """Multiply out a product of binomial factors."""
    result = QtPolynomial.one()
    for f in _normalize_factors(factors):
        result = result * binomial_poly(f.a, f.b) ** f.multiplicity
    return result


class QtRational:
    """Quotient of a QtPolynomial by a multiset of binomial factors.

    Construction normalizes by greedy cancellation: each denominator
    factor (taken in the fixed (a+b, a, b) order) is divided into the
    numerator as long as the division is exact.  The representation is
    not canonical; use ``==`` (cross-multiplication) for equality.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num: QtPolynomial | int, den: Iterable = ()):
        if isinstance(num, int):
            num = QtPolynomial.from_int(num)
        factors = _normalize_factors(den)
        if num.is_zero:
            self._num = QtPolynomial.zero()
            self._den = ()
            return
        remaining: list[BinomialFactor] = []
        for f in factors:
            mult = f.multiplicity
            while mult > 0:
                divided = exact_div_binomial(num, f.a, f.b)
                if divided is None:
                    break
                num = divided
                mult -= 1
            if mult:
                remaining.append(BinomialFactor(f.a, f.b, mult))
        self._num = num
        self._den = tuple(remaining)

    @classmethod
    def from_polynomial(cls, p: QtPolynomial) -> "QtRational":
        out = cls.__new__(cls)
        out._num = p
        out._den = ()
        return out

    @property
    def num(self) -> QtPolynomial:
        return self._num

    @property
    def den(self) -> tuple[BinomialFactor, ...]:
        return self._den

    @property
    def is_zero(self) -> bool:
        return self._num.is_zero

    def den_expanded(self) -> QtPolynomial:
        return expand_factors(self._den)

    def is_polynomial(self) -> bool:
        return not self._den

    def as_polynomial(self) -> QtPolynomial:
        """The numerator, provided normalization cleared the denominator."""
        if self._den:
            raise ConsistencyError(
                f"residual denominator {self._den} on {self}"
            )
        return self._num

    # -- field operations (no general division; see module docstring) ------

    def _den_counts(self) -> dict[tuple[int, int], int]:
        return {(f.a, f.b): f.multiplicity for f in self._den}

    def __add__(self, other: "QtRational | QtPolynomial | int") -> "QtRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d1 = self._den_counts()
        d2 = other._den_counts()
        union = {k: max(d1.get(k, 0), d2.get(k, 0)) for k in d1.keys() | d2.keys()}
        lift1 = [(k[0], k[1], union[k] - d1.get(k, 0)) for k in union if union[k] > d1.get(k, 0)]
        lift2 = [(k[0], k[1], union[k] - d2.get(k, 0)) for k in union if union[k] > d2.get(k, 0)]
        num = self._num * expand_factors(lift1) + other._num * expand_factors(lift2)
        return QtRational(num, [(k[0], k[1], m) for k, m in union.items()])

    __radd__ = __add__

    def __neg__(self) -> "QtRational":
        out = QtRational.__new__(QtRational)
        out._num = -self._num
        out._den = self._den
        return out

    def __sub__(self, other) -> "QtRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QtRational":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "QtRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QtRational(
            self._num * other._num, list(self._den) + list(other._den)
        )

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._num * other.den_expanded() == other._num * self.den_expanded()

    __hash__ = None  # non-canonical representation

    # -- substitutions -----------------------------------------------------

    def substitute_q_power(self, k: int) -> "QtRational":
        """Substitute q := t^k in numerator and denominator."""
        new_den = []
        for f in self._den:
            e = k * f.a + f.b
            if e == 0:
                raise PoleError(
                    f"q := t^{k} kills denominator factor (1 - q^{f.a} t^{f.b})"
                )
            new_den.append((0, e, f.multiplicity))
        return QtRational(self._num.substitute_q_power(k), new_den)

    def swap_qt(self) -> "QtRational":
        return QtRational(
            self._num.swap_qt(),
            [(f.b, f.a, f.multiplicity) for f in self._den],
        )

    def q_one_safe(self) -> bool:
        """True when no denominator factor vanishes at q = 1 (i.e. no b = 0)."""
        return all(f.b != 0 for f in self._den)

    # -- presentation ------------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "num": self._num.to_obj(),
            "den": [[f.a, f.b, f.multiplicity] for f in self._den],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "QtRational":
        out = cls.__new__(cls)
        out._num = QtPolynomial.from_obj(obj["num"])
        out._den = _normalize_factors(obj.get("den", ()))
        return out

    def _den_str(self, fmt: str) -> str:
        pieces = []
        for f in self._den:
            base = binomial_poly(f.a, f.b)
            body = base.latex() if fmt == "latex" else str(base)
            piece = f"({body})"
            if f.multiplicity > 1:
                piece += (
                    f"^{{{f.multiplicity}}}" if fmt == "latex" else f"^{f.multiplicity}"
                )
            pieces.append(piece)
        return "".join(pieces) if fmt == "latex" else "*".join(pieces)

    def __str__(self) -> str:
        if not self._den:
            return str(self._num)
        return f"({self._num}) / ({self._den_str('str')})"

    def __repr__(self) -> str:
        return f"QtRational({self})"

    def latex(self) -> str:
        if not self._den:
            return self._num.latex()
        return f"\\frac{{{self._num.latex()}}}{{{self._den_str('latex')}}}"


def _coerce(value) -> QtRational:
    if isinstance(value, QtRational):
        return value
    if isinstance(value, QtPolynomial):
        return QtRational.from_polynomial(value)
    if isinstance(value, int):
        return QtRational.from_polynomial(QtPolynomial.from_int(value))
    return NotImplemented

