"""Exact rational arithmetic: dense polynomials and linear solves over fractions.

Everything in this module is exact; floats never enter a computation.
``Rational`` is an alias for :class:`fractions.Fraction`, which already keeps
values in lowest terms with a positive denominator and arbitrary-precision
integer parts.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import SingularMatrix

Rational = Fraction

RationalLike = Union[int, Fraction]


def rational_to_str(value: RationalLike) -> str:
    """Serialize a rational as ``"num/den"`` (always with an explicit denominator)."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def rational_from_str(text: str) -> Fraction:
    """Parse ``"num/den"`` (or a plain integer string) back into a Fraction."""
    return Fraction(text)


def _canonical(coeffs: Iterable[RationalLike]) -> tuple:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense univariate polynomial over rationals; ``coeffs[k]`` multiplies x**k.

    Canonical form: no trailing zero coefficients.  The zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _canonical(self.coeffs))

    @classmethod
    def constant(cls, value: RationalLike) -> "RationalPolynomial":
        return cls((Fraction(value),))

    @classmethod
    def monomial(cls, power: int, coefficient: RationalLike = 1) -> "RationalPolynomial":
        c = Fraction(coefficient)
        if c == 0:
            return cls()
        return cls((Fraction(0),) * power + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, power: int) -> Fraction:
        """Coefficient of x**power, zero beyond the stored degree."""
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __add__(self, other):
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for k, c in enumerate(b):
            merged[k] += c
        return RationalPolynomial(merged)

    def __neg__(self):
        return RationalPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalPolynomial):
            if self.is_zero() or other.is_zero():
                return RationalPolynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return RationalPolynomial(out)
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        out = RationalPolynomial.constant(1)
        for _ in range(exponent):
            out = out * self
        return out

    def derivative(self, order: int = 1) -> "RationalPolynomial":
        """Exact formal derivative of the given order."""
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        coeffs = self.coeffs
        for _ in range(order):
            coeffs = tuple(k * coeffs[k] for k in range(1, len(coeffs)))
        return RationalPolynomial(coeffs)

    def __call__(self, x):
        """Horner evaluation; exact for Fraction input, float for float input."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_affine(self, scale: RationalLike, offset: RationalLike) -> "RationalPolynomial":
        """Exact substitution x -> scale*x + offset."""
        inner = RationalPolynomial((Fraction(offset), Fraction(scale)))
        out = RationalPolynomial()
        for c in reversed(self.coeffs):
            out = out * inner + RationalPolynomial.constant(c)
        return out

    def reflected(self) -> "RationalPolynomial":
        """The polynomial p(1 - x)."""
        return self.compose_affine(-1, 1)

    def horner_coeffs(self) -> tuple:
        """Float coefficients in degree-descending order, ready for Horner loops."""
        return tuple(float(c) for c in reversed(self.coeffs))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = [f"({c})*x^{k}" if k else f"({c})" for k, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(parts)


def poly_derivative(p: RationalPolynomial, order: int) -> RationalPolynomial:
    """Exact formal derivative; see :meth:`RationalPolynomial.derivative`."""
    return p.derivative(order)


def poly_eval_rational(p: RationalPolynomial, x: RationalLike) -> Fraction:
    """Exact value of p at a rational point."""
    return p(Fraction(x))


@dataclass
class RationalMatrix:
    """Row-major dense matrix of fractions."""

    rows: int
    cols: int
    entries: list

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match rows*cols")
        self.entries = [Fraction(v) for v in self.entries]

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[RationalLike]]) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise ValueError("rows have inconsistent lengths")
        return cls(rows, cols, [v for row in data for v in row])

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)])

    def at(self, r: int, c: int) -> Fraction:
        return self.entries[r * self.cols + c]

    def to_rows(self) -> list:
        return [
            [self.entries[r * self.cols + c] for c in range(self.cols)]
            for r in range(self.rows)
        ]


def solve_linear_system(matrix, rhs: Sequence[RationalLike]) -> list:
    """Solve A*x = b exactly by Gaussian elimination over the rationals.

    Accepts a :class:`RationalMatrix` or any nested sequence of rationals.
    Pivoting just picks the first nonzero entry in each column; with exact
    arithmetic no magnitude heuristics are needed.

    Raises :class:`SingularMatrix` when some column has no nonzero pivot.
    """
    if isinstance(matrix, RationalMatrix):
        rows = matrix.to_rows()
    else:
        rows = [[Fraction(v) for v in row] for row in matrix]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    b = [Fraction(v) for v in rhs]
    if len(b) != n:
        raise ValueError("right-hand side length must match the matrix size")

    aug = [row + [bv] for row, bv in zip(rows, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix(f"no nonzero pivot in column {col}")
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
        pivot_row = aug[col]
        for r in range(col + 1, n):
            factor = aug[r][col]
            if factor == 0:
                continue
            factor /= pivot_row[col]
            aug[r] = [a - factor * p for a, p in zip(aug[r], pivot_row)]

    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = aug[r][n]
        for c in range(r + 1, n):
            acc -= aug[r][c] * x[c]
        x[r] = acc / aug[r][r]
    return x
