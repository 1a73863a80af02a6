"""Spline basis families over the unit cell, derived exactly.

:class:`AlphaFamily` holds the polynomials multiplying the value and
derivative data at the two cell ends, for odd order n = 2m + 1.
:class:`BetaFamily` holds the polynomials multiplying the raw values on the
q = 2g + 2 surrounding nodes, obtained by feeding centered differences into
the alpha basis.

Families carry their exact coefficients plus float Horner arrays for all
derivative orders 0..m, so evaluation does no derivation work.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import DerivativeTooHigh, InvalidKind, InvalidOrder
from .exact import RationalPolynomial, rational_to_str, solve_linear_system
from .stencil import derive_stencil

MAX_ORDER = 19  # largest validated odd order n
MAX_NODES = 12  # largest supported node count q


def _require_valid_order(n) -> None:
    if not isinstance(n, int) or n < 1 or n % 2 == 0 or n > MAX_ORDER:
        raise InvalidOrder(f"order must be an odd integer in 1..{MAX_ORDER}, got {n!r}")


@dataclass(frozen=True)
class SplineKind:
    """Validated interpolation scheme: order n, plus node count q for grid splines.

    ``q`` is None for a pure derivative-matching (Hermite) scheme.  For grid
    splines the smoothness order m = (n-1)/2 may not exceed the stencil
    exactness 2g, i.e. n <= 2q - 3.
    """

    n: int
    q: "int | None" = None

    def __post_init__(self):
        _require_valid_order(self.n)
        if self.q is not None:
            q = self.q
            if not isinstance(q, int) or q % 2 or q < 4 or q > MAX_NODES:
                raise InvalidKind(f"node count must be an even integer in 4..{MAX_NODES}, got {q!r}")
            if self.n > 2 * q - 3:
                raise InvalidKind(f"order {self.n} exceeds 2q-3 = {2 * q - 3} for q = {q}")

    @property
    def m(self) -> int:
        """Number of matched derivative orders minus one; smoothness class."""
        return (self.n - 1) // 2

    @property
    def g(self):
        """Stencil half-width, or None for pure Hermite kinds."""
        return None if self.q is None else (self.q - 2) // 2

    def __str__(self):
        return f"({self.n},{self.q})" if self.q is not None else f"(n={self.n})"


def _horner(coeffs, x: float) -> float:
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class AlphaFamily:
    """Endpoint-data basis: ``polys[i][l]`` multiplies the order-l data at cell end i."""

    n: int
    polys: tuple

    @property
    def m(self) -> int:
        return (self.n - 1) // 2

    @cached_property
    def horner(self) -> tuple:
        """Float Horner arrays indexed [i][l], degree-descending."""
        return tuple(tuple(p.horner_coeffs() for p in side) for side in self.polys)

    def eval_table(self, x: float) -> list:
        """All basis values at x, as ``table[l][i]``."""
        return [
            [_horner(self.horner[i][l], x) for i in (0, 1)]
            for l in range(self.m + 1)
        ]


@dataclass(frozen=True)
class BetaFamily:
    """Node-value basis: one polynomial per node offset -g..g+1.

    ``polys`` is stored with index ``offset + g``; use :meth:`poly` for
    offset-based access.
    """

    n: int
    q: int
    polys: tuple

    @property
    def m(self) -> int:
        return (self.n - 1) // 2

    @property
    def g(self) -> int:
        return (self.q - 2) // 2

    def poly(self, offset: int) -> RationalPolynomial:
        """Exact polynomial attached to the node at the given offset."""
        return self.polys[offset + self.g]

    @cached_property
    def horner(self) -> tuple:
        """Per-node float Horner arrays (order 0), degree-descending."""
        return self.horner_by_order[0]

    @cached_property
    def horner_by_order(self) -> tuple:
        """Horner arrays for every derivative order 0..m, indexed [order][node]."""
        return tuple(
            tuple(p.derivative(order).horner_coeffs() for p in self.polys)
            for order in range(self.m + 1)
        )


def _hermite_matrix(n: int) -> list:
    """Endpoint condition matrix: rows are (end i, order l), columns monomials."""
    m = (n - 1) // 2
    rows = []
    for i in (0, 1):
        for l in range(m + 1):
            row = []
            for k in range(n + 1):
                if k < l:
                    row.append(Fraction(0))
                else:
                    falling = math.factorial(k) // math.factorial(k - l)
                    row.append(Fraction(falling * i ** (k - l)))
            rows.append(row)
    return rows


def _condition_index(i: int, l: int, m: int) -> int:
    return i * (m + 1) + l


@lru_cache(maxsize=None)
def derive_alpha(n: int) -> AlphaFamily:
    """Solve the endpoint value/derivative conditions for each basis member.

    Member (i, l) is the unique degree <= n polynomial whose order-l
    derivative is 1 at cell end i, all other endpoint data being zero.
    """
    _require_valid_order(n)
    m = (n - 1) // 2
    matrix = _hermite_matrix(n)
    sides = []
    for i in (0, 1):
        per_order = []
        for l in range(m + 1):
            rhs = [Fraction(0)] * (n + 1)
            rhs[_condition_index(i, l, m)] = Fraction(1)
            per_order.append(RationalPolynomial(solve_linear_system(matrix, rhs)))
        sides.append(tuple(per_order))
    family = AlphaFamily(n=n, polys=tuple(sides))
    family.horner  # materialize the float arrays up front
    return family


def alpha_closed_form(n: int, l: int, i: int) -> RationalPolynomial:
    """Product-form alpha basis member, expanded to monomials.

    For the left end:  (x**l / l!) * (1-x)**(m+1) * sum_k binom(m+k, k) x**k,
    with k running to m - l.  The right end follows by the reflection
    identity (sign (-1)**l, argument 1 - x).
    """
    _require_valid_order(n)
    m = (n - 1) // 2
    if not 0 <= l <= m:
        raise InvalidOrder(f"derivative order must be in 0..{m} for n = {n}, got {l}")
    if i not in (0, 1):
        raise ValueError(f"cell end must be 0 or 1, got {i!r}")
    series = RationalPolynomial(
        [
            Fraction(math.factorial(m + k), math.factorial(m) * math.factorial(k))
            for k in range(m - l + 1)
        ]
    )
    one_minus_x = RationalPolynomial((1, -1))
    poly = RationalPolynomial.monomial(l, Fraction(1, math.factorial(l)))
    poly = poly * one_minus_x ** (m + 1) * series
    if i == 1:
        poly = poly.reflected()
        if l % 2:
            poly = -poly
    return poly


def derive_beta(kind: SplineKind) -> BetaFamily:
    """Node-value basis via composition: difference weights feeding the alpha basis.

    The polynomial attached to node j collects every route by which f(j)
    reaches the cell: weight of f(j) in the order-l data at cell end i, times
    the alpha member (i, l).
    """
    if kind.q is None:
        raise InvalidKind("grid-spline basis requires a node count q")
    return _beta_composed(kind.n, kind.q)


@lru_cache(maxsize=None)
def _beta_composed(n: int, q: int) -> BetaFamily:
    alpha = derive_alpha(n)
    g = (q - 2) // 2
    table = derive_stencil(g)
    m = alpha.m
    polys = []
    for node in range(-g, g + 2):
        total = RationalPolynomial()
        for l in range(m + 1):
            for i in (0, 1):
                w = table.weight(l, node - i)
                if w:
                    total = total + alpha.polys[i][l] * w
        polys.append(total)
    family = BetaFamily(n=n, q=q, polys=tuple(polys))
    family.horner_by_order  # materialize the float arrays up front
    return family


def derive_beta_direct(kind: SplineKind) -> BetaFamily:
    """Node-value basis by the substitution route: one full endpoint solve per node.

    Sets f to the unit impulse at one node, computes the centered-difference
    data that impulse produces at both cell ends, and solves the endpoint
    system for the resulting cell polynomial.  Must agree exactly with
    :func:`derive_beta`; the agreement is exercised by the test suite.
    """
    if kind.q is None:
        raise InvalidKind("grid-spline basis requires a node count q")
    n, g, m = kind.n, kind.g, kind.m
    matrix = _hermite_matrix(n)
    table = derive_stencil(g)
    polys = []
    for node in range(-g, g + 2):
        rhs = []
        for i in (0, 1):
            for l in range(m + 1):
                rhs.append(table.weight(l, node - i))
        polys.append(RationalPolynomial(solve_linear_system(matrix, rhs)))
    return BetaFamily(n=n, q=kind.q, polys=tuple(polys))


@dataclass
class ValidationReport:
    """Outcome of the exact family checks; failures are data, not exceptions."""

    checks: list

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failures(self) -> list:
        return [(name, detail) for name, passed, detail in self.checks if not passed]

    def __str__(self):
        return "\n".join(
            f"{'PASS' if passed else 'FAIL'} {name}{': ' + detail if detail else ''}"
            for name, passed, detail in self.checks
        )


def validate_family(beta: BetaFamily) -> ValidationReport:
    """Run every exact identity the node-value family must satisfy."""
    checks = []
    g, m, n = beta.g, beta.m, beta.n
    zero = RationalPolynomial()
    label = f"({n},{beta.q})"

    def edge(offset):
        if -g <= offset <= g + 1:
            return beta.poly(offset)
        return zero

    bad = [
        offset
        for offset in range(-g, g + 2)
        for at, want in ((0, int(offset == 0)), (1, int(offset == 1)))
        if beta.poly(offset)(Fraction(at)) != want
    ]
    checks.append((f"{label} node interpolation", not bad, f"offsets {bad}" if bad else ""))

    total = RationalPolynomial()
    for p in beta.polys:
        total = total + p
    ok = total == RationalPolynomial.constant(1)
    checks.append((f"{label} partition of unity", ok, "" if ok else f"sum = {total}"))

    bad = []
    for l in range(m + 1):
        for offset in range(-g, g + 3):
            left = edge(offset).derivative(l)(Fraction(1))
            right = edge(offset - 1).derivative(l)(Fraction(0))
            if left != right:
                bad.append((l, offset))
    checks.append((f"{label} smoothness chain", not bad, f"(order, offset) {bad}" if bad else ""))

    bad = [
        offset
        for offset in range(-g, g + 2)
        if beta.poly(offset) != beta.poly(1 - offset).reflected()
    ]
    checks.append((f"{label} reflection symmetry", not bad, f"offsets {bad}" if bad else ""))

    bad = [offset for offset in range(-g, g + 2) if beta.poly(offset).degree > n]
    checks.append((f"{label} degree bound", not bad, f"offsets {bad}" if bad else ""))

    bad = []
    for p in range(min(n, 2 * g) + 1):
        assembled = RationalPolynomial()
        for offset in range(-g, g + 2):
            assembled = assembled + beta.poly(offset) * Fraction(offset) ** p
        if assembled != RationalPolynomial.monomial(p):
            bad.append(p)
    checks.append((f"{label} monomial reproduction", not bad, f"powers {bad}" if bad else ""))

    return ValidationReport(checks=checks)


def beta_eval(beta: BetaFamily, derivative_order: int, xi: float) -> list:
    """Weights multiplying the q node values at cell fraction xi.

    Uses the precomputed Horner arrays of the requested derivative order;
    orders above m would interpolate a discontinuous quantity and are
    rejected.
    """
    if not 0 <= derivative_order <= beta.m:
        raise DerivativeTooHigh(
            f"derivative order {derivative_order} not in 0..{beta.m} for kind ({beta.n},{beta.q})"
        )
    arrays = beta.horner_by_order[derivative_order]
    x = float(xi)
    return [_horner(c, x) for c in arrays]


def export_records(beta: BetaFamily) -> list:
    """Rows for the coefficient dump: exact "num/den" strings plus Horner floats.

    Field names are stable: n, q, i, coeffs_exact (ascending powers),
    coeffs_horner (degree-descending floats).
    """
    records = []
    for offset in range(-beta.g, beta.g + 2):
        p = beta.poly(offset)
        records.append(
            {
                "n": beta.n,
                "q": beta.q,
                "i": offset,
                "coeffs_exact": [rational_to_str(c) for c in p.coeffs],
                "coeffs_horner": list(p.horner_coeffs()),
            }
        )
    return records
