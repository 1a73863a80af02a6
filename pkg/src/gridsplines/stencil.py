"""Centered-difference weights from symmetric Lagrange interpolation.

The weights turn the 2g+1 node values around a grid node into Taylor data for
that node.  Because the node set is symmetric, the data is the same no matter
which neighbouring cell asks for it, which is what makes the assembled spline
globally smooth.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import solve_linear_system


@dataclass(frozen=True)
class StencilTable:
    """Difference weights for one half-width g, all orders l = 0..2g.

    ``coeffs[l]`` holds the weights for node offsets -g..g (storage index
    ``offset + g``).  Row l applied to the node values yields the order-l
    Taylor value at the center node: l! times the x**l coefficient of the
    degree-2g interpolant through the nodes.  Exact for polynomials of
    degree <= 2g.
    """

    g: int
    coeffs: tuple

    @property
    def q(self) -> int:
        """Node count of the spline built on this stencil (2g + 2)."""
        return 2 * self.g + 2

    def row(self, order: int) -> tuple:
        return self.coeffs[order]

    def weight(self, order: int, offset: int) -> Fraction:
        """Weight of f(node + offset); zero outside the symmetric range."""
        if abs(offset) > self.g:
            return Fraction(0)
        return self.coeffs[order][offset + self.g]

    def apply(self, order: int, values) -> Fraction:
        """Order-``order`` difference of 2g+1 values centered on the node."""
        return sum(c * v for c, v in zip(self.coeffs[order], values))


@lru_cache(maxsize=None)
def derive_stencil(g: int) -> StencilTable:
    """Solve the symmetric interpolation system on nodes -g..g.

    Each unit node value is propagated through the Vandermonde system once;
    column j of the inverse gives the contribution of f(node_j) to every
    Taylor order.
    """
    if g < 1:
        raise ValueError(f"stencil half-width must be >= 1, got {g}")
    size = 2 * g + 1
    nodes = range(-g, g + 1)
    vandermonde = [[Fraction(v) ** p for p in range(size)] for v in nodes]
    columns = []
    for j in range(size):
        unit = [Fraction(int(r == j)) for r in range(size)]
        columns.append(solve_linear_system(vandermonde, unit))
    coeffs = tuple(
        tuple(math.factorial(order) * columns[j][order] for j in range(size))
        for order in range(size)
    )
    return StencilTable(g=g, coeffs=coeffs)
