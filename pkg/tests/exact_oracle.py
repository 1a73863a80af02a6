"""Brute-force tensor interpolant oracle.

Independent of the per-axis machinery under test: the full multidimensional
Taylor system and the full cell-polynomial system are assembled over all axes
at once and solved with exact rational elimination, then the cell polynomial
is evaluated exactly.  Shares only the linear solver with the library.
"""

import itertools
import math
from fractions import Fraction

from gridsplines.exact import solve_linear_system


def direct_evaluate(data, cell, fracs, n, g):
    """Exact value of the unique tensor cell polynomial at the given fractions.

    ``data`` is a D-dimensional periodic array of samples, ``cell`` the cell
    indices, ``fracs`` the in-cell fractions as Fractions.  Returns a Fraction.
    """
    D = len(cell)
    m = (n - 1) // 2
    dims = data.shape

    # Taylor data per cell corner: raw monomial coefficients of the unique
    # interpolant through the symmetric node block around that corner.
    t_orders = list(itertools.product(range(2 * g + 1), repeat=D))
    v_nodes = list(itertools.product(range(-g, g + 1), repeat=D))
    lagrange = [
        [_tensor_power(v, k) for k in t_orders]
        for v in v_nodes
    ]
    taylor = {}
    for corner in itertools.product((0, 1), repeat=D):
        rhs = []
        for v in v_nodes:
            idx = tuple((cell[j] + corner[j] + v[j]) % dims[j] for j in range(D))
            rhs.append(Fraction(float(data[idx])))
        taylor[corner] = dict(zip(t_orders, solve_linear_system(lagrange, rhs)))

    # Cell polynomial: mixed derivatives at every corner must equal the
    # factorial-scaled Taylor coefficients of that corner.
    s_orders = list(itertools.product(range(n + 1), repeat=D))
    matrix = []
    rhs = []
    for corner in itertools.product((0, 1), repeat=D):
        for lvec in itertools.product(range(m + 1), repeat=D):
            row = []
            for k in s_orders:
                entry = Fraction(1)
                for j in range(D):
                    kj, lj = k[j], lvec[j]
                    if kj < lj:
                        entry = Fraction(0)
                        break
                    falling = math.factorial(kj) // math.factorial(kj - lj)
                    entry *= falling * Fraction(corner[j]) ** (kj - lj)
                row.append(entry)
            matrix.append(row)
            scale = 1
            for lj in lvec:
                scale *= math.factorial(lj)
            rhs.append(scale * taylor[corner][lvec])
    coeffs = solve_linear_system(matrix, rhs)

    value = Fraction(0)
    for k, c in zip(s_orders, coeffs):
        value += c * _tensor_power(fracs, k)
    return value


def _tensor_power(values, exponents):
    out = Fraction(1)
    for v, e in zip(values, exponents):
        out *= Fraction(v) ** e
    return out
