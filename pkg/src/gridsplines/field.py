"""D-dimensional grid fields and tensor-product spline evaluation.

A :class:`GridField` stores scalar samples on a regular rectangular grid with
per-axis spacings.  Evaluation rescales the query point to unit cells, gathers
the q**D node values the stencil needs, evaluates the per-axis basis weights,
and accumulates one fused sum over the patch.

The accumulation order is pinned: a row-major loop nest over the patch with
the last axis innermost.  The unrolled q = 4 kernel performs the same
floating-point operations in the same order as the generic kernel and is
therefore bitwise identical to it.
"""

import itertools
import math
import struct
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .basis import SplineKind, beta_eval, derive_alpha, derive_beta
from .errors import InvalidKind, OutOfDomain

PERIODIC = "periodic"
STRICT = "strict"


@dataclass(frozen=True, eq=False)
class GridField:
    """Immutable scalar samples on a regular grid.

    ``data`` is row-major with the last axis contiguous; node (j_1..j_D) sits
    at physical position (j_1*h_1, ..., j_D*h_D).  ``boundary`` selects how
    evaluation treats the edges: PERIODIC wraps indices, STRICT raises
    :class:`OutOfDomain` when the stencil leaves the grid.
    """

    data: np.ndarray
    h: tuple
    boundary: str = PERIODIC

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64, order="C")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        h = self.h if isinstance(self.h, (tuple, list, np.ndarray)) else (self.h,) * data.ndim
        h = tuple(float(v) for v in h)
        if len(h) != data.ndim:
            raise ValueError(f"need one grid constant per axis: got {len(h)} for {data.ndim} axes")
        if any(v <= 0 for v in h):
            raise ValueError("grid constants must be positive")
        object.__setattr__(self, "h", h)
        if self.boundary not in (PERIODIC, STRICT):
            raise ValueError(f"boundary must be {PERIODIC!r} or {STRICT!r}, got {self.boundary!r}")

    @property
    def dims(self) -> tuple:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @classmethod
    def sample(cls, func: Callable, dims, h, boundary: str = PERIODIC) -> "GridField":
        """Tabulate ``func`` on the grid nodes."""
        dims = tuple(int(d) for d in dims)
        h = h if isinstance(h, (tuple, list, np.ndarray)) else (h,) * len(dims)
        h = tuple(float(v) for v in h)
        data = np.empty(dims, dtype=np.float64)
        for idx in np.ndindex(*dims):
            data[idx] = func(tuple(i * hj for i, hj in zip(idx, h)))
        return cls(data=data, h=h, boundary=boundary)


@dataclass(frozen=True)
class CellCoordinates:
    """Integer cell indices plus in-cell fractions, one pair per axis."""

    cell: tuple
    frac: tuple


@dataclass(frozen=True, eq=False)
class LocalPatch:
    """The q**D node values around one cell.

    ``values`` has shape (q,)*D; storage index t along an axis corresponds to
    node offset t - g, so storage (g, ..., g) is the cell's lower corner.
    """

    q: int
    values: np.ndarray


def grid_coordinates(point: Sequence[float], field: GridField) -> CellCoordinates:
    """Split a point into cell indices and unit-cell fractions.

    Floor semantics: negative coordinates land in the correct cell.  A
    fraction that rounds up to 1.0 is folded into the next cell so the
    invariant 0 <= frac < 1 always holds.
    """
    if len(point) != field.ndim:
        raise ValueError(f"point has {len(point)} coordinates, field has {field.ndim} axes")
    cells = []
    fracs = []
    for x, hj in zip(point, field.h):
        u = x / hj
        c = math.floor(u)
        frac = u - c
        if frac >= 1.0:
            c += 1
            frac = 0.0
        cells.append(int(c))
        fracs.append(frac)
    return CellCoordinates(cell=tuple(cells), frac=tuple(fracs))


def gather_local(field: GridField, cell: Sequence[int], g: int) -> LocalPatch:
    """Copy the q**D node values whose offsets span -g..g+1 around the cell."""
    q = 2 * g + 2
    axes = []
    for c, extent in zip(cell, field.dims):
        start = c - g
        idx = np.arange(start, start + q)
        if field.boundary == PERIODIC:
            idx %= extent
        elif start < 0 or start + q > extent:
            raise OutOfDomain(
                f"stencil nodes [{start}, {start + q}) leave the 0..{extent - 1} axis range"
            )
        axes.append(idx)
    return LocalPatch(q=q, values=field.data[np.ix_(*axes)])


def _accumulate(values, gammas) -> float:
    """Row-major weighted sum over the patch; last axis innermost."""
    acc = 0.0
    pos = 0
    if len(gammas) == 1:
        for gv in gammas[0]:
            acc += values[pos] * gv
            pos += 1
        return acc
    last = gammas[-1]
    for outer in itertools.product(*gammas[:-1]):
        w = outer[0]
        for v in outer[1:]:
            w = w * v
        for gv in last:
            acc += values[pos] * (w * gv)
            pos += 1
    return acc


def _accumulate_unrolled4(values, gammas) -> float:
    """Same operations as :func:`_accumulate` with the inner q = 4 loop written out."""
    acc = 0.0
    pos = 0
    if len(gammas) == 1:
        g0 = gammas[0]
        acc += values[0] * g0[0]
        acc += values[1] * g0[1]
        acc += values[2] * g0[2]
        acc += values[3] * g0[3]
        return acc
    last = gammas[-1]
    l0, l1, l2, l3 = last[0], last[1], last[2], last[3]
    for outer in itertools.product(*gammas[:-1]):
        w = outer[0]
        for v in outer[1:]:
            w = w * v
        acc += values[pos] * (w * l0)
        acc += values[pos + 1] * (w * l1)
        acc += values[pos + 2] * (w * l2)
        acc += values[pos + 3] * (w * l3)
        pos += 4
    return acc


def _accumulate_split(values, gammas, axis: int, threshold: int):
    """Row-major weighted sum split into (low, high) by one axis index."""
    low = 0.0
    high = 0.0
    pos = 0
    for idx in itertools.product(*(range(len(g)) for g in gammas)):
        w = gammas[0][idx[0]]
        for j in range(1, len(gammas)):
            w = w * gammas[j][idx[j]]
        term = values[pos] * w
        if idx[axis] < threshold:
            low += term
        else:
            high += term
        pos += 1
    return low, high


def _grid_family(kind: SplineKind):
    if kind.q is None:
        raise InvalidKind("field evaluation requires a grid-spline kind (n, q)")
    return derive_beta(kind)


def _pick_kernel(kernel: str, q: int):
    if kernel == "auto":
        return _accumulate_unrolled4 if q == 4 else _accumulate
    if kernel == "generic":
        return _accumulate
    if kernel == "unrolled":
        if q != 4:
            raise ValueError(f"the unrolled kernel only exists for q = 4, not q = {q}")
        return _accumulate_unrolled4
    raise ValueError(f"unknown kernel {kernel!r}")


def evaluate_at_cell(
    field: GridField,
    cell: Sequence[int],
    frac: Sequence[float],
    kind: SplineKind,
    orders: Sequence[int] = None,
    kernel: str = "auto",
) -> float:
    """Evaluate with explicitly given cell coordinates.

    This is the fixed-cell core of :func:`evaluate`; it is also the tool for
    probing one-sided limits at cell boundaries (frac = 1.0 in the left cell
    versus frac = 0.0 in the right cell).
    """
    family = _grid_family(kind)
    if orders is None:
        orders = (0,) * field.ndim
    patch = gather_local(field, cell, family.g)
    gammas = [beta_eval(family, orders[j], frac[j]) for j in range(field.ndim)]
    values = patch.values.ravel().tolist()
    acc = _pick_kernel(kernel, family.q)(values, gammas)
    if any(orders):
        scale = 1.0
        for hj, lj in zip(field.h, orders):
            scale *= hj ** (-lj)
        acc *= scale
    return acc


def evaluate(field: GridField, point: Sequence[float], kind: SplineKind, kernel: str = "auto") -> float:
    """Interpolated field value at an arbitrary point.

    Per axis the q basis weights are evaluated once at the cell fraction;
    the result is a single fused sum of the q**D patch values against the
    tensor product of those weights.
    """
    cc = grid_coordinates(point, field)
    return evaluate_at_cell(field, cc.cell, cc.frac, kind, kernel=kernel)


def evaluate_derivative(
    field: GridField,
    point: Sequence[float],
    kind: SplineKind,
    orders: Sequence[int],
    kernel: str = "auto",
) -> float:
    """Interpolated mixed partial derivative, orders given per axis.

    The per-axis weights come from the derivative Horner arrays; the sum is
    rescaled by the grid constants (chain rule for the unit-cell variable).
    Orders above m are rejected because the interpolant would not be
    continuous there.
    """
    if len(orders) != field.ndim:
        raise ValueError(f"need one derivative order per axis, got {len(orders)}")
    cc = grid_coordinates(point, field)
    return evaluate_at_cell(field, cc.cell, cc.frac, kind, orders=tuple(orders), kernel=kernel)


def partitioned_evaluate(
    field: GridField,
    point: Sequence[float],
    kind: SplineKind,
    split_axis: int,
    split_index: int,
):
    """Evaluate as two partial sums split by node index along one axis.

    Stencil terms whose (unwrapped) node index along ``split_axis`` is below
    ``split_index`` go into the first sum, the rest into the second; the two
    add up to :func:`evaluate`.  This mirrors running on two memory domains
    that each own a slab of nodes.
    """
    family = _grid_family(kind)
    cc = grid_coordinates(point, field)
    patch = gather_local(field, cc.cell, family.g)
    gammas = [beta_eval(family, 0, cc.frac[j]) for j in range(field.ndim)]
    values = patch.values.ravel().tolist()
    threshold = split_index - (cc.cell[split_axis] - family.g)
    return _accumulate_split(values, gammas, split_axis, threshold)


def evaluate_hermite(provider: Callable, point: Sequence[float], n: int) -> float:
    """Tensor-product interpolation from value and derivative data.

    ``provider(orders, node)`` must return the mixed derivative of the target
    function with per-axis orders ``orders`` (each 0..m) at ``node`` (each
    coordinate 0 or 1).  It is called exactly once per combination, i.e.
    2**D * (m+1)**D times.  ``point`` lives in the unit cell [0, 1]**D.
    """
    family = derive_alpha(n)
    m = family.m
    D = len(point)
    tables = [family.eval_table(float(x)) for x in point]
    acc = 0.0
    for orders in itertools.product(range(m + 1), repeat=D):
        for node in itertools.product((0, 1), repeat=D):
            w = tables[0][orders[0]][node[0]]
            for j in range(1, D):
                w = w * tables[j][orders[j]][node[j]]
            acc += provider(orders, node) * w
    return acc


_MAGIC = b"GRIDFLD1"
_BOUNDARY_CODE = {PERIODIC: 0, STRICT: 1}
_BOUNDARY_NAME = {0: PERIODIC, 1: STRICT}


def save_field(field: GridField, path) -> None:
    """Write the binary field container (layout documented in the README)."""
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", field.ndim))
        fh.write(struct.pack(f"<{field.ndim}I", *field.dims))
        fh.write(struct.pack(f"<{field.ndim}d", *field.h))
        fh.write(struct.pack("<B", _BOUNDARY_CODE[field.boundary]))
        fh.write(np.ascontiguousarray(field.data, dtype="<f8").tobytes())


def load_field(path) -> GridField:
    """Read a field container written by :func:`save_field`."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[: len(_MAGIC)] != _MAGIC:
        raise ValueError(f"{path}: not a grid field container (bad magic)")
    off = len(_MAGIC)
    (ndim,) = struct.unpack_from("<I", raw, off)
    off += 4
    dims = struct.unpack_from(f"<{ndim}I", raw, off)
    off += 4 * ndim
    h = struct.unpack_from(f"<{ndim}d", raw, off)
    off += 8 * ndim
    (bcode,) = struct.unpack_from("<B", raw, off)
    off += 1
    if bcode not in _BOUNDARY_NAME:
        raise ValueError(f"{path}: unknown boundary code {bcode}")
    count = int(np.prod(dims))
    expected = off + 8 * count
    if len(raw) != expected:
        raise ValueError(f"{path}: truncated or oversized payload ({len(raw)} vs {expected} bytes)")
    data = np.frombuffer(raw, dtype="<f8", count=count, offset=off).reshape(dims)
    return GridField(data=data, h=h, boundary=_BOUNDARY_NAME[bcode])
