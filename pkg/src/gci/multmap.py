"""Multiplication maps between first-cohomology groups, as exact matrices.

Multiplying a two-chart Laurent basis monomial by a section of L[d] and
keeping only the terms with both P^1 exponents negative lands back in the
Laurent basis of the target group; collecting coefficients column by
column gives the matrix of the induced map on H^1.  The sign convention
is the standard two-chart coboundary delta(t0, t1) = t0 - t1, under which
the doubly-negative part of the product *is* the image class, with no
extra sign.

Kernels, ranks and cokernels are computed exactly: denominators are
cleared column-wise, the integer matrix is brought to row echelon form by
fraction-free (Bareiss) elimination with first-nonzero pivoting, and each
kernel vector is normalized to a primitive integer vector whose first
nonzero entry is positive, ordered by free column.  Everything here is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .ambient import LineBundle
from .cohomology import CohGroup, h1_cech_basis, h1_group
from .errors import DegreeError
from .poly import MultiPoly


@dataclass(frozen=True, eq=False)
class MultMap:
    """An exact matrix of multiplication by a section between two
    cohomology groups with Laurent bases on the same P^1 factor.
    Rows index the target basis, columns the source basis."""

    multiplier: MultiPoly
    source: CohGroup
    target: CohGroup
    factor: int
    matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.target.dimension, self.source.dimension)

    def apply(self, vector) -> list[Fraction]:
        if len(vector) != self.source.dimension:
            raise DegreeError("vector length does not match source dimension")
        return [sum((row[j] * vector[j] for j in range(len(vector))), Fraction(0))
                for row in self.matrix]


@dataclass(frozen=True)
class KernelBasis:
    """Primitive integer kernel vectors in echelon order (one per free
    column, ascending), each with positive first nonzero entry."""

    vectors: tuple[tuple[int, ...], ...]
    free_columns: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.vectors)


def build_mult_map(multiplier: MultiPoly, source: CohGroup, target: CohGroup,
                   t: int) -> MultMap:
    """Matrix of the map q -> doubly-negative part of (multiplier * q)
    in the given bases."""
    if multiplier.prime is not None:
        raise DegreeError("multiplication maps are built over the rationals")
    if source.basis is None or target.basis is None:
        raise DegreeError("source and target need explicit bases")
    expected = tuple(s + m for s, m in zip(source.bundle.degrees, multiplier.degrees))
    if tuple(target.bundle.degrees) != expected:
        raise DegreeError(
            f"target degrees {target.bundle.degrees} != source + multiplier {expected}"
        )
    ambient = multiplier.ambient
    offsets = ambient.var_offsets()
    lo, hi = offsets[t], offsets[t + 1]
    index = {}
    for i, mono in enumerate(target.basis):
        ((exps, _),) = mono.terms.items()
        index[exps] = i
    rows = target.dimension
    cols = [
        _projected_column(multiplier, mono, lo, hi, index, rows)
        for mono in source.basis
    ]
    matrix = tuple(tuple(col[i] for col in cols) for i in range(rows))
    return MultMap(multiplier, source, target, t, matrix)


def _projected_column(multiplier, mono, lo, hi, index, rows):
    column = [Fraction(0)] * rows
    product = multiplier * mono
    for exps, coeff in product.terms.items():
        if exps[lo] < 0 and exps[lo + 1] < 0:
            i = index.get(exps)
            if i is None:
                raise DegreeError(
                    f"doubly-negative term {exps} missing from the target basis"
                )
            column[i] += coeff
    return column


def assemble_mult_map(F: MultiPoly, L: LineBundle, M: LineBundle,
                      d: int, e: int) -> MultMap:
    """The induced map on H^1 from (L-dual tensor M)[-d-e] to M[-e] over
    the distinguished P^1, for a hypersurface section F of L[d]."""
    ambient = F.ambient
    t = ambient.distinguished
    if t is None:
        raise DegreeError("ambient has no distinguished P^1 factor")
    if L.ambient != ambient or M.ambient != ambient:
        raise DegreeError("bundles must live on the ambient of F")
    if tuple(F.degrees) != tuple(L.twist(d).degrees):
        raise DegreeError(
            f"F has degrees {F.degrees}, expected {L.twist(d).degrees}"
        )
    source = h1_cech_basis(L.dual().tensor(M).twist(-d - e), t)
    target = h1_group(M.twist(-e), t)
    return build_mult_map(F, source, target, t)


def mult_map_kernel_dim(F: MultiPoly, L: LineBundle, M: LineBundle,
                        d: int, e: int) -> int:
    """Kernel dimension of the assembled map, i.e. the number of
    independent sections of M[-e] living on the hypersurface (F)."""
    return kernel_basis(assemble_mult_map(F, L, M, d, e)).dimension


# -- exact linear algebra ----------------------------------------------


def _clear_columns(matrix):
    """Scale each column by the lcm of its denominators.  Returns the
    integer matrix and the positive scale factors."""
    if not matrix:
        return [], []
    rows, cols = len(matrix), len(matrix[0])
    scales = []
    for j in range(cols):
        s = 1
        for i in range(rows):
            s = lcm(s, Fraction(matrix[i][j]).denominator)
        scales.append(s)
    cleared = [
        [int(Fraction(matrix[i][j]) * scales[j]) for j in range(cols)]
        for i in range(rows)
    ]
    return cleared, scales


def _bareiss_echelon(matrix):
    """Fraction-free row echelon form of an integer matrix.  Returns the
    echelon rows and the pivot column list."""
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][c]
        for i in range(r + 1, rows):
            head = m[i][c]
            for j in range(c, cols):
                m[i][j] = (pivot * m[i][j] - head * m[r][j]) // prev
        pivots.append(c)
        prev = pivot
        r += 1
        if r == rows:
            break
    return m[: len(pivots)], pivots


def matrix_rank(matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    cleared, _ = _clear_columns([list(row) for row in matrix])
    _, pivots = _bareiss_echelon(cleared)
    return len(pivots)


def kernel_vectors(matrix, cols: int) -> KernelBasis:
    """Exact kernel of a rational matrix with the stated number of
    columns (needed because the matrix may have zero rows)."""
    rows = [list(row) for row in matrix]
    if rows and any(len(row) != cols for row in rows):
        raise DegreeError("ragged matrix")
    if not rows:
        units = tuple(
            tuple(1 if i == j else 0 for i in range(cols)) for j in range(cols)
        )
        return KernelBasis(units, tuple(range(cols)))
    cleared, scales = _clear_columns(rows)
    echelon, pivots = _bareiss_echelon(cleared)
    pivot_set = set(pivots)
    free = [j for j in range(cols) if j not in pivot_set]
    vectors = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            s = sum(
                (Fraction(echelon[i][j]) * v[j] for j in range(pc + 1, cols) if v[j]),
                Fraction(0),
            )
            v[pc] = -s / echelon[i][pc]
        # undo the column scaling, then normalize to a primitive vector
        v = [x * s for x, s in zip(v, scales)]
        den = lcm(*(x.denominator for x in v)) if cols else 1
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        lead = next(x for x in ints if x != 0)
        if lead < 0:
            ints = [-x for x in ints]
        vectors.append(tuple(ints))
    return KernelBasis(tuple(vectors), tuple(free))


def kernel_basis(mm: MultMap) -> KernelBasis:
    return kernel_vectors(mm.matrix, mm.source.dimension)


def cokernel_dim(mm: MultMap) -> int:
    return mm.target.dimension - matrix_rank(mm.matrix)
