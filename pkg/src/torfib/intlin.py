"""Exact integer and rational linear algebra.

Everything here runs on arbitrary-precision Python integers and
``fractions.Fraction``; there is no floating point anywhere.  The module
provides the Hermite normal form with its transformation matrix, saturated
integer kernels, lattice membership, exact rational system solving, and a
two-phase exact-rational simplex used as a feasibility oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DimensionMismatchError

IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]
RationalMatrix = tuple[RationalVector, ...]


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense row-major matrix of arbitrary-precision integers."""

    rows: tuple[IntVector, ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimensionMismatchError(
                    f"row of length {len(r)} in a matrix with {self.ncols} columns"
                )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> "IntegerMatrix":
        tup = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(tup[0]) if tup else 0
        return cls(tup, ncols)

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], nrows: Optional[int] = None) -> "IntegerMatrix":
        cols = [tuple(int(x) for x in c) for c in columns]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        for c in cols:
            if len(c) != nrows:
                raise DimensionMismatchError("ragged column list")
        return cls(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "IntegerMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> IntVector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> tuple[IntVector, ...]:
        return tuple(self.column(j) for j in range(self.ncols))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.columns(), self.nrows)

    def mul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatchError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        return IntegerMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, other.column(j))) for j in range(other.ncols))
                for row in self.rows
            ),
            other.ncols,
        )

    def mul_vector(self, v: Sequence[int]) -> IntVector:
        if len(v) != self.ncols:
            raise DimensionMismatchError(f"vector of length {len(v)} against {self.ncols} columns")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.rows)


@dataclass(frozen=True)
class LatticeBasis:
    """Integer basis of a sublattice of Z^n, together with its row HNF.

    The stored basis is already the canonical HNF basis, so two
    LatticeBasis values describe the same lattice iff their ``hnf``
    matrices are equal.
    """

    ambient_dim: int
    basis: tuple[IntVector, ...]
    hnf: IntegerMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)


def _swap_rows(a: list, i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _row_sub(a: list, i: int, j: int, q: int) -> None:
    if q:
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]


def hermite_normal_form(m: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular and U*M = H.  Pivots are positive,
    entries above a pivot are reduced into [0, pivot), and zero rows sit
    at the bottom.
    """
    n, c = m.nrows, m.ncols
    a = [list(r) for r in m.rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    row = 0
    for col in range(c):
        # gcd-reduce column entries at or below `row`
        while True:
            nz = [i for i in range(row, n) if a[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][col]))
            if i0 != row:
                _swap_rows(a, row, i0)
                _swap_rows(u, row, i0)
            if a[row][col] < 0:
                a[row] = [-x for x in a[row]]
                u[row] = [-x for x in u[row]]
            p = a[row][col]
            done = True
            for i in range(row + 1, n):
                if a[i][col]:
                    q = a[i][col] // p
                    _row_sub(a, i, row, q)
                    _row_sub(u, i, row, q)
                    if a[i][col]:
                        done = False
            if done:
                break
        if row < n and a[row][col] != 0:
            p = a[row][col]
            for i in range(row):
                q = a[i][col] // p
                _row_sub(a, i, row, q)
                _row_sub(u, i, row, q)
            row += 1
            if row == n:
                break
    H = IntegerMatrix(tuple(tuple(r) for r in a), c)
    U = IntegerMatrix(tuple(tuple(r) for r in u), n)
    return H, U


def _pivot_index(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x != 0:
            return j
    return -1


def lattice_from_vectors(vectors: Iterable[Sequence[int]], ambient_dim: int) -> LatticeBasis:
    """Canonical lattice basis (HNF rows) of the lattice spanned by `vectors`."""
    vecs = [tuple(int(x) for x in v) for v in vectors]
    for v in vecs:
        if len(v) != ambient_dim:
            raise DimensionMismatchError("lattice generator of wrong length")
    if not vecs:
        return LatticeBasis(ambient_dim, (), IntegerMatrix((), ambient_dim))
    h, _ = hermite_normal_form(IntegerMatrix.from_rows(vecs, ambient_dim))
    rows = tuple(r for r in h.rows if any(r))
    return LatticeBasis(ambient_dim, rows, IntegerMatrix(rows, ambient_dim))


def integer_kernel(m: IntegerMatrix) -> LatticeBasis:
    """Saturated integer kernel {v in Z^d : M*v = 0} of an n x d matrix."""
    h, u = hermite_normal_form(m.transpose())
    kernel_rows = [u.rows[i] for i in range(h.nrows) if not any(h.rows[i])]
    return lattice_from_vectors(kernel_rows, m.ncols)


def codim(m: IntegerMatrix) -> int:
    """Rank of the integer kernel of `m`."""
    return integer_kernel(m).rank


def in_lattice(v: Sequence[int], lattice: LatticeBasis) -> bool:
    """True iff `v` is an integer combination of the lattice basis."""
    if len(v) != lattice.ambient_dim:
        raise DimensionMismatchError(
            f"vector of length {len(v)} against ambient dimension {lattice.ambient_dim}"
        )
    r = [int(x) for x in v]
    for row in lattice.hnf.rows:
        j = _pivot_index(row)
        q, rem = divmod(r[j], row[j])
        if rem:
            return False
        if q:
            r = [x - q * y for x, y in zip(r, row)]
    return not any(r)


def integer_combination(vectors: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[list[int]]:
    """Integer coefficients lam (any sign) with sum(lam_i * vectors_i) = target, or None."""
    vecs = [tuple(int(x) for x in v) for v in vectors]
    n = len(target)
    for v in vecs:
        if len(v) != n:
            raise DimensionMismatchError("generator of wrong length")
    if not vecs:
        return [] if not any(target) else None
    h, u = hermite_normal_form(IntegerMatrix.from_rows(vecs, n))
    r = [int(x) for x in target]
    y = [0] * len(vecs)
    for i, row in enumerate(h.rows):
        j = _pivot_index(row)
        if j < 0:
            continue
        q, rem = divmod(r[j], row[j])
        if rem:
            return None
        y[i] = q
        if q:
            r = [x - q * z for x, z in zip(r, row)]
    if any(r):
        return None
    return [sum(y[i] * u.rows[i][j] for i in range(len(vecs))) for j in range(len(vecs))]


def solve_rational(m: IntegerMatrix, target: IntegerMatrix) -> Optional[RationalMatrix]:
    """Some exact rational X with X*M = target, or None if the system is infeasible.

    When the system is underdetermined the free variables are set to zero,
    so the output is deterministic.
    """
    if m.ncols != target.ncols:
        raise DimensionMismatchError(
            f"target has {target.ncols} columns, matrix has {m.ncols}"
        )
    # Transpose to M^T X^T = target^T and run one fraction elimination.
    rows = m.ncols
    cols = m.nrows
    rhs_cols = target.nrows
    a = [[Fraction(m.rows[j][i]) for j in range(cols)] for i in range(rows)]
    b = [[Fraction(target.rows[j][i]) for j in range(rhs_cols)] for i in range(rows)]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        b[r], b[piv] = b[piv], b[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        b[r] = [x * inv for x in b[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                b[i] = [x - f * y for x, y in zip(b[i], b[r])]
        pivot_of_col[c] = r
        r += 1
    for i in range(r, rows):
        if any(b[i]):
            return None
    x_t = [[Fraction(0)] * rhs_cols for _ in range(cols)]
    for c, i in pivot_of_col.items():
        x_t[c] = b[i]
    return tuple(tuple(x_t[c][j] for c in range(cols)) for j in range(rhs_cols))


Number = Union[int, Fraction]


def lp_feasible_nonneg(s: IntegerMatrix, m: Sequence[Number]) -> Optional[RationalVector]:
    """Exact rational lam >= 0 with S*lam = m, or None if infeasible.

    Phase-1 simplex with Bland's rule; termination needs no tolerances.
    """
    n, k = s.nrows, s.ncols
    if len(m) != n:
        raise DimensionMismatchError(f"right-hand side of length {len(m)} against {n} rows")
    rows = [[Fraction(x) for x in r] for r in s.rows]
    b = [Fraction(x) for x in m]
    for i in range(n):
        if b[i] < 0:
            rows[i] = [-x for x in rows[i]]
            b[i] = -b[i]
    width = k + n
    tab = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(n)] + [b[i]] for i in range(n)]
    basis = [k + i for i in range(n)]
    # phase-1 reduced costs: cost 1 on artificials, 0 elsewhere
    obj = [Fraction(0)] * (width + 1)
    for j in range(width):
        obj[j] = (Fraction(1) if j >= k else Fraction(0)) - sum(tab[i][j] for i in range(n))
    obj[width] = -sum(b)
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(n):
            if tab[i][enter] > 0:
                ratio = tab[i][width] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("phase-1 objective unbounded; inconsistent tableau")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(n):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = obj[enter]
        if f != 0:
            obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter
    if obj[width] != 0:
        return None
    lam = [Fraction(0)] * k
    for i, var in enumerate(basis):
        if var < k:
            lam[var] = tab[i][width]
    return tuple(lam)


def positive_functional(columns: Sequence[Sequence[int]]) -> Optional[RationalVector]:
    """Rational w with w . col >= 1 for every column, or None.

    Existence certifies that the columns generate a pointed cone and
    yields the depth bound used by the bounded integer searches.
    """
    cols = [tuple(int(x) for x in c) for c in columns]
    if not cols:
        return ()
    n = len(cols[0])
    k = len(cols)
    # rows: one per column; variables: w+ (n), w- (n), surplus (k)
    rows = []
    for i, c in enumerate(cols):
        rows.append(list(c) + [-x for x in c] + [-1 if j == i else 0 for j in range(k)])
    sol = lp_feasible_nonneg(IntegerMatrix.from_rows(rows, 2 * n + k), [1] * k)
    if sol is None:
        return None
    return tuple(sol[j] - sol[n + j] for j in range(n))
