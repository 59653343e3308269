"""Per-column criteria for Graver generators and monoid normality.

For each Graver column three questions are decided exactly: is it a
non-negative integer combination of the simple columns (redundant), a
non-negative rational combination (integral), or an arbitrary integer
combination (in the fraction field)?  Redundancy implies the other two.
Normality of an affine monoid is decided by searching the generator
zonotope's bounding box for lattice points of the cone that the monoid
misses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .config import BlockedConfiguration
from .errors import NonPointedError
from .graver import support_sequences
from .intlin import (
    IntegerMatrix,
    IntVector,
    RationalVector,
    integer_combination,
    lattice_from_vectors,
    lp_feasible_nonneg,
    positive_functional,
)
from .product import GraverColumnRecord, SegrePresentation, graver_columns

ColumnsLike = Union[IntegerMatrix, Sequence[Sequence[int]]]

# failure-memo cap for the bounded search; beyond this the search still
# terminates, it just stops caching
_MEMO_LIMIT = 1_000_000


def _columns_of(simple: ColumnsLike) -> list[IntVector]:
    if isinstance(simple, IntegerMatrix):
        return list(simple.columns())
    return [tuple(int(x) for x in c) for c in simple]


def _dot(w: Sequence[Fraction], v: Sequence[int]) -> Fraction:
    return sum((a * b for a, b in zip(w, v)), Fraction(0))


def _bounded_nonneg_combination(
    cols: Sequence[IntVector],
    target: Sequence[int],
    w: Sequence[Fraction],
    memo: Optional[set] = None,
) -> Optional[list[int]]:
    """Depth-first search for integer lam >= 0 with sum(lam_i cols_i) = target.

    `w` is a functional with w.col >= 1 for every column, which bounds the
    total multiplicity of any representation by w.target and makes the
    search complete.  Columns are tried in index order, multiplicities
    high to low.
    """
    k = len(cols)
    n = len(target)
    all_nonneg = all(all(x >= 0 for x in c) for c in cols)
    w_cols = [_dot(w, c) for c in cols]
    if memo is None:
        memo = set()

    def rec(i: int, rest: tuple, w_rest: Fraction) -> Optional[list[int]]:
        if not any(rest):
            return [0] * (k - i)
        if i == k or w_rest < 1:
            return None
        if all_nonneg and any(x < 0 for x in rest):
            return None
        key = (i, rest)
        if key in memo:
            return None
        tmax = int(w_rest / w_cols[i])
        if all_nonneg:
            for j in range(n):
                if cols[i][j] > 0:
                    tmax = min(tmax, rest[j] // cols[i][j])
        for t in range(tmax, -1, -1):
            nxt = tuple(x - t * y for x, y in zip(rest, cols[i]))
            sub = rec(i + 1, nxt, w_rest - t * w_cols[i])
            if sub is not None:
                return [t] + sub
        if len(memo) < _MEMO_LIMIT:
            memo.add(key)
        return None

    return rec(0, tuple(int(x) for x in target), _dot(w, target))


def is_redundant(m: Sequence[int], simple: ColumnsLike) -> Optional[list[int]]:
    """Non-negative integer combination of the simple columns equal to `m`, or None.

    Complete bounded search; requires a functional that is >= 1 on every
    simple column (otherwise the search space is unbounded and
    NonPointedError is raised).
    """
    cols = _columns_of(simple)
    w = positive_functional(cols)
    if w is None:
        raise NonPointedError("simple columns do not generate a pointed cone")
    return _bounded_nonneg_combination(cols, m, w)


def is_integral(m: Sequence[int], simple: ColumnsLike) -> Optional[RationalVector]:
    """Non-negative exact rational combination equal to `m`, or None."""
    cols = _columns_of(simple)
    matrix = IntegerMatrix.from_columns(cols, len(tuple(m)))
    return lp_feasible_nonneg(matrix, tuple(m))


def is_in_fraction_field(m: Sequence[int], simple: ColumnsLike) -> Optional[list[int]]:
    """Integer combination (any sign) equal to `m`, or None."""
    return integer_combination(_columns_of(simple), tuple(m))


def _opposite_rearrangement(
    cfg: BlockedConfiguration,
    from_blocks: Sequence[int],
    choice: Sequence[int],
    to_blocks: Sequence[int],
) -> Optional[tuple[int, ...]]:
    total = [0] * cfg.ambient_dim
    for alpha, idx in zip(from_blocks, choice):
        col = cfg.column(alpha, idx)
        total = [x + y for x, y in zip(total, col)]
    target = tuple(total)
    for cand in itertools.product(*(range(cfg.block_sizes[a]) for a in to_blocks)):
        s = [0] * cfg.ambient_dim
        for alpha, idx in zip(to_blocks, cand):
            col = cfg.column(alpha, idx)
            s = [x + y for x, y in zip(s, col)]
        if tuple(s) == target:
            return cand
    return None


def veronese_shortcut(
    g: Sequence[int], beta: Sequence[int], b: BlockedConfiguration
) -> Optional[tuple[int, ...]]:
    """Index sequence beta' for -g with b^g_beta = b^{-g}_{beta'}, or None.

    Presence certifies that every Graver generator built on (g, beta) is a
    product of simple generators, with no integer-programming search.
    """
    gv = tuple(int(x) for x in g)
    pos, neg = support_sequences(gv)
    return _opposite_rearrangement(b, pos, beta, neg)


@dataclass(frozen=True)
class NormalityResult:
    normal: bool
    hole: Optional[IntVector] = None

    def __bool__(self) -> bool:
        return self.normal


def _lattice_points_in_box(hnf_rows, lo, hi, n):
    """Yield the lattice points y.H inside the box, via the echelon structure of H."""
    pivots = []
    for row in hnf_rows:
        pivots.append(next(j for j, x in enumerate(row) if x))
    r = len(hnf_rows)

    def rec(i: int, x: list):
        start = pivots[i - 1] + 1 if i > 0 else 0
        end = pivots[i] if i < r else n
        for j in range(start, end):
            if not lo[j] <= x[j] <= hi[j]:
                return
        if i == r:
            yield tuple(x)
            return
        p = hnf_rows[i][pivots[i]]
        base = x[pivots[i]]
        y_lo = -((base - lo[pivots[i]]) // p)
        y_hi = (hi[pivots[i]] - base) // p
        for y in range(y_lo, y_hi + 1):
            if y == 0:
                yield from rec(i + 1, x)
            else:
                yield from rec(i + 1, [a + y * b for a, b in zip(x, hnf_rows[i])])

    yield from rec(0, [0] * n)


def is_normal(d: ColumnsLike) -> NormalityResult:
    """Whether the monoid generated by the columns equals group cap cone.

    Candidate holes live in the bounding box of the generator zonotope:
    every lattice point of the group that lies in the cone there is either
    reachable as a non-negative integer combination or witnesses a hole.
    """
    cols = [c for c in _columns_of(d) if any(c)]
    if not cols:
        return NormalityResult(True, None)
    n = len(cols[0])
    w = positive_functional(cols)
    if w is None:
        raise NonPointedError("columns do not generate a pointed cone")
    lo = [sum(min(c[j], 0) for c in cols) for j in range(n)]
    hi = [sum(max(c[j], 0) for c in cols) for j in range(n)]
    lattice = lattice_from_vectors(cols, n)
    matrix = IntegerMatrix.from_columns(cols, n)
    memo: set = set()
    for x in _lattice_points_in_box(lattice.hnf.rows, lo, hi, n):
        if not any(x):
            continue
        if _bounded_nonneg_combination(cols, x, w, memo) is not None:
            continue
        if lp_feasible_nonneg(matrix, x) is not None:
            return NormalityResult(False, x)
    return NormalityResult(True, None)


@dataclass(frozen=True)
class ColumnVerdict:
    """Verdicts and witness for one Graver column."""

    g: IntVector
    beta: tuple[int, ...]
    gamma: tuple[int, ...]
    vector: IntVector
    redundant: bool
    integral: bool
    in_fraction_field: bool
    witness: Optional[tuple] = None
    witness_kind: Optional[str] = None


@dataclass(frozen=True)
class ProductReport:
    """Aggregated verdicts for a Segre presentation."""

    verdicts: tuple[ColumnVerdict, ...]
    all_redundant: bool
    dense: bool
    finite: bool
    segre_equals_tfp: bool
    tfp_normal: Optional[bool] = None
    tfp_normal_hole: Optional[IntVector] = None
    note: Optional[str] = None


def _simple_index(p: SegrePresentation, alpha: int, beta: int, gamma: int) -> int:
    b_off = sum(
        p.base_b.block_sizes[a] * p.base_c.block_sizes[a] for a in range(alpha)
    )
    return b_off + beta * p.base_c.block_sizes[alpha] + gamma


def _shortcut_witness(p: SegrePresentation, rec: GraverColumnRecord, n_simple: int) -> Optional[list[int]]:
    pos, neg = support_sequences(rec.g)
    beta_prime = veronese_shortcut(rec.g, rec.beta, p.base_b)
    if beta_prime is not None:
        lam = [0] * n_simple
        for j, alpha in enumerate(neg):
            lam[_simple_index(p, alpha, beta_prime[j], rec.gamma[j])] += 1
        return lam
    gamma_prime = _opposite_rearrangement(p.base_c, neg, rec.gamma, pos)
    if gamma_prime is not None:
        lam = [0] * n_simple
        for i, alpha in enumerate(pos):
            lam[_simple_index(p, alpha, rec.beta[i], gamma_prime[i])] += 1
        return lam
    return None


def analyze_product(p: SegrePresentation, check_normality: bool = False) -> ProductReport:
    """Decide redundancy, integrality and fraction-field membership per column.

    Rearrangement certificates are tried before the bounded integer
    search; their witnesses are verified by exact recombination either
    way.  With `check_normality` the simple-column monoid is also tested.
    """
    simple = p.simple_matrix()
    cols = list(simple.columns())
    w = positive_functional(cols)
    if w is None:
        raise NonPointedError("simple columns do not generate a pointed cone")
    verdicts = []
    memo: set = set()
    for rec in graver_columns(p):
        witness = _shortcut_witness(p, rec, len(cols))
        if witness is None:
            witness = _bounded_nonneg_combination(cols, rec.vector, w, memo)
        if witness is not None:
            combo = tuple(
                sum(witness[i] * cols[i][j] for i in range(len(cols)))
                for j in range(simple.nrows)
            )
            if combo != rec.vector:
                raise ArithmeticError("redundancy witness failed to recombine")
            verdicts.append(
                ColumnVerdict(
                    rec.g, rec.beta, rec.gamma, rec.vector,
                    redundant=True, integral=True, in_fraction_field=True,
                    witness=tuple(witness), witness_kind="redundancy",
                )
            )
            continue
        rational = lp_feasible_nonneg(simple, rec.vector)
        integer = integer_combination(cols, rec.vector)
        if rational is not None:
            witness_val, kind = tuple(rational), "integrality"
        elif integer is not None:
            witness_val, kind = tuple(integer), "fraction_field"
        else:
            witness_val, kind = None, None
        verdicts.append(
            ColumnVerdict(
                rec.g, rec.beta, rec.gamma, rec.vector,
                redundant=False,
                integral=rational is not None,
                in_fraction_field=integer is not None,
                witness=witness_val, witness_kind=kind,
            )
        )
    all_red = all(v.redundant for v in verdicts)
    dense = all(v.in_fraction_field for v in verdicts)
    finite = all(v.integral for v in verdicts)
    tfp_normal = None
    hole = None
    if check_normality:
        result = is_normal(simple)
        tfp_normal = result.normal
        hole = result.hole
    note = None
    if dense and finite and not all_red:
        note = "normalization of the fiber product equals the Segre product"
    return ProductReport(
        verdicts=tuple(verdicts),
        all_redundant=all_red,
        dense=dense,
        finite=finite,
        segre_equals_tfp=all_red,
        tfp_normal=tfp_normal,
        tfp_normal_hole=hole,
        note=note,
    )
