"""Blocked vector configurations and grading compatibility.

A blocked configuration is an integer matrix whose columns are grouped
into blocks; block alpha holds the columns sharing the degree a_alpha.
This module checks whether one configuration is graded by another
(returning an exact rational certificate) and whether a configuration
lies in an affine hyperplane off the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BlockMismatchError, DimensionMismatchError
from .intlin import IntegerMatrix, IntVector, RationalMatrix, RationalVector, solve_rational


@dataclass(frozen=True)
class BlockedConfiguration:
    """Integer matrix columns partitioned into blocks.

    Blocks may be empty (a degree with no variables).  `labels`, when
    given, names the columns for display only.
    """

    matrix: IntegerMatrix
    block_sizes: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if any(s < 0 for s in self.block_sizes):
            raise BlockMismatchError("negative block size")
        if sum(self.block_sizes) != self.matrix.ncols:
            raise BlockMismatchError(
                f"block sizes sum to {sum(self.block_sizes)} but matrix has "
                f"{self.matrix.ncols} columns"
            )
        if self.labels is not None and len(self.labels) != self.matrix.ncols:
            raise BlockMismatchError("one label per column required")

    @classmethod
    def singleton(cls, matrix: IntegerMatrix, labels: Optional[Sequence[str]] = None) -> "BlockedConfiguration":
        """Configuration with every column its own block."""
        return cls(matrix, (1,) * matrix.ncols, tuple(labels) if labels else None)

    @property
    def block_count(self) -> int:
        return len(self.block_sizes)

    @property
    def ambient_dim(self) -> int:
        return self.matrix.nrows

    def block_offset(self, alpha: int) -> int:
        return sum(self.block_sizes[:alpha])

    def column(self, alpha: int, beta: int) -> IntVector:
        if not (0 <= alpha < self.block_count and 0 <= beta < self.block_sizes[alpha]):
            raise DimensionMismatchError(f"no column at block {alpha}, index {beta}")
        return self.matrix.column(self.block_offset(alpha) + beta)

    def block_columns(self, alpha: int) -> tuple[IntVector, ...]:
        off = self.block_offset(alpha)
        return tuple(self.matrix.column(off + b) for b in range(self.block_sizes[alpha]))


@dataclass(frozen=True)
class GradingCertificate:
    """Rational matrix M with M * b = a_alpha for every column b in block alpha."""

    degree_matrix: RationalMatrix
    target: BlockedConfiguration

    def degree_of(self, vector: Sequence[int]) -> RationalVector:
        if self.degree_matrix and len(vector) != len(self.degree_matrix[0]):
            raise DimensionMismatchError("vector length does not match certificate width")
        return tuple(sum(Fraction(r) * Fraction(x) for r, x in zip(row, vector)) for row in self.degree_matrix)


def check_condition_star(cfg: BlockedConfiguration) -> bool:
    """True iff the all-ones vector lies in the rational row space of the matrix.

    Equivalently, the columns lie in an affine hyperplane that misses the
    origin, which induces a total grading with every column in degree one.
    """
    ones = IntegerMatrix.from_rows([[1] * cfg.matrix.ncols], cfg.matrix.ncols)
    return solve_rational(cfg.matrix, ones) is not None


def star_functional(cfg: BlockedConfiguration) -> Optional[RationalVector]:
    """The rational functional y with y * column = 1 for all columns, if any."""
    ones = IntegerMatrix.from_rows([[1] * cfg.matrix.ncols], cfg.matrix.ncols)
    sol = solve_rational(cfg.matrix, ones)
    return sol[0] if sol is not None else None


def check_homogeneity(a: BlockedConfiguration, b: BlockedConfiguration) -> Optional[GradingCertificate]:
    """Certificate mapping every column of block alpha of `b` onto a_alpha.

    `a` must have singleton blocks (one degree vector per block).  Returns
    None when no rational certificate exists.
    """
    if any(s != 1 for s in a.block_sizes):
        raise BlockMismatchError("the grading configuration must have singleton blocks")
    if a.block_count != b.block_count:
        raise BlockMismatchError(
            f"grading has {a.block_count} blocks, configuration has {b.block_count}"
        )
    target_cols = []
    for alpha in range(a.block_count):
        target_cols.extend([a.column(alpha, 0)] * b.block_sizes[alpha])
    target = IntegerMatrix.from_columns(target_cols, a.ambient_dim)
    x = solve_rational(b.matrix, target)
    if x is None:
        return None
    return GradingCertificate(x, a)


def first_offending_block(a: BlockedConfiguration, b: BlockedConfiguration) -> int:
    """Smallest alpha whose prefix of blocks already admits no certificate.

    Only meaningful after check_homogeneity returned None.
    """
    for alpha in range(b.block_count):
        ncols = b.block_offset(alpha) + b.block_sizes[alpha]
        prefix = BlockedConfiguration(
            IntegerMatrix.from_columns([b.matrix.column(j) for j in range(ncols)], b.ambient_dim),
            b.block_sizes[: alpha + 1],
        )
        a_prefix = BlockedConfiguration(
            IntegerMatrix.from_columns(
                [a.column(i, 0) for i in range(alpha + 1)], a.ambient_dim
            ),
            (1,) * (alpha + 1),
        )
        if check_homogeneity(a_prefix, prefix) is None:
            return alpha
    return b.block_count - 1
