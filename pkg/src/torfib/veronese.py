"""Veronese configurations and partition-induced gradings.

V(k, n) holds every non-negative integer vector in n coordinates summing
to k.  A partition of the coordinate set induces a grading of V(k, n1) by
V(k, n0), and the rearrangement map built here certifies that every
extension column of the induced presentation can be rewritten along the
opposite support, so fiber products over Veronese gradings already
present the Segre product.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .config import BlockedConfiguration
from .errors import NotInKernelError, TorfibError
from .graver import support_sequences
from .intlin import IntegerMatrix

MultiIndex = tuple[int, ...]


def multi_indices(k: int, n: int) -> list[MultiIndex]:
    """Nondecreasing multi-indices of length k over n symbols, in lex order."""
    return list(itertools.combinations_with_replacement(range(n), k))


def _column_of(mi: MultiIndex, n: int) -> tuple[int, ...]:
    col = [0] * n
    for i in mi:
        col[i] += 1
    return tuple(col)


def veronese_config(k: int, n: int) -> BlockedConfiguration:
    """All vectors of coordinate sum k in n coordinates, one column each."""
    if k < 1 or n < 1:
        raise TorfibError(f"Veronese configuration needs k >= 1 and n >= 1, got k={k}, n={n}")
    mis = multi_indices(k, n)
    matrix = IntegerMatrix.from_columns([_column_of(mi, n) for mi in mis], n)
    labels = tuple("v(" + ",".join(str(i + 1) for i in mi) + ")" for mi in mis)
    return BlockedConfiguration.singleton(matrix, labels)


@dataclass(frozen=True)
class PartitionGrading:
    """Partition of the coordinates 0..n1-1 into nonempty parts.

    The induced map sends coordinate x to the index of its part, and
    linearly extends to vectors.
    """

    n1: int
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for part in self.parts:
            if not part:
                raise TorfibError("empty partition part")
            for x in part:
                if x in seen:
                    raise TorfibError(f"coordinate {x + 1} appears in two parts")
                seen.add(x)
        if seen != set(range(self.n1)):
            raise TorfibError("parts do not cover the coordinate set")

    @classmethod
    def from_parts(cls, parts: Sequence[Sequence[int]]) -> "PartitionGrading":
        tup = tuple(tuple(sorted(int(x) for x in p)) for p in parts)
        n1 = sum(len(p) for p in tup)
        return cls(n1, tup)

    @property
    def n0(self) -> int:
        return len(self.parts)

    @property
    def index_map(self) -> tuple[int, ...]:
        p1 = [0] * self.n1
        for i, part in enumerate(self.parts):
            for x in part:
                p1[x] = i
        return tuple(p1)


def _grouped_multi_indices(k: int, grading: PartitionGrading) -> list[list[MultiIndex]]:
    """Multi-indices of V(k, n1) grouped by their image block, lex within each."""
    p1 = grading.index_map
    base = multi_indices(k, grading.n0)
    position = {mi: i for i, mi in enumerate(base)}
    groups: list[list[MultiIndex]] = [[] for _ in base]
    for mi in multi_indices(k, grading.n1):
        image = tuple(sorted(p1[i] for i in mi))
        groups[position[image]].append(mi)
    return groups


def partition_blocked_config(
    k: int, grading: PartitionGrading
) -> tuple[BlockedConfiguration, BlockedConfiguration]:
    """The grading configuration V(k, n0) and V(k, n1) blocked by the partition."""
    a = veronese_config(k, grading.n0)
    groups = _grouped_multi_indices(k, grading)
    cols = []
    labels = []
    for group in groups:
        for mi in group:
            cols.append(_column_of(mi, grading.n1))
            labels.append("x(" + ",".join(str(i + 1) for i in mi) + ")")
    b = BlockedConfiguration(
        IntegerMatrix.from_columns(cols, grading.n1),
        tuple(len(g) for g in groups),
        tuple(labels),
    )
    return a, b


def kappa_rearrangement(
    g: Sequence[int], beta: Sequence[int], grading: PartitionGrading, k: int
) -> tuple[int, ...]:
    """Index sequence beta' for -g with equal column sum, by min-selection.

    Walks the negative support in row-major order and at each slot takes
    the smallest unused coordinate from the pool of coordinates chosen by
    `beta`, restricted to the preimage of the needed part.  The pool's
    image multiset matches the demand exactly, so the selection never
    starves and the two column sums agree.
    """
    base = multi_indices(k, grading.n0)
    gv = tuple(int(x) for x in g)
    if len(gv) != len(base):
        raise TorfibError(
            f"element of length {len(gv)} against {len(base)} Veronese columns"
        )
    a_matrix = IntegerMatrix.from_columns([_column_of(mi, grading.n0) for mi in base], grading.n0)
    if any(a_matrix.mul_vector(gv)):
        raise NotInKernelError("not a kernel element of the Veronese configuration")
    groups = _grouped_multi_indices(k, grading)
    pos, neg = support_sequences(gv)
    if len(beta) != len(pos):
        raise TorfibError(f"index sequence of length {len(beta)}, support has {len(pos)}")
    p1 = grading.index_map
    pool: Counter = Counter()
    for j, alpha in enumerate(pos):
        if not 0 <= beta[j] < len(groups[alpha]):
            raise TorfibError(f"index {beta[j]} out of range for block {alpha + 1}")
        pool.update(groups[alpha][beta[j]])
    result = []
    for alpha in neg:
        chosen = []
        for part in base[alpha]:
            candidates = [x for x in pool if pool[x] > 0 and p1[x] == part]
            if not candidates:
                raise TorfibError("rearrangement pool exhausted; input was not a kernel pair")
            x = min(candidates)
            pool[x] -= 1
            chosen.append(x)
        result.append(groups[alpha].index(tuple(sorted(chosen))))
    return tuple(result)
