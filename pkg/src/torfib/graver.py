"""Graver bases of integer kernels and their index combinatorics.

The basis is computed by a completion procedure over the kernel lattice:
start from a kernel basis closed under negation, add normal forms of
sign-inconsistent pair sums until nothing new appears, then keep the
minimal elements.  The result is exactly the set of primitive kernel
vectors, so it is unique and symmetric under negation.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence, Union

from .config import BlockedConfiguration
from .errors import BlockMismatchError, NotInKernelError
from .intlin import IntegerMatrix, IntVector, integer_kernel


@dataclass(frozen=True)
class GraverBasis:
    """Finite symmetric set of primitive kernel vectors."""

    ambient_dim: int
    elements: tuple[IntVector, ...]

    def __contains__(self, v) -> bool:
        return tuple(v) in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class GraverIndexPair:
    """Within-block index choices along the two supports of a Graver element.

    `beta` runs over the positive support of `g` with multiplicity, `gamma`
    over the negative support, both in nondecreasing block order.
    """

    g: IntVector
    beta: tuple[int, ...]
    gamma: tuple[int, ...]


@dataclass(frozen=True)
class MonomialFactorization:
    """Simple and Graver factors of a degree-balanced block-index pair."""

    simple_factors: tuple[int, ...]
    graver_factors: tuple[IntVector, ...]


def _conformal(v: IntVector, s: Sequence[int]) -> bool:
    """v lies in the same orthant as s and is bounded by it componentwise."""
    for a, b in zip(v, s):
        if a * b < 0 or abs(a) > abs(b):
            return False
    return True


def _normal_form(s: list[int], basis: Sequence[IntVector]) -> tuple[int, ...]:
    changed = True
    while changed and any(s):
        changed = False
        for v in basis:
            if _conformal(v, s):
                s = [a - b for a, b in zip(s, v)]
                changed = True
                break
    return tuple(s)


def _pottier(kernel_basis: Sequence[IntVector], dim: int) -> tuple[IntVector, ...]:
    gens: list[IntVector] = []
    seen: set[IntVector] = set()
    for v in kernel_basis:
        for w in (tuple(v), tuple(-x for x in v)):
            if any(w) and w not in seen:
                seen.add(w)
                gens.append(w)
    queue: deque[tuple[IntVector, IntVector]] = deque(
        (f, g) for f, g in itertools.combinations(gens, 2)
    )
    while queue:
        f, g = queue.popleft()
        if all(a * b >= 0 for a, b in zip(f, g)):
            continue  # sign-consistent sums reduce to zero
        s = _normal_form([a + b for a, b in zip(f, g)], gens)
        if any(s):
            neg = tuple(-x for x in s)
            for w in (s, neg):
                if w not in seen:
                    seen.add(w)
                    for h in gens:
                        queue.append((w, h))
                    gens.append(w)
    # keep only elements not conformally reducible by another element
    minimal = []
    for v in gens:
        if not any(w != v and _conformal(w, v) for w in gens):
            minimal.append(v)
    return tuple(sorted(minimal, reverse=True))


def graver_basis(cfg: Union[BlockedConfiguration, IntegerMatrix]) -> GraverBasis:
    """Graver basis of the integer kernel of a configuration's matrix."""
    matrix = cfg.matrix if isinstance(cfg, BlockedConfiguration) else cfg
    kernel = integer_kernel(matrix)
    return GraverBasis(matrix.ncols, _pottier(kernel.basis, matrix.ncols))


def sign_consistent_decomposition(c: Sequence[int], basis: GraverBasis) -> list[IntVector]:
    """Write `c` as a sum of Graver elements, each sign-consistent with `c`.

    Greedy subtraction with a smallest-lexicographic tie-break, so the
    output is deterministic.  Raises NotInKernelError when `c` cannot be
    exhausted, which happens exactly when it is not a kernel element.
    """
    remaining = [int(x) for x in c]
    if len(remaining) != basis.ambient_dim:
        raise NotInKernelError("vector has the wrong length for this kernel")
    parts: list[IntVector] = []
    while any(remaining):
        candidates = [g for g in basis.elements if _conformal(g, remaining)]
        if not candidates:
            raise NotInKernelError(f"{tuple(c)} is not in the kernel lattice")
        g = min(candidates)
        parts.append(g)
        remaining = [a - b for a, b in zip(remaining, g)]
    return parts


def support_sequences(g: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Positive and negative support of `g`, block indices with multiplicity."""
    pos = tuple(a for a, x in enumerate(g) for _ in range(x) if x > 0)
    neg = tuple(a for a, x in enumerate(g) for _ in range(-x) if x < 0)
    return pos, neg


def index_sequences(g: Sequence[int], block_sizes: Sequence[int], side: str) -> list[tuple[int, ...]]:
    """All within-block index choices along one support of `g`.

    `side` is "pos" (the beta side) or "neg" (the gamma side).  Choices
    are produced in lexicographic order.
    """
    pos, neg = support_sequences(g)
    seq = pos if side == "pos" else neg
    return [tuple(t) for t in itertools.product(*(range(block_sizes[a]) for a in seq))]


def graver_index_pairs(
    g: Sequence[int], b_blocks: Sequence[int], c_blocks: Sequence[int]
) -> list[GraverIndexPair]:
    """All Graver index pairs (beta, gamma) of `g` over the two block lists."""
    if not (len(g) == len(b_blocks) == len(c_blocks)):
        raise BlockMismatchError(
            f"element of length {len(g)} against {len(b_blocks)} and {len(c_blocks)} blocks"
        )
    gv = tuple(int(x) for x in g)
    betas = index_sequences(gv, b_blocks, "pos")
    gammas = index_sequences(gv, c_blocks, "neg")
    return [GraverIndexPair(gv, b, c) for b in betas for c in gammas]


def monomial_factorization(
    alpha: Sequence[int],
    alpha_prime: Sequence[int],
    cfg: BlockedConfiguration,
    basis: GraverBasis,
) -> MonomialFactorization:
    """Factor a degree-balanced pair of block multisets into simple and Graver parts.

    The multiset intersection of `alpha` and `alpha_prime` gives the simple
    factors; the remainder is a kernel vector and is split sign-consistently
    into Graver elements.  Concatenating the factor supports recovers the
    input pair.
    """
    d = cfg.block_count
    c_tilde = [0] * d
    for a in alpha:
        c_tilde[a] += 1
    for a in alpha_prime:
        c_tilde[a] -= 1
    if any(cfg.matrix.mul_vector(c_tilde)):
        raise NotInKernelError("the block-index pair is not degree balanced")
    simple = sorted((Counter(alpha) & Counter(alpha_prime)).elements())
    parts = sign_consistent_decomposition(c_tilde, basis)
    return MonomialFactorization(tuple(simple), tuple(parts))
