"""Toric fiber product configurations and their Segre presentations.

`tfp_config` stacks same-degree column pairs of two graded configurations.
`segre_presentation` extends the three configurations by one degree column
per Graver element and by the summed columns along Graver index sequences,
yielding a fiber product that presents the Segre product.  Extension
columns whose sum can be rewritten along the opposite support are omitted:
the generators they would present are already products of simple
generators, and dropping them reproduces the compact presentations of the
worked examples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .config import BlockedConfiguration, GradingCertificate, check_homogeneity, first_offending_block
from .errors import FiberBoundExhaustedError, HomogeneityError
from .graver import GraverBasis, graver_basis, index_sequences, support_sequences
from .intlin import IntegerMatrix, IntVector, lp_feasible_nonneg

DEFAULT_FIBER_BOUND = 10000


@dataclass(frozen=True)
class SimpleTag:
    """Column (b^alpha_beta ; c^alpha_gamma) of the plain fiber product."""

    alpha: int
    beta: int
    gamma: int


@dataclass(frozen=True)
class GraverTag:
    """Column (b^g_beta ; c^g_gamma) attached to a Graver element."""

    g: IntVector
    beta: tuple[int, ...]
    gamma: tuple[int, ...]


@dataclass(frozen=True)
class MixedTag:
    """Same-degree pairing that only exists after merging duplicate degrees.

    Each side is ("simple", alpha, beta) for an original column or
    ("graver", g, index_sequence) for an extension column.
    """

    b_side: tuple
    c_side: tuple


ColumnTag = Union[SimpleTag, GraverTag, MixedTag]


@dataclass(frozen=True)
class ProductConfiguration:
    """Stacked-column configuration with per-column provenance tags."""

    matrix: IntegerMatrix
    column_tags: tuple[ColumnTag, ...]
    simple_count: int

    @property
    def ncols(self) -> int:
        return self.matrix.ncols


@dataclass(frozen=True)
class GraverColumnRecord:
    """One Graver monomial column m^g_{beta,gamma} = (b^g_beta ; c^g_gamma)."""

    g: IntVector
    beta: tuple[int, ...]
    gamma: tuple[int, ...]
    vector: IntVector


@dataclass(frozen=True)
class SegrePresentation:
    """The extended configurations A', B', C' and their fiber product."""

    a_prime: BlockedConfiguration
    b_prime: BlockedConfiguration
    c_prime: BlockedConfiguration
    product: ProductConfiguration
    base_a: BlockedConfiguration
    base_b: BlockedConfiguration
    base_c: BlockedConfiguration
    cert_b: GradingCertificate
    cert_c: GradingCertificate
    graver: GraverBasis
    merged: bool
    kept_b: tuple[tuple[IntVector, tuple[tuple[int, ...], ...]], ...] = field(repr=False, default=())
    kept_c: tuple[tuple[IntVector, tuple[tuple[int, ...], ...]], ...] = field(repr=False, default=())

    def simple_matrix(self) -> IntegerMatrix:
        cols = [self.product.matrix.column(j) for j in range(self.product.simple_count)]
        return IntegerMatrix.from_columns(cols, self.product.matrix.nrows)


def _certificates(a, b, c):
    cert_b = check_homogeneity(a, b)
    if cert_b is None:
        raise HomogeneityError("B", first_offending_block(a, b))
    cert_c = check_homogeneity(a, c)
    if cert_c is None:
        raise HomogeneityError("C", first_offending_block(a, c))
    return cert_b, cert_c


def tfp_config(a: BlockedConfiguration, b: BlockedConfiguration, c: BlockedConfiguration) -> ProductConfiguration:
    """Fiber product configuration: one stacked column per (alpha, beta, gamma)."""
    _certificates(a, b, c)
    cols = []
    tags = []
    for alpha in range(a.block_count):
        for beta in range(b.block_sizes[alpha]):
            for gamma in range(c.block_sizes[alpha]):
                cols.append(b.column(alpha, beta) + c.column(alpha, gamma))
                tags.append(SimpleTag(alpha, beta, gamma))
    matrix = IntegerMatrix.from_columns(cols, b.ambient_dim + c.ambient_dim)
    return ProductConfiguration(matrix, tuple(tags), len(cols))


def tfp_blocked(
    a: BlockedConfiguration, b: BlockedConfiguration, c: BlockedConfiguration
) -> BlockedConfiguration:
    """The fiber product as a configuration graded by `a`, for iterating products."""
    p = tfp_config(a, b, c)
    sizes = tuple(b.block_sizes[i] * c.block_sizes[i] for i in range(a.block_count))
    return BlockedConfiguration(p.matrix, sizes)


def _side_sum(cfg: BlockedConfiguration, blocks: Sequence[int], choice: Sequence[int]) -> IntVector:
    total = [0] * cfg.ambient_dim
    for alpha, idx in zip(blocks, choice):
        col = cfg.column(alpha, idx)
        total = [x + y for x, y in zip(total, col)]
    return tuple(total)


def _extension_columns(cfg: BlockedConfiguration, g: IntVector, side: str):
    """All (index_sequence, summed column) choices along one support of g."""
    blocks = support_sequences(g)[0 if side == "pos" else 1]
    return [(seq, _side_sum(cfg, blocks, seq)) for seq in index_sequences(g, cfg.block_sizes, side)]


def _survivors(all_ext: dict, g: IntVector):
    """Extension columns of g with no equal column along the opposite support.

    A column that can be rewritten along -g presents only products of
    simple generators, so the presentation does not need it.
    """
    neg = tuple(-x for x in g)
    opposite = {vec for _, vec in all_ext[neg]}
    return [(seq, vec) for seq, vec in all_ext[g] if vec not in opposite]


def segre_presentation(
    a: BlockedConfiguration,
    b: BlockedConfiguration,
    c: BlockedConfiguration,
    merge_duplicates: bool = False,
) -> SegrePresentation:
    """Extended configurations presenting the Segre product as a fiber product.

    With `merge_duplicates` the degree columns a^g and a^{-g} (and any other
    coinciding degree vectors) are identified, which typically enlarges the
    product because more column pairs share a degree.
    """
    cert_b, cert_c = _certificates(a, b, c)
    basis = graver_basis(a)
    d = a.block_count

    a_deg = [a.column(alpha, 0) for alpha in range(d)]
    g_degrees = {}
    for g in basis.elements:
        g_degrees[g] = tuple(
            sum(g[alpha] * a_deg[alpha][i] for alpha in range(d) if g[alpha] > 0)
            for i in range(a.ambient_dim)
        )

    ext_b = {g: _extension_columns(b, g, "pos") for g in basis.elements}
    ext_c = {g: _extension_columns(c, g, "neg") for g in basis.elements}
    kept_b = {g: _survivors(ext_b, g) for g in basis.elements}
    kept_c = {g: _survivors(ext_c, g) for g in basis.elements}

    b_cols = list(b.matrix.columns())
    c_cols = list(c.matrix.columns())
    b_blocks = list(b.block_sizes)
    c_blocks = list(c.block_sizes)
    a_cols = list(a.matrix.columns())
    for g in basis.elements:
        a_cols.append(g_degrees[g])
        b_cols.extend(vec for _, vec in kept_b[g])
        c_cols.extend(vec for _, vec in kept_c[g])
        b_blocks.append(len(kept_b[g]))
        c_blocks.append(len(kept_c[g]))

    simple = tfp_config(a, b, c)
    cols = list(simple.matrix.columns())
    tags: list[ColumnTag] = list(simple.column_tags)

    if not merge_duplicates:
        a_prime = BlockedConfiguration(IntegerMatrix.from_columns(a_cols, a.ambient_dim), (1,) * len(a_cols))
        for g in basis.elements:
            for beta, bvec in kept_b[g]:
                for gamma, cvec in kept_c[g]:
                    cols.append(bvec + cvec)
                    tags.append(GraverTag(g, beta, gamma))
    else:
        # group every primed column by its degree vector
        merged_order: list[IntVector] = []
        members_b: dict[IntVector, list] = {}
        members_c: dict[IntVector, list] = {}
        degree_cols = a_deg + [g_degrees[g] for g in basis.elements]
        for deg in degree_cols:
            if deg not in members_b:
                merged_order.append(deg)
                members_b[deg] = []
                members_c[deg] = []
        for alpha in range(d):
            deg = a_deg[alpha]
            for beta in range(b.block_sizes[alpha]):
                members_b[deg].append((("simple", alpha, beta), b.column(alpha, beta)))
            for gamma in range(c.block_sizes[alpha]):
                members_c[deg].append((("simple", alpha, gamma), c.column(alpha, gamma)))
        for g in basis.elements:
            deg = g_degrees[g]
            for beta, bvec in kept_b[g]:
                members_b[deg].append((("graver", g, beta), bvec))
            for gamma, cvec in kept_c[g]:
                members_c[deg].append((("graver", g, gamma), cvec))
        a_prime = BlockedConfiguration(
            IntegerMatrix.from_columns(merged_order, a.ambient_dim), (1,) * len(merged_order)
        )
        for deg in merged_order:
            for b_tag, bvec in members_b[deg]:
                for c_tag, cvec in members_c[deg]:
                    if (
                        b_tag[0] == "simple"
                        and c_tag[0] == "simple"
                        and b_tag[1] == c_tag[1]
                    ):
                        continue  # already present as a simple column
                    cols.append(bvec + cvec)
                    tags.append(MixedTag(b_tag, c_tag))

    b_prime = BlockedConfiguration(IntegerMatrix.from_columns(b_cols, b.ambient_dim), tuple(b_blocks))
    c_prime = BlockedConfiguration(IntegerMatrix.from_columns(c_cols, c.ambient_dim), tuple(c_blocks))
    product = ProductConfiguration(
        IntegerMatrix.from_columns(cols, b.ambient_dim + c.ambient_dim),
        tuple(tags),
        simple.simple_count,
    )
    return SegrePresentation(
        a_prime=a_prime,
        b_prime=b_prime,
        c_prime=c_prime,
        product=product,
        base_a=a,
        base_b=b,
        base_c=c,
        cert_b=cert_b,
        cert_c=cert_c,
        graver=basis,
        merged=merge_duplicates,
        kept_b=tuple((g, tuple(seq for seq, _ in kept_b[g])) for g in basis.elements),
        kept_c=tuple((g, tuple(seq for seq, _ in kept_c[g])) for g in basis.elements),
    )


def graver_columns(p: SegrePresentation) -> list[GraverColumnRecord]:
    """Every Graver monomial column, one per (g, beta, gamma).

    This is the full list of Graver generators of the Segre product; the
    presentation's product matrix keeps only the ones it needs.
    """
    records = []
    for g in p.graver.elements:
        for beta, bvec in _extension_columns(p.base_b, g, "pos"):
            for gamma, cvec in _extension_columns(p.base_c, g, "neg"):
                records.append(GraverColumnRecord(g, beta, gamma, bvec + cvec))
    return records


def check_neutral_tfp(a: BlockedConfiguration, c: BlockedConfiguration) -> bool:
    """True iff the fiber product of A with C has the same kernel as C.

    A stands on its own B-side with singleton blocks; the column sets are
    in natural bijection (alpha, gamma) <-> (alpha, gamma), so equality of
    the two kernel lattices is the combinatorial content of the toric
    ideal of A being neutral for the product.
    """
    from .intlin import integer_kernel

    cert = check_homogeneity(a, c)
    if cert is None:
        raise HomogeneityError("C", first_offending_block(a, c))
    cols = []
    for alpha in range(a.block_count):
        for gamma in range(c.block_sizes[alpha]):
            cols.append(a.column(alpha, 0) + c.column(alpha, gamma))
    stacked = IntegerMatrix.from_columns(cols, a.ambient_dim + c.ambient_dim)
    return integer_kernel(stacked).hnf == integer_kernel(c.matrix).hnf


CertLike = Union[GradingCertificate, Sequence[Sequence[Fraction]]]


def degree_fiber_count(
    d: Union[BlockedConfiguration, IntegerMatrix],
    cert: CertLike,
    degree: Sequence[int],
    bound: int = DEFAULT_FIBER_BOUND,
) -> int:
    """Number of distinct monoid elements of N(columns of d) with the given degree.

    Breadth-first generation with deduplication; branches whose remaining
    degree falls outside the rational cone of column degrees are pruned.
    Raises FiberBoundExhaustedError after `bound` generator applications.
    """
    matrix = d.matrix if isinstance(d, BlockedConfiguration) else d
    cert_rows = cert.degree_matrix if isinstance(cert, GradingCertificate) else tuple(cert)
    columns = matrix.columns()
    target = tuple(Fraction(x) for x in degree)

    def deg_of(vec: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(sum(Fraction(r) * x for r, x in zip(row, vec)) for row in cert_rows)

    col_degs = [deg_of(c) for c in columns]
    # scale each distinct degree vector to integers; scaling keeps the cone
    cone_gens = []
    seen_deg = set()
    for dv in col_degs:
        if dv not in seen_deg:
            seen_deg.add(dv)
            lcm = 1
            for x in dv:
                lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
            cone_gens.append(tuple(int(x * lcm) for x in dv))
    cone_matrix = IntegerMatrix.from_columns(cone_gens, len(target)) if cone_gens else None

    cone_cache: dict[tuple, bool] = {}

    def in_cone(diff: tuple) -> bool:
        if all(x == 0 for x in diff):
            return True
        if cone_matrix is None:
            return False
        got = cone_cache.get(diff)
        if got is None:
            got = lp_feasible_nonneg(cone_matrix, diff) is not None
            cone_cache[diff] = got
        return got

    start = (0,) * matrix.nrows
    zero_deg = tuple(Fraction(0) for _ in target)
    if not in_cone(tuple(t - z for t, z in zip(target, zero_deg))):
        return 0
    seen = {start}
    deg_map = {start: zero_deg}
    frontier = [start]
    count = 1 if zero_deg == target else 0
    applications = 0
    while frontier:
        nxt = []
        for element in frontier:
            dm = deg_map[element]
            for j, col in enumerate(columns):
                applications += 1
                if applications > bound:
                    raise FiberBoundExhaustedError(
                        f"fiber count inconclusive: bound of {bound} generator applications hit"
                    )
                new = tuple(x + y for x, y in zip(element, col))
                if new in seen:
                    continue
                nd = tuple(x + y for x, y in zip(dm, col_degs[j]))
                if not in_cone(tuple(t - x for t, x in zip(target, nd))):
                    continue
                seen.add(new)
                deg_map[new] = nd
                nxt.append(new)
                if nd == target:
                    count += 1
        frontier = nxt
    return count
