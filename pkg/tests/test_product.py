import random
from fractions import Fraction

import pytest

from torfib import (
    BlockedConfiguration,
    FiberBoundExhaustedError,
    HomogeneityError,
    IntegerMatrix,
    check_homogeneity,
    check_neutral_tfp,
    degree_fiber_count,
    graver_columns,
    segre_presentation,
    star_functional,
    tfp_blocked,
    tfp_config,
    veronese_config,
)
from torfib.product import GraverTag, SimpleTag


def identity_cert_rows(n):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


class TestTfpConfig:
    def test_example_63_sixteen_columns(self, ex63):
        a, b = ex63
        product = tfp_config(a, b, b)
        assert product.ncols == 16
        assert product.simple_count == 16
        assert product.matrix.nrows == 12

    def test_example_62_seven_columns(self, ex62):
        a, b, c = ex62
        product = tfp_config(a, b, c)
        assert product.ncols == 7  # 2*2 + 1*2 + 1*1

    def test_c_equals_a(self, ex62):
        a, b, _ = ex62
        product = tfp_config(a, b, a)
        assert product.ncols == sum(b.block_sizes)
        for tag in product.column_tags:
            col = product.matrix.column(product.column_tags.index(tag))
            assert col[b.ambient_dim :] == a.column(tag.alpha, 0)

    def test_homogeneity_failure_reports_block(self, ex62):
        a, b, _ = ex62
        bad = BlockedConfiguration(
            IntegerMatrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]]), (2, 1, 1)
        )
        with pytest.raises(HomogeneityError) as err:
            tfp_config(a, b, bad)
        assert err.value.side == "C"
        # blocks 1 and 2 alone are still consistent; block 3 breaks the system
        assert err.value.block == 2

    def test_degree_coherence(self, ex62):
        a, b, c = ex62
        cert_b = check_homogeneity(a, b)
        cert_c = check_homogeneity(a, c)
        product = tfp_config(a, b, c)
        h1 = b.ambient_dim
        for j, tag in enumerate(product.column_tags):
            col = product.matrix.column(j)
            top, bottom = col[:h1], col[h1:]
            assert cert_b.degree_of(top) == cert_c.degree_of(bottom)


class TestSegrePresentation:
    def test_example_63_duplicate_preserving(self, ex63):
        a, b = ex63
        pres = segre_presentation(a, b, b)
        assert pres.product.ncols == 24
        assert pres.a_prime.matrix.ncols == 6
        assert pres.a_prime.matrix.column(4) == (2, 1, 1)
        assert pres.a_prime.matrix.column(5) == (2, 1, 1)
        assert pres.b_prime.block_sizes == (2, 2, 2, 2, 2, 2)

    def test_example_63_merged(self, ex63):
        a, b = ex63
        pres = segre_presentation(a, b, b, merge_duplicates=True)
        assert pres.product.ncols == 32
        assert pres.a_prime.matrix.ncols == 5

    def test_codim_zero_equals_tfp(self):
        a = BlockedConfiguration.singleton(IntegerMatrix.identity(2))
        b = BlockedConfiguration(IntegerMatrix.from_rows([[1, 1, 0], [0, 0, 1]]), (2, 1))
        pres = segre_presentation(a, b, b)
        plain = tfp_config(a, b, b)
        assert pres.product.matrix == plain.matrix
        assert pres.graver.elements == ()

    def test_simple_columns_come_first(self, ex63):
        a, b = ex63
        pres = segre_presentation(a, b, b)
        plain = tfp_config(a, b, b)
        for j in range(plain.ncols):
            assert pres.product.matrix.column(j) == plain.matrix.column(j)
            assert isinstance(pres.product.column_tags[j], SimpleTag)
        for j in range(plain.ncols, pres.product.ncols):
            assert isinstance(pres.product.column_tags[j], GraverTag)

    def test_degree_columns_stay_in_monoid(self, ex63):
        # each added degree column is a non-negative combination of the others
        a, b = ex63
        pres = segre_presentation(a, b, b)
        for g in pres.graver.elements:
            expected = [0] * a.ambient_dim
            for alpha, x in enumerate(g):
                if x > 0:
                    col = a.column(alpha, 0)
                    expected = [e + x * y for e, y in zip(expected, col)]
        assert tuple(expected) in pres.a_prime.matrix.columns()

    def test_total_degree_separates_simple_from_graver(self, ex62, ex63):
        # with condition (*) and distinct degrees, simple columns have total
        # degree one and extension columns never do
        for a, b, c in (ex62, (ex63[0], ex63[1], ex63[1])):
            y = star_functional(a)
            pres = segre_presentation(a, b, c)
            cert_b = pres.cert_b
            h1 = b.ambient_dim
            for j, tag in enumerate(pres.product.column_tags):
                top = pres.product.matrix.column(j)[:h1]
                total = sum(f * x for f, x in zip(y, cert_b.degree_of(top)))
                if isinstance(tag, SimpleTag):
                    assert total == 1
                else:
                    assert total >= 2


class TestGraverColumns:
    def test_example_62_six(self, ex62):
        pres = segre_presentation(*ex62)
        records = graver_columns(pres)
        assert len(records) == 6
        per_sign = {}
        for r in records:
            per_sign.setdefault(r.g, []).append(r)
        assert len(per_sign[(1, 1, -2)]) == 2
        assert len(per_sign[(-1, -1, 2)]) == 4

    def test_example_63_thirtytwo(self, ex63):
        a, b = ex63
        pres = segre_presentation(a, b, b)
        assert len(graver_columns(pres)) == 32

    def test_codim_zero_empty(self):
        a = BlockedConfiguration.singleton(IntegerMatrix.identity(2))
        b = BlockedConfiguration(IntegerMatrix.from_rows([[1, 1, 0], [0, 0, 1]]), (2, 1))
        assert graver_columns(segre_presentation(a, b, b)) == []

    def test_vectors_are_support_sums(self, ex62):
        a, b, c = ex62
        pres = segre_presentation(a, b, c)
        for rec in graver_columns(pres):
            if rec.g == (1, 1, -2):
                top = rec.vector[: b.ambient_dim]
                expected = tuple(
                    x + y for x, y in zip(b.column(0, rec.beta[0]), b.column(1, rec.beta[1]))
                )
                assert top == expected
                assert rec.vector[b.ambient_dim :] == (2, 2, 2, 2)


class TestNeutral:
    def test_example_62(self, ex62):
        a, _, c = ex62
        assert check_neutral_tfp(a, c)

    def test_veronese_over_all_ones(self):
        a = BlockedConfiguration.singleton(IntegerMatrix.from_rows([[1, 1, 1]]))
        v22 = veronese_config(2, 2)
        graded = BlockedConfiguration(v22.matrix, (1, 1, 1))
        assert check_neutral_tfp(a, graded)

    def test_self_neutral(self, ex62):
        a, _, _ = ex62
        assert check_neutral_tfp(a, a)

    def test_random_compatible_pairs(self):
        rng = random.Random(61)
        for _ in range(10):
            h = rng.randint(1, 3)
            d = rng.randint(1, 4)
            a_cols = [[rng.randint(0, 3) for _ in range(h)] for _ in range(d)]
            for col in a_cols:
                if not any(col):
                    col[0] = 1
            extra = rng.randint(0, 2)
            c_cols, blocks = [], []
            for alpha in range(d):
                size = rng.randint(1, 2)
                blocks.append(size)
                for _ in range(size):
                    c_cols.append(a_cols[alpha] + [rng.randint(0, 2) for _ in range(extra)])
            a = BlockedConfiguration.singleton(IntegerMatrix.from_columns(a_cols, h))
            c = BlockedConfiguration(IntegerMatrix.from_columns(c_cols, h + extra), tuple(blocks))
            assert check_neutral_tfp(a, c)


class TestDegreeFiberCount:
    def test_neutral_configuration_always_one(self, ex62):
        a, _, _ = ex62
        cert = identity_cert_rows(a.ambient_dim)
        # degrees reachable in up to three generator steps
        degrees = {(0, 0)}
        for _ in range(3):
            degrees |= {
                tuple(x + y for x, y in zip(d, a.column(alpha, 0)))
                for d in degrees
                for alpha in range(a.block_count)
            }
        for degree in sorted(degrees):
            assert degree_fiber_count(a, cert, degree) == 1

    def test_zero_degree(self, ex62):
        a, _, _ = ex62
        assert degree_fiber_count(a, identity_cert_rows(2), (0, 0)) == 1

    def test_v22_identity_grading(self):
        # (2,0)+(0,2) and (1,1)+(1,1) are the same monoid element (2,2)
        v22 = veronese_config(2, 2)
        assert degree_fiber_count(v22, identity_cert_rows(2), (2, 2)) == 1

    def test_unreachable_degree(self, ex62):
        a, _, _ = ex62
        assert degree_fiber_count(a, identity_cert_rows(2), (1, 0)) == 0

    def test_bound_exhaustion(self):
        # second column changes the element but not the degree: no closure
        cfg = BlockedConfiguration.singleton(IntegerMatrix.identity(2))
        cert = ((Fraction(1), Fraction(0)),)
        with pytest.raises(FiberBoundExhaustedError):
            degree_fiber_count(cfg, cert, (1,), bound=50)

    def test_nontrivial_fiber(self):
        # two columns with equal degree give two elements per degree step
        cfg = BlockedConfiguration(IntegerMatrix.from_rows([[1, 1], [0, 1]]), (2,))
        cert = ((Fraction(1), Fraction(0)),)
        assert degree_fiber_count(cfg, cert, (1,)) == 2
        assert degree_fiber_count(cfg, cert, (2,)) == 3


def test_tfp_blocked_iterates():
    grading_cols = [(2, 0), (1, 1), (0, 2)]
    a = BlockedConfiguration.singleton(IntegerMatrix.from_columns(grading_cols, 2))
    v23 = veronese_config(2, 3)
    images = []
    for col in v23.matrix.columns():
        images.append((col[0] + col[1], col[2]))
    order = sorted(range(6), key=lambda j: grading_cols.index(images[j]))
    b = BlockedConfiguration(
        IntegerMatrix.from_columns([v23.matrix.column(j) for j in order], 3),
        (3, 2, 1),
    )
    d2 = tfp_blocked(a, b, b)
    assert d2.block_sizes == (9, 4, 1)
    d3 = tfp_blocked(a, b, d2)
    assert d3.matrix.ncols == 27 + 8 + 1
    assert d3.ambient_dim == 9
