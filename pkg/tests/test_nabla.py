"""
对角导数测试
"""

from itertools import permutations

import pytest
from hypothesis import given, settings as hypothesis_settings

from app.algebra.nabla import (
    check_dprod,
    check_theorem1,
    corollary2_sides,
    dprod_sides,
    inner_corner_sum,
    inner_terms_vanish,
    laplace_nabla2,
    leibniz_product_check,
    leibniz_product_sides,
    nabla,
    nabla_h_check,
    theorem1_rhs,
)
from app.algebra.ring import MultiPoly
from app.algebra.shapes import Partition, SkewShape, content, iter_partitions
from app.algebra.symfunc import expand_schur_basis, h, schur, skew_schur
from app.core.exceptions import ParameterConstraintException, ValidationException
from tests.strategies import poly_lists, polys


class TestNabla:
    """∇ = Σ ∂/∂x_k"""

    def test_product_of_distinct_variables(self, poly):
        """测试 ∇(x_1 x_2) = x_1 + x_2"""
        assert nabla(poly("x1*x2", 2)) == poly("x1 + x2", 2)

    @pytest.mark.parametrize("nvars", [1, 2, 3, 5])
    def test_nabla_h1_is_n(self, nvars):
        """测试 ∇(h_1) = N"""
        assert nabla(h(1, nvars)) == MultiPoly.constant(nvars, nvars)

    def test_nabla_schur_21(self, poly):
        """测试 ∇(s_{(2,1)}) 的两变量结果"""
        assert nabla(schur(Partition(parts=(2, 1)))) == poly("x1^2 + 4*x1*x2 + x2^2", 2)

    @pytest.mark.parametrize("n,nvars", [(1, 2), (0, 3), (3, 3), (-2, 2), (5, 1), (4, 0)])
    def test_lemma_on_h(self, n, nvars):
        """测试 ∇(h_n) = (n + N - 1) h_{n-1}"""
        assert nabla_h_check(n, nvars)

    @given(polys(3), polys(3))
    def test_nabla_is_a_derivation(self, f, g):
        """测试 ∇ 满足 Leibniz 规则"""
        assert nabla(f * g) == nabla(f) * g + f * nabla(g)

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(poly_lists(2, max_size=5))
    def test_multi_factor_leibniz(self, factors):
        """测试多个因子的 Leibniz 规则"""
        assert leibniz_product_check(factors)

    def test_leibniz_sides(self, poly):
        """测试两边分别为 ∇(乘积) 与逐个因子求导后的乘积之和"""
        lhs, rhs = leibniz_product_sides([poly("x1", 2), poly("x2", 2), poly("x1 + 1", 2)])
        assert lhs == nabla(poly("x1^2*x2 + x1*x2", 2))
        assert lhs == rhs

    def test_leibniz_needs_a_factor(self):
        """测试没有因子时报错"""
        with pytest.raises(ValidationException):
            leibniz_product_check([])

    def test_lowers_degree_of_homogeneous_input(self):
        """测试齐次输入的次数降低一次"""
        p = schur(Partition(parts=(3, 1, 1)))
        result = nabla(p)
        assert result.is_homogeneous()
        assert result.degree() == p.degree() - 1


class TestTheorem1:
    """∇(s_{λ/μ}) 的外角/内角展开"""

    def test_worked_example_coefficients(self, make_shape):
        """测试三行斜形状在多组 (a, b) 下的角系数"""
        shape = make_shape((3, 2, 1), (1, 1, 0))
        for a, b in [(2, 0), (3, -1), (0, 2)]:
            report = check_theorem1(shape, a, b)
            assert [t.coefficient for t in report.outer_terms] == [2 + a, 0 + a, -2 + a]
            assert [t.index for t in report.inner_terms] == [1, 3]
            assert [t.coefficient for t in report.inner_terms] == [b - 0, b + 3]
            assert report.verdict is True

    def test_corner_metadata(self, make_shape):
        """测试每个角记录的分拆、对角线与判定字段"""
        report = theorem1_rhs(make_shape((3, 2, 1), (1, 1, 0)), 2, 0)
        assert [t.partition for t in report.outer_terms] == [(2, 2, 1), (3, 1, 1), (3, 2, 0)]
        assert [t.diagonal for t in report.outer_terms] == [2, 0, -2]
        assert [t.partition for t in report.inner_terms] == [(2, 1, 0), (1, 1, 1)]
        assert [t.diagonal for t in report.inner_terms] == [0, -3]
        assert report.lhs is None and report.verdict is None

    def test_inner_corner_sum(self, make_shape):
        """测试右边等于外角项之和加内角项之和"""
        shape = make_shape((3, 2, 1), (1, 1, 0))
        report = theorem1_rhs(shape, 2, 0)
        outer_sum = MultiPoly.zero(3)
        for term in report.outer_terms:
            smaller = SkewShape(outer=Partition(parts=term.partition), inner=shape.inner)
            outer_sum = outer_sum + skew_schur(smaller).scale(term.coefficient)
        assert report.rhs == outer_sum + inner_corner_sum(report)
        assert not inner_corner_sum(report).is_zero()

    def test_inner_corner_sum_vanishes_for_straight_shape(self, make_shape):
        """测试 μ = 0, a = N, b = -1 时内角项之和为零"""
        report = theorem1_rhs(make_shape((3, 1, 0)), 3, -1)
        assert inner_corner_sum(report).is_zero()

    def test_straight_shape_recovers_symmetric_derivative_rule(self, make_shape, poly):
        """测试直分拆在 a = N, b = -1 时得到 ∇(s_λ) 的展开"""
        report = check_theorem1(make_shape((2, 1)), 2, -1)
        assert report.rhs == poly("x1^2 + 4*x1*x2 + x2^2", 2)
        assert [t.coefficient for t in report.inner_terms] == [0]
        assert inner_terms_vanish(report)
        assert report.verdict

    def test_empty_partition(self, make_shape):
        """测试零分拆时右边为零且内角因子为零"""
        report = check_theorem1(make_shape((0, 0, 0)), 1, 1)
        assert report.rhs.is_zero()
        assert report.outer_terms == []
        assert [t.coefficient for t in report.inner_terms] == [2]
        assert report.inner_terms[0].vanishes

    def test_non_contained_shape(self, make_shape):
        """测试 μ ⊄ λ 时两边都为零"""
        report = check_theorem1(make_shape((1, 0), (2, 0)), 0, 1)
        assert report.lhs.is_zero() and report.rhs.is_zero()
        assert report.verdict

    def test_parameter_constraint(self, make_shape):
        """测试 a + b ≠ N - 1 时报错"""
        with pytest.raises(ParameterConstraintException):
            theorem1_rhs(make_shape((2, 1)), 1, 1)

    @pytest.mark.parametrize("nvars", [1, 2, 3])
    def test_small_sweep(self, nvars):
        """测试小规模形状上展开全部成立"""
        for outer in iter_partitions(nvars, 4):
            for inner in iter_partitions(nvars, outer.size(), max_part=outer.parts[0]):
                shape = SkewShape(outer=outer, inner=inner)
                for a in (-2, 0, nvars):
                    assert check_theorem1(shape, a, nvars - 1 - a).verdict, (str(shape), a)

    def test_rhs_independent_of_a(self, make_shape):
        """测试右边与 a 的取值无关"""
        shape = make_shape((3, 1, 0), (1, 0, 0))
        reference = theorem1_rhs(shape, 0, 2).rhs
        for a in range(-2, 6):
            assert theorem1_rhs(shape, a, 2 - a).rhs == reference


class TestCorollary2:
    """Σ s_{(λ-e_i)/μ} = Σ s_{λ/(μ+e_i)}"""

    def test_two_variable_example(self, make_shape, poly):
        """测试两变量的两种角和相等"""
        left, right = corollary2_sides(make_shape((2, 1), (1, 0)))
        assert left == right == poly("2*x1 + 2*x2", 2)

    def test_equal_partitions(self, make_shape):
        """测试 λ = μ 时两种角和都为零"""
        left, right = corollary2_sides(make_shape((2, 1), (2, 1)))
        assert left.is_zero() and right.is_zero()

    def test_single_box(self, make_shape):
        """测试单个格子时两种角和都为 1"""
        left, right = corollary2_sides(make_shape((1, 0, 0)))
        assert left == right == MultiPoly.one(3)


class TestProductIdentity:
    """证明中逐置换的乘积恒等式"""

    def test_all_permutations_for_a_three_row_shape(self):
        """测试三行形状的每个置换都满足乘积恒等式"""
        ell = content(Partition(parts=(3, 2, 1))).values
        m = content(Partition(parts=(1, 1, 0))).values
        for sigma in permutations(range(3)):
            for a in (-1, 0, 2, 4):
                assert check_dprod(ell, m, sigma, a, 2 - a)

    def test_arbitrary_integer_vectors(self):
        """测试任意整数向量也满足乘积恒等式"""
        assert check_dprod((4, 0, 1), (-2, 3, 0), (2, 0, 1), 1, 1)

    def test_sides_for_identity_permutation(self):
        """测试恒等置换时左边是 Jacobi-Trudi 对角线乘积的 ∇"""
        ell = content(Partition(parts=(3, 2, 1))).values
        m = content(Partition(parts=(1, 1, 0))).values
        lhs, rhs = dprod_sides(ell, m, (0, 1, 2), 0, 2)
        assert lhs == nabla(h(2, 3) * h(1, 3) * h(1, 3))
        assert lhs == rhs

    def test_rejects_bad_permutation(self):
        """测试非置换输入报错"""
        with pytest.raises(ValidationException):
            check_dprod((1, 0), (0, 0), (0, 0), 1, 0)


class TestLaplace:
    """∇' = Σ ∂²/∂x_k²"""

    def test_basic_values(self, poly):
        """测试 ∇' 在单项式与 h_2 上的取值"""
        assert laplace_nabla2(poly("x1^2", 2)) == 2
        assert laplace_nabla2(poly("x1*x2", 2)).is_zero()
        assert laplace_nabla2(h(2, 2)) == MultiPoly.constant(4, 2)

    def test_schur_expansion_contains_twice_s222(self):
        """测试 ∇'(s_{(5,3,0)}) 中 s_{(2,2,2)} 的系数为 2"""
        expansion = expand_schur_basis(laplace_nabla2(schur(Partition(parts=(5, 3, 0)))))
        assert expansion.coefficient((2, 2, 2)) == 2
        assert expansion.reconstruct() == laplace_nabla2(schur(Partition(parts=(5, 3, 0))))
