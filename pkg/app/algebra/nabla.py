"""
对角导数模块

∇ = ∂/∂x_1 + ... + ∂/∂x_N、∇(s_{λ/μ}) 的外角/内角展开、两种角和的相等、
证明中逐置换的乘积恒等式，以及 ∇' = Σ ∂²/∂x_k²。
"""

import logging
from functools import reduce
from operator import mul
from typing import List, Sequence, Tuple

from app.algebra.ring import MultiPoly
from app.algebra.shapes import Partition, SkewShape, add_box, contains, content, remove_box
from app.algebra.symfunc import h, skew_schur
from app.core.errors import ErrorMessages
from app.core.exceptions import ParameterConstraintException, ValidationException
from app.core.performance import monitor_performance
from app.schemas.algebra import CornerTerm, Theorem1Report

logger = logging.getLogger(__name__)


def nabla(p: MultiPoly) -> MultiPoly:
    """∇(p) = Σ_k ∂p/∂x_k。"""
    total = MultiPoly.zero(p.nvars)
    for k in range(1, p.nvars + 1):
        total = total + p.partial(k)
    return total


def laplace_nabla2(p: MultiPoly) -> MultiPoly:
    """∇'(p) = Σ_k ∂²p/∂x_k²。"""
    total = MultiPoly.zero(p.nvars)
    for k in range(1, p.nvars + 1):
        total = total + p.partial(k).partial(k)
    return total


def nabla_h_check(n: int, nvars: int) -> bool:
    """∇(h_n) = (n + N - 1)·h_{n-1}。"""
    return nabla(h(n, nvars)) == h(n - 1, nvars).scale(n + nvars - 1)


def _check_parameters(a: int, b: int, nvars: int) -> None:
    if a + b != nvars - 1:
        raise ParameterConstraintException(
            ErrorMessages.PARAMETER_CONSTRAINT_INT.format(a=a, b=b, nvars=nvars),
            details={"a": a, "b": b, "nvars": nvars},
        )


# =================================================================================
# 外角/内角展开
# =================================================================================


def theorem1_rhs(shape: SkewShape, a: int, b: int) -> Theorem1Report:
    """
    Σ_{λ-e_i ∈ P_N} (ℓ_i + a)·s_{(λ-e_i)/μ} + Σ_{μ+e_i ∈ P_N} (b - m_i)·s_{λ/(μ+e_i)}。

    每个角都记录行号、系数、新分拆、所在对角线，以及 Schur 因子是否因不包含而为零。
    """
    nvars = shape.nvars
    _check_parameters(a, b, nvars)
    outer, inner = shape.outer, shape.inner
    ell = content(outer).values
    m = content(inner).values

    rhs = MultiPoly.zero(nvars)
    outer_terms: List[CornerTerm] = []
    inner_terms: List[CornerTerm] = []
    for i in range(1, nvars + 1):
        smaller = remove_box(outer, i)
        if smaller is None:
            continue
        coefficient = ell[i - 1] + a
        rhs = rhs + skew_schur(SkewShape(outer=smaller, inner=inner)).scale(coefficient)
        outer_terms.append(
            CornerTerm(
                index=i,
                coefficient=coefficient,
                partition=smaller.parts,
                diagonal=ell[i - 1],
                vanishes=not contains(inner, smaller),
            )
        )
    for i in range(1, nvars + 1):
        larger = add_box(inner, i)
        if larger is None:
            continue
        coefficient = b - m[i - 1]
        rhs = rhs + skew_schur(SkewShape(outer=outer, inner=larger)).scale(coefficient)
        inner_terms.append(
            CornerTerm(
                index=i,
                coefficient=coefficient,
                partition=larger.parts,
                diagonal=m[i - 1],
                vanishes=not contains(larger, outer),
            )
        )
    return Theorem1Report(
        shape=shape, a=a, b=b, rhs=rhs, outer_terms=outer_terms, inner_terms=inner_terms
    )


@monitor_performance("check_theorem1")
def check_theorem1(shape: SkewShape, a: int, b: int) -> Theorem1Report:
    report = theorem1_rhs(shape, a, b)
    lhs = nabla(skew_schur(shape))
    verdict = lhs == report.rhs
    if not verdict:
        logger.debug(f"角展开不成立: {shape}, a={a}, b={b}")
    return report.model_copy(update={"lhs": lhs, "verdict": verdict})


def inner_terms_vanish(report: Theorem1Report) -> bool:
    """每个内角项的系数为 0 或 Schur 因子为零（μ = 0, a = N, b = -1 时应成立）。"""
    return all(term.coefficient == 0 or term.vanishes for term in report.inner_terms)


def inner_corner_sum(report: Theorem1Report) -> MultiPoly:
    """报告中内角项之和 Σ (b - m_i)·s_{λ/(μ+e_i)}。"""
    shape = report.shape
    total = MultiPoly.zero(shape.nvars)
    for term in report.inner_terms:
        larger = Partition(parts=term.partition)
        total = total + skew_schur(SkewShape(outer=shape.outer, inner=larger)).scale(term.coefficient)
    return total


def corollary2_sides(shape: SkewShape) -> Tuple[MultiPoly, MultiPoly]:
    """(Σ s_{(λ-e_i)/μ}, Σ s_{λ/(μ+e_i)})，两边应相等。"""
    nvars = shape.nvars
    left = MultiPoly.zero(nvars)
    right = MultiPoly.zero(nvars)
    for i in range(1, nvars + 1):
        smaller = remove_box(shape.outer, i)
        if smaller is not None:
            left = left + skew_schur(SkewShape(outer=smaller, inner=shape.inner))
        larger = add_box(shape.inner, i)
        if larger is not None:
            right = right + skew_schur(SkewShape(outer=shape.outer, inner=larger))
    return left, right


# =================================================================================
# 证明中的乘积恒等式与 Leibniz 法则
# =================================================================================


def _h_product(ell: Sequence[int], m: Sequence[int], sigma: Sequence[int], nvars: int) -> MultiPoly:
    product = MultiPoly.one(nvars)
    for i, j in enumerate(sigma):
        factor = h(ell[i] - m[j], nvars)
        if factor.is_zero():
            return factor
        product = product * factor
    return product


def _shift(values: Sequence[int], k: int, delta: int) -> Tuple[int, ...]:
    shifted = list(values)
    shifted[k] += delta
    return tuple(shifted)


def dprod_sides(
    ell: Sequence[int], m: Sequence[int], sigma: Sequence[int], a: int, b: int
) -> Tuple[MultiPoly, MultiPoly]:
    """
    对任意整数 N 元组 ℓ, m 和置换 σ（0 起始）返回两边：

        ∇(Π_i h_{ℓ_i - m_σ(i)})
        Σ_k (ℓ_k + a) Π_i h_{(ℓ-e_k)_i - m_σ(i)} + Σ_k (b - m_k) Π_i h_{ℓ_i - (m+e_k)_σ(i)}
    """
    nvars = len(ell)
    if len(m) != nvars or sorted(sigma) != list(range(nvars)):
        raise ValidationException("ℓ、m 与 σ 的长度必须一致，且 σ 必须是置换")
    _check_parameters(a, b, nvars)
    lhs = nabla(_h_product(ell, m, sigma, nvars))
    rhs = MultiPoly.zero(nvars)
    for k in range(nvars):
        rhs = rhs + _h_product(_shift(ell, k, -1), m, sigma, nvars).scale(ell[k] + a)
        rhs = rhs + _h_product(ell, _shift(m, k, 1), sigma, nvars).scale(b - m[k])
    return lhs, rhs


def check_dprod(
    ell: Sequence[int], m: Sequence[int], sigma: Sequence[int], a: int, b: int
) -> bool:
    lhs, rhs = dprod_sides(ell, m, sigma, a, b)
    return lhs == rhs


def leibniz_product_sides(factors: Sequence[MultiPoly]) -> Tuple[MultiPoly, MultiPoly]:
    """∇(a_1⋯a_n) 与 Σ_k a_1⋯∇(a_k)⋯a_n。"""
    if not factors:
        raise ValidationException("至少需要一个因子")
    lhs = nabla(reduce(mul, factors))
    rhs = MultiPoly.zero(factors[0].nvars)
    for k in range(len(factors)):
        replaced = list(factors)
        replaced[k] = nabla(replaced[k])
        rhs = rhs + reduce(mul, replaced)
    return lhs, rhs


def leibniz_product_check(factors: Sequence[MultiPoly]) -> bool:
    lhs, rhs = leibniz_product_sides(factors)
    return lhs == rhs
