"""
对称函数环 Λ 模块

Λ 中的元素用 h 基表示：h_λ = h_{λ_1} h_{λ_2} ⋯ 的有限线性组合，系数属于 Z[q]。
h_1, h_2, ... 自由生成 Λ，所以 h 单项式构成基，比较 terms 即可判断相等。
"""

import logging
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from app.algebra.ring import MultiPoly, QPoly
from app.algebra.shapes import Partition, is_partition
from app.algebra.symfunc import h
from app.core.config import settings
from app.core.errors import ErrorMessages
from app.core.exceptions import (
    MatrixShapeException,
    ParameterConstraintException,
    handle_parse_error,
)
from app.core.performance import monitor_performance
from app.schemas.algebra import QCornerTerm, Theorem3Report

logger = logging.getLogger(__name__)

HIndex = Tuple[int, ...]
Coefficient = Union[QPoly, int]


def _normalize_index(index: Iterable[int]) -> Optional[HIndex]:
    """去掉 h_0 = 1，按降序排列；含负下标（h_n = 0）时返回 None。"""
    parts = [int(part) for part in index]
    if any(part < 0 for part in parts):
        return None
    return tuple(sorted((part for part in parts if part), reverse=True))


def _as_qpoly(value: Coefficient) -> QPoly:
    return value if isinstance(value, QPoly) else QPoly.constant(int(value))


class LambdaElement:
    """Σ c_λ h_λ，键为不含零的分拆，系数为非零 QPoly。"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Iterable[int], Coefficient]] = None):
        clean: Dict[HIndex, QPoly] = {}
        for index, coeff in (terms or {}).items():
            key = _normalize_index(index)
            if key is None:
                continue
            clean[key] = clean.get(key, QPoly.zero()) + _as_qpoly(coeff)
        self._terms = {key: coeff for key, coeff in clean.items() if not coeff.is_zero()}

    @classmethod
    def _from_clean(cls, terms: Dict[HIndex, QPoly]) -> "LambdaElement":
        element = cls.__new__(cls)
        element._terms = {key: coeff for key, coeff in terms.items() if not coeff.is_zero()}
        return element

    @classmethod
    def zero(cls) -> "LambdaElement":
        return cls._from_clean({})

    @classmethod
    def one(cls) -> "LambdaElement":
        return cls._from_clean({(): QPoly.constant(1)})

    @classmethod
    def constant(cls, value: Coefficient) -> "LambdaElement":
        return cls._from_clean({(): _as_qpoly(value)})

    @property
    def terms(self) -> Dict[HIndex, QPoly]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_items(self) -> List[Tuple[HIndex, QPoly]]:
        """按 h 下标元组的字典序升序，常数项在最前。"""
        return sorted(self._terms.items())

    # ---- 环运算 ----

    def _coerce(self, other: Union["LambdaElement", Coefficient]) -> "LambdaElement":
        if isinstance(other, LambdaElement):
            return other
        return LambdaElement.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        result = dict(self._terms)
        for key, coeff in other._terms.items():
            result[key] = result.get(key, QPoly.zero()) + coeff
        return LambdaElement._from_clean(result)

    __radd__ = __add__

    def __neg__(self) -> "LambdaElement":
        return LambdaElement._from_clean({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, factor: Coefficient) -> "LambdaElement":
        factor = _as_qpoly(factor)
        return LambdaElement._from_clean(
            {key: coeff * factor for key, coeff in self._terms.items()}
        )

    def __mul__(self, other):
        other = self._coerce(other)
        result: Dict[HIndex, QPoly] = {}
        for left_key, left_coeff in self._terms.items():
            for right_key, right_coeff in other._terms.items():
                key = tuple(sorted(left_key + right_key, reverse=True))
                result[key] = result.get(key, QPoly.zero()) + left_coeff * right_coeff
        return LambdaElement._from_clean(result)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LambdaElement.constant(other)
        if not isinstance(other, LambdaElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"LambdaElement('{self.to_text()}')"

    def __str__(self) -> str:
        return self.to_text()

    def __reduce__(self):
        return (LambdaElement, (self._terms,))

    # ---- 序列化 ----

    def to_text(self) -> str:
        """例如 `(q + 1)*h(1,1) + q*h(2)`；零元为 `0`。"""
        if not self._terms:
            return "0"
        pieces = []
        for key, coeff in self.sorted_items():
            negative = coeff.coeffs[-1] < 0
            magnitude = -coeff if negative else coeff
            monomial = "h(" + ",".join(str(part) for part in key) + ")" if key else ""
            coeff_text = magnitude.to_text()
            if not monomial:
                body = coeff_text
            elif magnitude == 1:
                body = monomial
            elif len([c for c in magnitude.coeffs if c]) > 1:
                body = f"({coeff_text})*{monomial}"
            else:
                body = f"{coeff_text}*{monomial}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "terms": [
                {"h": list(key), "coeff": coeff.to_text()} for key, coeff in self.sorted_items()
            ]
        }

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any]) -> "LambdaElement":
        try:
            terms = [(tuple(int(p) for p in term["h"]), term["coeff"]) for term in data["terms"]]
        except (KeyError, TypeError, ValueError) as e:
            raise handle_parse_error(e, "lambda", str(data), ErrorMessages.POLY_PARSE_FAILED)
        result = cls.zero()
        for key, coeff_text in terms:
            result = result + cls({key: QPoly.from_text(coeff_text)})
        return result


# =================================================================================
# Λ 中的运算
# =================================================================================


def h_generator(n: int) -> LambdaElement:
    """h_n；h_0 = 1，n < 0 时为 0。"""
    if n < 0:
        return LambdaElement.zero()
    return LambdaElement({(n,): 1})


def lambda_mul(u: LambdaElement, v: LambdaElement) -> LambdaElement:
    return u * v


def _finite_parts(partition: Union[Partition, Sequence[int]]) -> HIndex:
    parts = partition.parts if isinstance(partition, Partition) else tuple(partition)
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return tuple(int(part) for part in parts)


def _padded(parts: HIndex, size: int) -> HIndex:
    return parts + (0,) * (size - len(parts))


@monitor_performance("lambda_skew_schur")
def lambda_skew_schur(
    outer: Union[Partition, Sequence[int]],
    inner: Union[Partition, Sequence[int]],
    size: Optional[int] = None,
) -> LambdaElement:
    """
    Λ 中的 s_{λ/μ} = det(h_{λ_i - μ_j - i + j})，行列式阶数 N0 默认为
    max(ℓ(λ), ℓ(μ)) + 1；给出更大的 size 时结果不变。

    矩阵元素都是单个生成元，所以按行做 Laplace 展开，子式按已用列的位掩码缓存。
    """
    lam, mu = _finite_parts(outer), _finite_parts(inner)
    minimum = max(len(lam), len(mu)) + 1
    size = minimum if size is None else max(size, minimum)
    limit = settings.compute.lambda_max_size
    if size > limit:
        raise MatrixShapeException(ErrorMessages.LAMBDA_SIZE_EXCEEDED.format(size=size, limit=limit))
    lam, mu = _padded(lam, size), _padded(mu, size)
    entries = [[h_generator(lam[i] - mu[j] - i + j) for j in range(size)] for i in range(size)]

    @lru_cache(maxsize=None)
    def minor(row: int, used: int) -> LambdaElement:
        if row == size:
            return LambdaElement.one()
        total = LambdaElement.zero()
        position = 0
        for col in range(size):
            if used & (1 << col):
                continue
            entry = entries[row][col]
            if not entry.is_zero():
                term = entry * minor(row + 1, used | (1 << col))
                total = total - term if position % 2 else total + term
            position += 1
        return total

    return minor(0, 0)


def nabla_q(u: LambdaElement) -> LambdaElement:
    """∇_q(h_{λ_1}⋯h_{λ_k}) = Σ_j (λ_j + q - 1)·h_{λ_1}⋯h_{λ_j - 1}⋯h_{λ_k}。"""
    result: Dict[Tuple[int, ...], QPoly] = {}
    for key, coeff in u.terms.items():
        for j, part in enumerate(key):
            lowered = _normalize_index(key[:j] + (part - 1,) + key[j + 1:])
            factor = QPoly((part - 1, 1))
            result[lowered] = result.get(lowered, QPoly.zero()) + coeff * factor
    return LambdaElement._from_clean(result)


def specialize(u: LambdaElement, nvars: int) -> MultiPoly:
    """π：q ↦ N，h_n ↦ h_n(x_1, ..., x_N)。"""
    total = MultiPoly.zero(nvars)
    for key, coeff in u.terms.items():
        value = coeff.evaluate(nvars)
        if not value:
            continue
        product = MultiPoly.constant(value, nvars)
        for part in key:
            product = product * h(part, nvars)
        total = total + product
    return total


# =================================================================================
# Λ 中的角展开
# =================================================================================


@monitor_performance("check_theorem3")
def check_theorem3(
    outer: Union[Partition, Sequence[int]],
    inner: Union[Partition, Sequence[int]],
    a: QPoly,
    b: QPoly,
) -> Theorem3Report:
    """
    在 Λ 中验证 ∇_q(s_{λ/μ}) = Σ (ℓ_i + a)s_{(λ-e_i)/μ} + Σ (b - m_i)s_{λ/(μ+e_i)}。

    i 只需取到 L + 1（L = max(ℓ(λ), ℓ(μ))）：更大的 i 既不能去掉格子也不能添加格子。
    """
    if a + b != QPoly((-1, 1)):
        raise ParameterConstraintException(
            ErrorMessages.PARAMETER_CONSTRAINT_Q.format(a=a.to_text(), b=b.to_text()),
            details={"a": a.to_text(), "b": b.to_text()},
        )
    lam, mu = _finite_parts(outer), _finite_parts(inner)
    width = max(len(lam), len(mu)) + 1
    lam_padded, mu_padded = _padded(lam, width), _padded(mu, width)

    rhs = LambdaElement.zero()
    outer_terms: List[QCornerTerm] = []
    inner_terms: List[QCornerTerm] = []
    for i in range(1, width + 1):
        smaller = list(lam_padded)
        smaller[i - 1] -= 1
        if is_partition(smaller):
            coefficient = a + (lam_padded[i - 1] - i)
            rhs = rhs + lambda_skew_schur(smaller, mu).scale(coefficient)
            outer_terms.append(
                QCornerTerm(index=i, coefficient=coefficient.to_text(), partition=_finite_parts(smaller))
            )
    for i in range(1, width + 1):
        larger = list(mu_padded)
        larger[i - 1] += 1
        if is_partition(larger):
            coefficient = b - (mu_padded[i - 1] - i)
            rhs = rhs + lambda_skew_schur(lam, larger).scale(coefficient)
            inner_terms.append(
                QCornerTerm(index=i, coefficient=coefficient.to_text(), partition=_finite_parts(larger))
            )

    lhs = nabla_q(lambda_skew_schur(lam, mu))
    return Theorem3Report(
        outer=lam,
        inner=mu,
        a=a.to_text(),
        b=b.to_text(),
        lhs=lhs,
        rhs=rhs,
        outer_terms=outer_terms,
        inner_terms=inner_terms,
        verdict=lhs == rhs,
    )
