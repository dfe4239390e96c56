"""
对称多项式模块

完全齐次对称多项式 h_n、Jacobi-Trudi 矩阵与行列式、斜 Schur 多项式、
基于半标准杨表（SSYT）枚举的独立校验实现，以及 Schur 基展开。
"""

import logging
from itertools import permutations
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from app.algebra.ring import MultiPoly
from app.algebra.shapes import Partition, SkewShape, content, contains
from app.core.config import settings
from app.core.errors import ErrorMessages
from app.core.exceptions import MatrixShapeException, NonSymmetricException, ValidationException
from app.core.performance import monitor_performance, record_cache_hit, record_cache_miss

logger = logging.getLogger(__name__)

PolyMatrix = Sequence[Sequence[MultiPoly]]

# =================================================================================
# 结果缓存
# =================================================================================

_h_cache: Dict[Tuple[int, int], MultiPoly] = {}
_schur_cache: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], MultiPoly] = {}


def _trim_cache(cache: dict, limit: int) -> None:
    # 缓存过大时清理一半
    if len(cache) > limit:
        for key in list(cache.keys())[: limit // 2]:
            # 并发请求可能同时清理同一批键
            cache.pop(key, None)


# =================================================================================
# 完全齐次对称多项式
# =================================================================================


def _iter_weak_compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """n 的 parts 段弱合成，按字典序降序。"""
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _iter_weak_compositions(n - first, parts - 1):
            yield (first,) + rest


def h(n: int, nvars: int) -> MultiPoly:
    """h_n(x_1, ..., x_N)：所有 n 次单项式之和；h_0 = 1，n < 0 时为 0。"""
    if nvars < 0:
        raise ValidationException(ErrorMessages.NEGATIVE_NVARS.format(nvars=nvars))
    if n < 0:
        return MultiPoly.zero(nvars)
    key = (n, nvars)
    cached = _h_cache.get(key)
    if cached is not None:
        record_cache_hit("h_cache")
        return cached
    record_cache_miss("h_cache")
    _trim_cache(_h_cache, settings.compute.h_cache_size)
    poly = MultiPoly(nvars, {exponent: 1 for exponent in _iter_weak_compositions(n, nvars)})
    _h_cache[key] = poly
    return poly


# =================================================================================
# Jacobi-Trudi 矩阵
# =================================================================================


class HIndexMatrix(BaseModel):
    """
    h 下标矩阵，entry(i, j) = ℓ_i - m_j = λ_i - μ_j - i + j。

    同一行里两列之差只依赖于列号，验证器会检查这一点。
    """

    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, ...], ...]

    @field_validator("entries")
    @classmethod
    def check_entries(cls, entries):
        size = len(entries)
        for index, row in enumerate(entries, start=1):
            if len(row) != size:
                raise MatrixShapeException(
                    ErrorMessages.MATRIX_NOT_SQUARE.format(row=index, length=len(row), size=size)
                )
        for row in entries[1:]:
            first = entries[0]
            if any(row[j] - row[0] != first[j] - first[0] for j in range(size)):
                raise ValidationException("h 下标矩阵的列差必须与行无关")
        return entries

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def from_contents(cls, ell: Sequence[int], m: Sequence[int]) -> "HIndexMatrix":
        if len(ell) != len(m):
            raise MatrixShapeException(
                ErrorMessages.MATRIX_NOT_SQUARE.format(row=1, length=len(m), size=len(ell))
            )
        return cls(entries=tuple(tuple(li - mj for mj in m) for li in ell))

    def to_poly_matrix(self, nvars: int) -> List[List[MultiPoly]]:
        return [[h(entry, nvars) for entry in row] for row in self.entries]


def jt_matrix(shape: SkewShape) -> HIndexMatrix:
    return HIndexMatrix.from_contents(content(shape.outer).values, content(shape.inner).values)


# =================================================================================
# 行列式
# =================================================================================


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def _det_bareiss(rows: List[List[MultiPoly]], nvars: int) -> MultiPoly:
    """无分式 Bareiss 消元，每一步的除法都是精确除法。"""
    matrix = [list(row) for row in rows]
    size = len(matrix)
    sign = 1
    previous = MultiPoly.one(nvars)
    for k in range(size - 1):
        if matrix[k][k].is_zero():
            pivot = next((i for i in range(k + 1, size) if not matrix[i][k].is_zero()), None)
            if pivot is None:
                return MultiPoly.zero(nvars)
            matrix[k], matrix[pivot] = matrix[pivot], matrix[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                value = matrix[k][k] * matrix[i][j] - matrix[i][k] * matrix[k][j]
                matrix[i][j] = value.exquo(previous) if k else value
        previous = matrix[k][k]
    result = matrix[size - 1][size - 1]
    return result if sign > 0 else -result


def _det_leibniz(rows: List[List[MultiPoly]], nvars: int) -> MultiPoly:
    """按定义对 S_N 求带符号的和。"""
    size = len(rows)
    total = MultiPoly.zero(nvars)
    for perm in permutations(range(size)):
        product = MultiPoly.one(nvars)
        for i, j in enumerate(perm):
            entry = rows[i][j]
            if entry.is_zero():
                product = None
                break
            product = product * entry
        if product is None:
            continue
        total = total + product if _permutation_sign(perm) > 0 else total - product
    return total


def det_poly(
    matrix: PolyMatrix, backend: Optional[str] = None, nvars: Optional[int] = None
) -> MultiPoly:
    """
    多项式矩阵的精确行列式。

    Args:
        matrix: MultiPoly 方阵，所有元素变量个数相同
        backend: "bareiss"（默认）或 "leibniz"（仅用于交叉校验，阶数受限）
        nvars: 空矩阵时必须给出

    Returns:
        行列式
    """
    rows = [list(row) for row in matrix]
    size = len(rows)
    for index, row in enumerate(rows, start=1):
        if len(row) != size:
            raise MatrixShapeException(
                ErrorMessages.MATRIX_NOT_SQUARE.format(row=index, length=len(row), size=size)
            )
    counts = {entry.nvars for row in rows for entry in row}
    if len(counts) > 1 or (nvars is not None and counts and counts != {nvars}):
        raise MatrixShapeException(ErrorMessages.MATRIX_MIXED_NVARS)
    if size == 0:
        if nvars is None:
            raise MatrixShapeException(ErrorMessages.MATRIX_EMPTY_NVARS)
        return MultiPoly.one(nvars)
    nvars = counts.pop()

    backend = backend or settings.compute.det_backend
    if backend == "bareiss":
        return _det_bareiss(rows, nvars)
    if backend == "leibniz":
        limit = settings.compute.leibniz_max_size
        if size > limit:
            raise MatrixShapeException(
                ErrorMessages.LEIBNIZ_SIZE_EXCEEDED.format(limit=limit, size=size)
            )
        return _det_leibniz(rows, nvars)
    raise ValidationException(ErrorMessages.UNKNOWN_DET_BACKEND.format(backend=backend))


def content_determinant(
    ell: Sequence[int], m: Sequence[int], nvars: int, backend: Optional[str] = None
) -> MultiPoly:
    """det(h_{ℓ_i - m_j})，ℓ 与 m 可以是任意整数 N 元组。"""
    matrix = HIndexMatrix.from_contents(ell, m)
    return det_poly(matrix.to_poly_matrix(nvars), backend=backend, nvars=nvars)


# =================================================================================
# 斜 Schur 多项式
# =================================================================================


@monitor_performance("skew_schur")
def skew_schur(shape: SkewShape) -> MultiPoly:
    """s_{λ/μ} = det(h_{λ_i - μ_j - i + j})；μ ⊄ λ 时直接返回 0。"""
    nvars = shape.nvars
    if not shape.is_contained():
        return MultiPoly.zero(nvars)
    key = (shape.outer.parts, shape.inner.parts)
    cached = _schur_cache.get(key)
    if cached is not None:
        record_cache_hit("schur_cache")
        return cached
    record_cache_miss("schur_cache")
    _trim_cache(_schur_cache, settings.compute.schur_cache_size)
    poly = det_poly(jt_matrix(shape).to_poly_matrix(nvars), nvars=nvars)
    _schur_cache[key] = poly
    return poly


def schur(partition: Partition) -> MultiPoly:
    """s_λ = s_{λ/0}。"""
    return skew_schur(SkewShape(outer=partition, inner=Partition(parts=(0,) * partition.nvars)))


def ssyt_skew_schur(shape: SkewShape) -> MultiPoly:
    """
    独立的组合定义：对形状 λ/μ、元素取自 [N] 的所有半标准杨表求 x^{weight} 之和。

    逐列回溯，同一列自上而下填写；行弱增、列严格增。
    """
    nvars = shape.nvars
    if not contains(shape.inner, shape.outer):
        return MultiPoly.zero(nvars)
    outer, inner = shape.outer.parts, shape.inner.parts
    width = outer[0] if nvars else 0

    def in_shape(row: int, col: int) -> bool:
        return 0 <= row < nvars and inner[row] <= col < outer[row]

    cells = [(row, col) for col in range(width) for row in range(nvars) if in_shape(row, col)]
    # 同一列中位于当前格子下方的格子数，用来给取值上界剪枝
    below = [sum(1 for r in range(row + 1, nvars) if in_shape(r, col)) for row, col in cells]

    filling = [[0] * width for _ in range(nvars)]
    weight = [0] * nvars
    counts: Dict[Tuple[int, ...], int] = {}

    def backtrack(position: int) -> None:
        if position == len(cells):
            key = tuple(weight)
            counts[key] = counts.get(key, 0) + 1
            return
        row, col = cells[position]
        low = 1
        if in_shape(row, col - 1):
            low = max(low, filling[row][col - 1])
        if in_shape(row - 1, col):
            low = max(low, filling[row - 1][col] + 1)
        for value in range(low, nvars - below[position] + 1):
            filling[row][col] = value
            weight[value - 1] += 1
            backtrack(position + 1)
            weight[value - 1] -= 1
        filling[row][col] = 0

    backtrack(0)
    return MultiPoly(nvars, counts)


# =================================================================================
# Schur 基展开
# =================================================================================


class SchurExpansion:
    """有限和 Σ c_λ s_λ，系数为非零整数。"""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Partition, int]] = None):
        self.nvars = nvars
        self._terms = {partition: int(c) for partition, c in (terms or {}).items() if c}

    @property
    def terms(self) -> Dict[Partition, int]:
        return dict(self._terms)

    def coefficient(self, parts: Sequence[int]) -> int:
        return self._terms.get(Partition(parts=tuple(parts)), 0)

    def sorted_items(self) -> List[Tuple[Partition, int]]:
        """分拆按字典序降序排列。"""
        return sorted(self._terms.items(), key=lambda item: item[0].parts, reverse=True)

    def reconstruct(self) -> MultiPoly:
        total = MultiPoly.zero(self.nvars)
        for partition, coeff in self._terms.items():
            total = total + schur(partition).scale(coeff)
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchurExpansion):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __repr__(self) -> str:
        return f"SchurExpansion({self.to_text()})"

    def to_text(self) -> str:
        """例如 `2*s(2,2,2) - s(3,1,0)`；空展开为 `0`。"""
        if not self._terms:
            return "0"
        pieces = []
        for partition, coeff in self.sorted_items():
            symbol = f"s{partition}"
            body = symbol if abs(coeff) == 1 else f"{abs(coeff)}*{symbol}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f" + {body}" if coeff > 0 else f" - {body}")
        return "".join(pieces)

    def to_json_dict(self) -> Dict[str, list]:
        return {
            "terms": [
                {"partition": list(partition.parts), "coeff": str(coeff)}
                for partition, coeff in self.sorted_items()
            ]
        }


def expand_schur_basis(p: MultiPoly) -> SchurExpansion:
    """
    贪心消元：反复取字典序最大的指数 α，减去 coeff(α)·s_α。

    s_α 的字典序首项恰为 x^α 且系数为 1，所以消元是单位三角的；
    首项指数不是单调不增时说明输入不对称。
    """
    remainder = p
    terms: Dict[Partition, int] = {}
    while not remainder.is_zero():
        exponent, coeff = remainder.leading_term()
        if any(a < b for a, b in zip(exponent, exponent[1:])):
            raise NonSymmetricException(
                ErrorMessages.NON_SYMMETRIC_INPUT.format(exponent=exponent),
                details={"polynomial": p.to_text()},
            )
        partition = Partition(parts=exponent)
        terms[partition] = coeff
        remainder = remainder - schur(partition).scale(coeff)
    return SchurExpansion(p.nvars, terms)
