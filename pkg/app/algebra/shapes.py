"""
分拆与斜形状模块

P_N 中的分拆、斜形状、加减格子以及移位内容向量 ℓ_i = λ_i - i。
"""

from typing import Iterator, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.errors import ErrorMessages
from app.core.exceptions import (
    IndexRangeException,
    PartitionException,
    VariableCountException,
    handle_parse_error,
)


def _first_violation(parts: Sequence[int]) -> Optional[PartitionException]:
    """按 a_1 >= a_2 >= ... >= a_N >= 0 的顺序检查，返回第一个不成立的不等式对应的异常。"""
    size = len(parts)
    for index in range(size):
        following = parts[index + 1] if index + 1 < size else 0
        if parts[index] >= following:
            continue
        if index + 1 == size:
            return PartitionException(
                ErrorMessages.PARTITION_NEGATIVE_ENTRY.format(index=index + 1, value=parts[index]),
                details={"parts": list(parts), "index": index + 1},
            )
        return PartitionException(
            ErrorMessages.PARTITION_NOT_DECREASING.format(
                index=index + 1, left=parts[index], next_index=index + 2, right=following
            ),
            details={"parts": list(parts), "index": index + 1},
        )
    return None


def is_partition(parts: Sequence[int]) -> bool:
    """parts 是否单调不增且非负。"""
    return _first_violation(parts) is None


class Partition(BaseModel):
    """长度恰为 N 的分拆（P_N 的元素），末尾的零参与下标计算。"""

    model_config = ConfigDict(frozen=True)

    parts: Tuple[int, ...] = Field(..., description="单调不增的非负整数 N 元组")

    @field_validator("parts")
    @classmethod
    def check_chain(cls, parts: Tuple[int, ...]) -> Tuple[int, ...]:
        violation = _first_violation(parts)
        if violation is not None:
            raise violation
        return parts

    @property
    def nvars(self) -> int:
        return len(self.parts)

    def size(self) -> int:
        """格子总数 |λ|。"""
        return sum(self.parts)

    def length(self) -> int:
        """非零部分的个数。"""
        return sum(1 for part in self.parts if part)

    def trimmed(self) -> Tuple[int, ...]:
        return self.parts[: self.length()]

    def padded(self, nvars: int) -> "Partition":
        """补零或去掉末尾的零，使长度恰为 nvars。"""
        if self.length() > nvars:
            raise PartitionException(
                ErrorMessages.PARTITION_TOO_LONG.format(parts=self.parts, nvars=nvars)
            )
        return Partition(parts=self.trimmed() + (0,) * (nvars - self.length()))

    def __str__(self) -> str:
        return "(" + ",".join(str(part) for part in self.parts) + ")"


class SkewShape(BaseModel):
    """斜形状 λ/μ。不要求 μ ⊆ λ；不包含时斜 Schur 多项式为零。"""

    model_config = ConfigDict(frozen=True)

    outer: Partition
    inner: Partition

    @model_validator(mode="after")
    def check_nvars(self) -> "SkewShape":
        if self.outer.nvars != self.inner.nvars:
            raise VariableCountException(
                ErrorMessages.VARIABLE_COUNT_MISMATCH.format(
                    left=self.outer.nvars, right=self.inner.nvars
                )
            )
        return self

    @property
    def nvars(self) -> int:
        return self.outer.nvars

    def is_contained(self) -> bool:
        return contains(self.inner, self.outer)

    def __str__(self) -> str:
        return f"{self.outer}/{self.inner}"


class ContentVector(BaseModel):
    """
    移位内容向量，values[i] = parts[i] - (i+1)。

    由分拆得到时严格递减；行列式引理里会出现 ℓ - e_k 这种不一定严格递减的向量，
    所以这里不强制严格递减。
    """

    model_config = ConfigDict(frozen=True)

    values: Tuple[int, ...]

    @property
    def nvars(self) -> int:
        return len(self.values)

    def is_strictly_decreasing(self) -> bool:
        return all(a > b for a, b in zip(self.values, self.values[1:]))

    def shifted(self, k: int, delta: int) -> "ContentVector":
        """返回 values + delta * e_k（k 从 1 开始）。"""
        _check_index(k, self.nvars)
        values = list(self.values)
        values[k - 1] += delta
        return ContentVector(values=tuple(values))


def _check_index(i: int, nvars: int) -> None:
    if not 1 <= i <= nvars:
        raise IndexRangeException(ErrorMessages.BOX_INDEX_OUT_OF_RANGE.format(index=i, nvars=nvars))


# =================================================================================
# 分拆运算
# =================================================================================


def make_partition(raw: Sequence[int]) -> Partition:
    """检查 raw 是否属于 P_N；不满足时异常消息指出第一个不成立的不等式。"""
    return Partition(parts=tuple(int(part) for part in raw))


def remove_box(partition: Partition, i: int) -> Optional[Partition]:
    """λ - e_i 属于 P_N 时返回它，否则返回 None。"""
    _check_index(i, partition.nvars)
    parts = list(partition.parts)
    parts[i - 1] -= 1
    return Partition(parts=tuple(parts)) if is_partition(parts) else None


def add_box(partition: Partition, i: int) -> Optional[Partition]:
    """μ + e_i 属于 P_N 时返回它，否则返回 None。"""
    _check_index(i, partition.nvars)
    parts = list(partition.parts)
    parts[i - 1] += 1
    return Partition(parts=tuple(parts)) if is_partition(parts) else None


def content(partition: Partition) -> ContentVector:
    return ContentVector(
        values=tuple(part - index for index, part in enumerate(partition.parts, start=1))
    )


def contains(inner: Partition, outer: Partition) -> bool:
    """μ ⊆ λ，即对每个 i 都有 μ_i <= λ_i。"""
    if inner.nvars != outer.nvars:
        raise VariableCountException(
            ErrorMessages.VARIABLE_COUNT_MISMATCH.format(left=inner.nvars, right=outer.nvars)
        )
    return all(small <= big for small, big in zip(inner.parts, outer.parts))


def iter_partitions(
    nvars: int, max_size: int, max_part: Optional[int] = None
) -> Iterator[Partition]:
    """
    枚举 P_N 中 |λ| <= max_size（且 λ_1 <= max_part）的所有分拆，按 parts 的字典序降序。
    """
    upper = max_size if max_part is None else min(max_part, max_size)

    def build(slots: int, budget: int, cap: int) -> Iterator[Tuple[int, ...]]:
        if slots == 0:
            yield ()
            return
        for first in range(min(cap, budget), -1, -1):
            for rest in build(slots - 1, budget - first, first):
                yield (first,) + rest

    for parts in build(nvars, max_size, max(upper, 0)):
        yield Partition(parts=parts)


def parse_partition_text(text: str, nvars: Optional[int] = None) -> Partition:
    """
    解析命令行分拆语法 `3,2,1`。

    给定 nvars 时补零到 N 元组（空串即全零分拆）；未给定时去掉末尾的零，
    得到 Λ 中使用的有限分拆。
    """
    stripped = text.strip()
    try:
        raw = [int(piece) for piece in stripped.split(",")] if stripped else []
    except ValueError as e:
        raise handle_parse_error(e, "partition", text, ErrorMessages.PARTITION_PARSE_FAILED)
    partition = make_partition(raw)
    if nvars is None:
        return Partition(parts=partition.trimmed())
    return partition.padded(nvars)
