"""
分拆与斜形状测试
"""

import pytest
from hypothesis import given

from app.algebra.shapes import (
    ContentVector,
    Partition,
    SkewShape,
    add_box,
    contains,
    content,
    is_partition,
    iter_partitions,
    make_partition,
    parse_partition_text,
    remove_box,
)
from app.core.exceptions import (
    IndexRangeException,
    ParseException,
    PartitionException,
    VariableCountException,
)
from tests.strategies import partitions


class TestMakePartition:
    """P_N 成员检查"""

    def test_valid_partitions(self):
        """测试合法分拆与空分拆"""
        assert make_partition([3, 1, 0]).parts == (3, 1, 0)
        assert make_partition([]).parts == ()

    def test_not_decreasing_names_first_violation(self):
        """测试不单调时指出第一个不成立的位置"""
        with pytest.raises(PartitionException) as exc_info:
            make_partition([1, 2, 0])
        assert exc_info.value.details["index"] == 1

    def test_negative_entry(self):
        """测试负数项被拒绝并指出位置"""
        with pytest.raises(PartitionException) as exc_info:
            make_partition([2, -1])
        assert exc_info.value.details["index"] == 2

    def test_size_and_length(self):
        """测试格子数、非零长度、去零与文本形式"""
        partition = make_partition([3, 2, 0, 0])
        assert partition.size() == 5
        assert partition.length() == 2
        assert partition.trimmed() == (3, 2)
        assert str(partition) == "(3,2,0,0)"

    def test_padded(self):
        """测试补零与去掉末尾的零"""
        assert make_partition([2, 1]).padded(4).parts == (2, 1, 0, 0)
        assert make_partition([2, 0, 0]).padded(1).parts == (2,)
        with pytest.raises(PartitionException):
            make_partition([2, 1]).padded(1)


class TestBoxes:
    """加减格子与内容向量"""

    def test_remove_box(self):
        """测试从各行去掉一个格子"""
        partition = make_partition([3, 2, 2])
        assert remove_box(partition, 1).parts == (2, 2, 2)
        assert remove_box(partition, 2) is None
        assert remove_box(partition, 3).parts == (3, 2, 1)

    def test_remove_box_from_zero_row(self):
        """测试零行不能再去掉格子"""
        assert remove_box(make_partition([1, 0]), 2) is None

    def test_add_box(self):
        """测试向各行加一个格子"""
        partition = make_partition([1, 1, 0])
        assert add_box(partition, 1).parts == (2, 1, 0)
        assert add_box(partition, 2) is None
        assert add_box(partition, 3).parts == (1, 1, 1)

    def test_box_index_out_of_range(self):
        """测试行号越界"""
        with pytest.raises(IndexRangeException):
            remove_box(make_partition([1, 0]), 3)
        with pytest.raises(IndexRangeException):
            add_box(make_partition([1, 0]), 0)

    def test_content(self):
        """测试内容向量"""
        assert content(make_partition([3, 2, 1])).values == (2, 0, -2)
        assert content(make_partition([1, 1, 0])).values == (0, -1, -3)

    def test_content_is_strictly_decreasing(self):
        """测试由分拆得到的内容向量严格递减"""
        for partition in iter_partitions(3, 5):
            assert content(partition).is_strictly_decreasing()

    def test_shifted_content(self):
        """测试内容向量的单项移位"""
        shifted = ContentVector(values=(2, 0, -2)).shifted(2, -1)
        assert shifted.values == (2, -1, -2)


class TestContainment:
    """μ ⊆ λ"""

    def test_contains(self):
        """测试包含关系"""
        assert contains(make_partition([1, 1, 0]), make_partition([3, 2, 1]))
        assert not contains(make_partition([2, 0]), make_partition([1, 0]))

    def test_mismatched_lengths(self):
        """测试长度不一致时报错"""
        with pytest.raises(VariableCountException):
            contains(make_partition([1]), make_partition([1, 0]))
        with pytest.raises(VariableCountException):
            SkewShape(outer=make_partition([1]), inner=make_partition([1, 0]))

    def test_skew_shape_text(self):
        """测试斜形状的文本形式与包含判定"""
        shape = SkewShape(outer=make_partition([2, 1]), inner=make_partition([1, 0]))
        assert str(shape) == "(2,1)/(1,0)"
        assert shape.is_contained()


class TestEnumeration:
    """分拆枚举"""

    def test_partitions_of_size_at_most_four_in_two_parts(self):
        """测试两行、至多四个格子的分拆按字典序降序枚举"""
        parts = [p.parts for p in iter_partitions(2, 4)]
        assert parts == [
            (4, 0), (3, 1), (3, 0), (2, 2), (2, 1), (2, 0), (1, 1), (1, 0), (0, 0),
        ]

    def test_max_part(self):
        """测试第一行的上限"""
        parts = [p.parts for p in iter_partitions(3, 4, max_part=1)]
        assert parts == [(1, 1, 1), (1, 1, 0), (1, 0, 0), (0, 0, 0)]

    def test_zero_variables(self):
        """测试零个变量时只有空分拆"""
        assert [p.parts for p in iter_partitions(0, 3)] == [()]

    def test_every_item_is_a_partition(self):
        """测试枚举结果都是分拆且不超过格子数上限"""
        for partition in iter_partitions(4, 6):
            assert is_partition(partition.parts)
            assert partition.size() <= 6


class TestParsing:
    """命令行分拆语法"""

    def test_pad_to_nvars(self):
        """测试给定变量个数时补零"""
        assert parse_partition_text("3,2,1", 4).parts == (3, 2, 1, 0)
        assert parse_partition_text("", 2).parts == (0, 0)

    def test_trim_without_nvars(self):
        """测试未给定变量个数时去掉末尾的零"""
        assert parse_partition_text("2,1,0").parts == (2, 1)
        assert parse_partition_text("").parts == ()

    def test_bad_text(self):
        """测试非整数文本被拒绝"""
        with pytest.raises(ParseException):
            parse_partition_text("3,a", 2)

    def test_not_a_partition(self):
        """测试不单调的文本被拒绝"""
        with pytest.raises(PartitionException):
            parse_partition_text("1,2", 2)

    def test_too_long(self):
        """测试非零部分超过变量个数时报错"""
        with pytest.raises(PartitionException):
            parse_partition_text("1,1,1", 2)

    def test_partition_model_is_hashable(self):
        """测试分拆模型可哈希"""
        assert {Partition(parts=(1, 0)), Partition(parts=(1, 0))} == {Partition(parts=(1, 0))}


class TestBoxInvariants:
    """加减格子与内容向量的不变式"""

    @pytest.mark.parametrize("nvars", [1, 2, 3, 4])
    def test_remove_then_add_is_identity(self, nvars):
        """测试 λ - e_i 存在时再加回第 i 行得到 λ，且 λ - e_i ⊆ λ"""
        for partition in iter_partitions(nvars, 6):
            for i in range(1, nvars + 1):
                smaller = remove_box(partition, i)
                if smaller is None:
                    continue
                assert add_box(smaller, i) == partition
                assert contains(smaller, partition)

    @pytest.mark.parametrize("nvars", [1, 2, 3, 4])
    def test_add_then_remove_is_identity(self, nvars):
        """测试 μ + e_i 存在时再去掉第 i 行得到 μ，且 μ ⊆ μ + e_i"""
        for partition in iter_partitions(nvars, 6):
            for i in range(1, nvars + 1):
                larger = add_box(partition, i)
                if larger is None:
                    continue
                assert remove_box(larger, i) == partition
                assert contains(partition, larger)

    @given(partitions(3, max_part=5))
    def test_box_changes_keep_partition_property(self, partition):
        """测试加减格子的结果总是分拆，且只改动一行"""
        for i in range(1, 4):
            for result in (remove_box(partition, i), add_box(partition, i)):
                if result is None:
                    continue
                assert is_partition(result.parts)
                changed = [k for k in range(3) if result.parts[k] != partition.parts[k]]
                assert changed == [i - 1]

    @pytest.mark.parametrize("nvars,max_size", [(1, 6), (2, 6), (3, 6), (4, 5)])
    def test_content_is_injective(self, nvars, max_size):
        """测试不同分拆的内容向量互不相同，且可由内容向量还原分拆"""
        seen = {}
        for partition in iter_partitions(nvars, max_size):
            values = content(partition).values
            assert values not in seen
            seen[values] = partition
            restored = tuple(value + index for index, value in enumerate(values, start=1))
            assert restored == partition.parts
