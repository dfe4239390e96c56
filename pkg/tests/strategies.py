"""
hypothesis 生成策略：随机多项式、分拆、q 多项式与 Λ 中的元素
"""

from hypothesis import strategies as st

from app.algebra.lambda_ring import LambdaElement
from app.algebra.ring import MultiPoly, QPoly
from app.algebra.shapes import Partition


def exponents(nvars: int, max_power: int = 2):
    return st.tuples(*[st.integers(0, max_power) for _ in range(nvars)])


def polys(nvars: int, max_terms: int = 4, max_power: int = 2):
    return st.dictionaries(
        exponents(nvars, max_power), st.integers(-5, 5), max_size=max_terms
    ).map(lambda terms: MultiPoly(nvars, terms))


def poly_lists(nvars: int, min_size: int = 1, max_size: int = 5):
    return st.lists(polys(nvars, max_terms=3), min_size=min_size, max_size=max_size)


def poly_matrices(nvars: int, size: int):
    row = st.lists(polys(nvars, max_terms=3), min_size=size, max_size=size)
    return st.lists(row, min_size=size, max_size=size)


def partitions(nvars: int, max_part: int = 4):
    return st.lists(st.integers(0, max_part), min_size=nvars, max_size=nvars).map(
        lambda parts: Partition(parts=tuple(sorted(parts, reverse=True)))
    )


def qpolys(max_degree: int = 2):
    return st.lists(st.integers(-3, 3), max_size=max_degree + 1).map(QPoly)


def lambda_elements():
    index = st.lists(st.integers(1, 5), max_size=3).map(tuple)
    return st.dictionaries(index, qpolys(), max_size=3).map(LambdaElement)
