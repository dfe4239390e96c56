"""
精确多项式环模块

R = Z[x1, ..., xN] 上的稀疏多项式（任意精度整数系数），以及系数环 Z[q] 上的一元多项式。
所有值构造后不可变，运算都是纯函数。
"""

import logging
import re
from operator import add, sub
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from app.core.errors import ErrorMessages
from app.core.exceptions import (
    ExactDivisionException,
    IndexRangeException,
    ValidationException,
    VariableCountException,
    handle_parse_error,
)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]

_TRANSFORMATIONS = standard_transformations + (convert_xor,)

# parse_expr 内部会 eval，只放行数字、运算符和变量名
_POLY_TEXT_PATTERN = re.compile(r"[\s0-9+\-*^()x]*")
_QPOLY_TEXT_PATTERN = re.compile(r"^[\s0-9+\-*^()q]*$")


def _sympy_terms(text: str, symbols: Tuple[sympy.Symbol, ...]) -> List[Tuple[Exponent, int]]:
    """用 sympy 把文本展开成 (指数向量, 整数系数) 列表；失败时抛出 ValueError。"""
    local_dict = {str(symbol): symbol for symbol in symbols}
    expr = sympy.expand(parse_expr(text, local_dict=local_dict, transformations=_TRANSFORMATIONS))
    unknown = expr.free_symbols - set(symbols)
    if unknown:
        raise ValueError(f"未知变量 {sorted(str(s) for s in unknown)}")
    if not symbols:
        if not expr.is_Integer:
            raise ValueError("系数必须是整数")
        return [((), int(expr))]
    poly = sympy.Poly(expr, *symbols, domain="ZZ")
    return [(tuple(int(e) for e in monom), int(coeff)) for monom, coeff in poly.terms()]


class MultiPoly:
    """
    N 元稀疏多项式。

    terms 把长度为 N 的指数向量映射到非零整数系数；零系数从不存储，
    因此两个多项式相等当且仅当它们的 terms 相等。
    """

    __slots__ = ("_nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, int]] = None):
        if nvars < 0:
            raise ValidationException(ErrorMessages.NEGATIVE_NVARS.format(nvars=nvars))
        clean: Dict[Exponent, int] = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != nvars:
                raise ValidationException(
                    ErrorMessages.EXPONENT_LENGTH_MISMATCH.format(
                        nvars=nvars, length=len(exponent), exponent=exponent
                    )
                )
            if any(e < 0 for e in exponent):
                raise ValidationException(
                    ErrorMessages.NEGATIVE_EXPONENT.format(exponent=exponent)
                )
            coeff = int(coeff)
            if coeff:
                clean[exponent] = coeff
        self._nvars = nvars
        self._terms = clean

    @classmethod
    def _from_clean(cls, nvars: int, terms: Dict[Exponent, int]) -> "MultiPoly":
        # 调用方保证 terms 已是规范形式
        poly = cls.__new__(cls)
        poly._nvars = nvars
        poly._terms = terms
        return poly

    # ---- 构造 ----

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._from_clean(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "MultiPoly":
        return cls.constant(1, nvars)

    @classmethod
    def constant(cls, value: int, nvars: int) -> "MultiPoly":
        value = int(value)
        return cls._from_clean(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, k: int, nvars: int) -> "MultiPoly":
        """返回变量 x_k（k 从 1 开始）。"""
        if not 1 <= k <= nvars:
            raise IndexRangeException(
                ErrorMessages.VARIABLE_INDEX_OUT_OF_RANGE.format(index=k, nvars=nvars)
            )
        exponent = tuple(1 if i == k - 1 else 0 for i in range(nvars))
        return cls._from_clean(nvars, {exponent: 1})

    # ---- 基本属性 ----

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def sorted_terms(self) -> List[Tuple[Exponent, int]]:
        """按字典序降序排列的项（规范顺序）。"""
        return sorted(self._terms.items(), reverse=True)

    def leading_term(self) -> Optional[Tuple[Exponent, int]]:
        """字典序 x1 > x2 > ... > xN 下的首项；零多项式返回 None。"""
        if not self._terms:
            return None
        exponent = max(self._terms)
        return exponent, self._terms[exponent]

    def degree(self) -> Optional[int]:
        if not self._terms:
            return None
        return max(sum(exponent) for exponent in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(exponent) for exponent in self._terms}) <= 1

    def swap_variables(self, i: int, j: int) -> "MultiPoly":
        """交换变量 x_i 与 x_j（下标从 1 开始）。"""
        for index in (i, j):
            if not 1 <= index <= self._nvars:
                raise IndexRangeException(
                    ErrorMessages.VARIABLE_INDEX_OUT_OF_RANGE.format(index=index, nvars=self._nvars)
                )
        swapped = {}
        for exponent, coeff in self._terms.items():
            values = list(exponent)
            values[i - 1], values[j - 1] = values[j - 1], values[i - 1]
            swapped[tuple(values)] = coeff
        return MultiPoly._from_clean(self._nvars, swapped)

    # ---- 运算 ----

    def _coerce(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other._nvars != self._nvars:
                raise VariableCountException(
                    ErrorMessages.VARIABLE_COUNT_MISMATCH.format(left=self._nvars, right=other._nvars),
                    details={"left": self._nvars, "right": other._nvars},
                )
            return other
        if isinstance(other, int):
            return MultiPoly.constant(other, self._nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result = dict(self._terms)
        for exponent, coeff in other._terms.items():
            value = result.get(exponent, 0) + coeff
            if value:
                result[exponent] = value
            else:
                result.pop(exponent, None)
        return MultiPoly._from_clean(self._nvars, result)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._from_clean(self._nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, factor: int) -> "MultiPoly":
        factor = int(factor)
        if not factor:
            return MultiPoly.zero(self._nvars)
        return MultiPoly._from_clean(self._nvars, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result: Dict[Exponent, int] = {}
        for left_exp, left_coeff in self._terms.items():
            for right_exp, right_coeff in other._terms.items():
                exponent = tuple(map(add, left_exp, right_exp))
                value = result.get(exponent, 0) + left_coeff * right_coeff
                if value:
                    result[exponent] = value
                else:
                    result.pop(exponent, None)
        return MultiPoly._from_clean(self._nvars, result)

    __rmul__ = __mul__

    def partial(self, k: int) -> "MultiPoly":
        """对 x_k 求形式偏导数（k 从 1 开始）。"""
        if not 1 <= k <= self._nvars:
            raise IndexRangeException(
                ErrorMessages.VARIABLE_INDEX_OUT_OF_RANGE.format(index=k, nvars=self._nvars)
            )
        index = k - 1
        result = {}
        for exponent, coeff in self._terms.items():
            power = exponent[index]
            if power:
                result[exponent[:index] + (power - 1,) + exponent[index + 1:]] = coeff * power
        return MultiPoly._from_clean(self._nvars, result)

    def exquo(self, divisor: "MultiPoly") -> "MultiPoly":
        """
        精确除法：返回 q 使得 self = q * divisor。

        按字典序首项逐项消去；只要某一步首项不能整除，就说明被除式并非 divisor 的倍数，
        抛出 ExactDivisionException。
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ExactDivisionException(ErrorMessages.DIVISION_BY_ZERO)
        lead_exp, lead_coeff = divisor.leading_term()
        remainder = dict(self._terms)
        quotient: Dict[Exponent, int] = {}
        while remainder:
            exponent = max(remainder)
            coeff = remainder[exponent]
            shift = tuple(map(sub, exponent, lead_exp))
            if min(shift, default=0) < 0 or coeff % lead_coeff:
                raise ExactDivisionException(
                    ErrorMessages.EXACT_DIVISION_FAILED.format(
                        dividend_term=(exponent, coeff), divisor_term=(lead_exp, lead_coeff)
                    ),
                    details={"dividend": self.to_text(), "divisor": divisor.to_text()},
                )
            factor = coeff // lead_coeff
            quotient[shift] = factor
            for div_exp, div_coeff in divisor._terms.items():
                target = tuple(map(add, div_exp, shift))
                value = remainder.get(target, 0) - factor * div_coeff
                if value:
                    remainder[target] = value
                else:
                    remainder.pop(target, None)
        return MultiPoly._from_clean(self._nvars, quotient)

    # ---- 比较 ----

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.constant(other, self._nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly(nvars={self._nvars}, '{self.to_text()}')"

    def __str__(self) -> str:
        return self.to_text()

    def __reduce__(self):
        return (MultiPoly, (self._nvars, self._terms))

    # ---- 序列化 ----

    def to_text(self) -> str:
        """规范文本形式，例如 `x1^2 + x1*x2 - 3*x2^2`；零多项式为 `0`。"""
        if not self._terms:
            return "0"
        pieces = []
        for position, (exponent, coeff) in enumerate(self.sorted_terms()):
            monomial = _format_monomial(exponent)
            magnitude = abs(coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            if position == 0:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f" + {body}" if coeff > 0 else f" - {body}")
        return "".join(pieces)

    @classmethod
    def from_text(cls, text: str, nvars: int) -> "MultiPoly":
        """解析文本形式的多项式，变量名为 x1 ... xN，幂次可写作 ^ 或 **。"""
        try:
            if not text.strip() or not _POLY_TEXT_PATTERN.fullmatch(text):
                raise ValueError("包含不允许的字符")
            symbols = tuple(sympy.Symbol(f"x{i}") for i in range(1, nvars + 1))
            terms: Dict[Exponent, int] = {}
            for exponent, coeff in _sympy_terms(text, symbols):
                terms[exponent] = terms.get(exponent, 0) + coeff
        except Exception as e:
            raise handle_parse_error(e, "poly", text, ErrorMessages.POLY_PARSE_FAILED)
        return cls(nvars, terms)

    def to_json_dict(self) -> Dict[str, Any]:
        """JSON 形式：系数以十进制字符串保存，项按规范顺序排列。"""
        return {
            "nvars": self._nvars,
            "terms": [
                {"exp": list(exponent), "coeff": str(coeff)}
                for exponent, coeff in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any]) -> "MultiPoly":
        try:
            nvars = int(data["nvars"])
            terms: Dict[Exponent, int] = {}
            for term in data["terms"]:
                exponent = tuple(int(e) for e in term["exp"])
                terms[exponent] = terms.get(exponent, 0) + int(term["coeff"])
        except (KeyError, TypeError, ValueError) as e:
            raise handle_parse_error(e, "poly", str(data), ErrorMessages.POLY_PARSE_FAILED)
        return cls(nvars, terms)


def _format_monomial(exponent: Exponent) -> str:
    factors = []
    for index, power in enumerate(exponent, start=1):
        if power == 1:
            factors.append(f"x{index}")
        elif power > 1:
            factors.append(f"x{index}^{power}")
    return "*".join(factors)


class QPoly:
    """
    Z[q] 中的多项式。

    coeffs[i] 是 q^i 的系数，末尾的零被裁掉；零多项式对应空序列。
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        values = [int(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self._coeffs = tuple(values)

    @classmethod
    def zero(cls) -> "QPoly":
        return cls()

    @classmethod
    def constant(cls, value: int) -> "QPoly":
        return cls((value,))

    @classmethod
    def q(cls) -> "QPoly":
        return cls((0, 1))

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self._coeffs

    def degree(self) -> int:
        """零多项式的次数记为 -1。"""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @staticmethod
    def _coerce(other) -> "QPoly":
        if isinstance(other, QPoly):
            return other
        if isinstance(other, int):
            return QPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        size = max(len(self._coeffs), len(other._coeffs))
        left = self._coeffs + (0,) * (size - len(self._coeffs))
        right = other._coeffs + (0,) * (size - len(other._coeffs))
        return QPoly(map(add, left, right))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-c for c in self._coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return QPoly()
        product = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, left in enumerate(self._coeffs):
            if not left:
                continue
            for j, right in enumerate(other._coeffs):
                product[i + j] += left * right
        return QPoly(product)

    __rmul__ = __mul__

    def evaluate(self, n: int) -> int:
        """Horner 法精确求值 q = n。"""
        value = 0
        for coeff in reversed(self._coeffs):
            value = value * n + coeff
        return value

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(("QPoly", self._coeffs))

    def __repr__(self) -> str:
        return f"QPoly('{self.to_text()}')"

    def __str__(self) -> str:
        return self.to_text()

    def __reduce__(self):
        return (QPoly, (self._coeffs,))

    def to_text(self) -> str:
        """按降幂输出，例如 `q^2 - q + 1`。"""
        if not self._coeffs:
            return "0"
        pieces = []
        for power in range(len(self._coeffs) - 1, -1, -1):
            coeff = self._coeffs[power]
            if not coeff:
                continue
            monomial = "" if power == 0 else ("q" if power == 1 else f"q^{power}")
            magnitude = abs(coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f" + {body}" if coeff > 0 else f" - {body}")
        return "".join(pieces)

    @classmethod
    def from_text(cls, text: str) -> "QPoly":
        """解析整数系数的 q 多项式，支持 + - * ^ 和整数字面量。"""
        try:
            if not text.strip() or not _QPOLY_TEXT_PATTERN.match(text):
                raise ValueError("包含不允许的字符")
            coeffs: Dict[int, int] = {}
            for (power,), coeff in _sympy_terms(text, (sympy.Symbol("q"),)):
                coeffs[power] = coeffs.get(power, 0) + coeff
        except Exception as e:
            raise handle_parse_error(e, "qpoly", text, ErrorMessages.QPOLY_PARSE_FAILED)
        size = max(coeffs, default=-1) + 1
        return cls(coeffs.get(power, 0) for power in range(size))


# =================================================================================
# 模块级运算接口
# =================================================================================


def poly_add(p: MultiPoly, r: MultiPoly) -> MultiPoly:
    """逐项相加；变量个数不一致时抛出 VariableCountException。"""
    return p + p._coerce(r)


def poly_mul(p: MultiPoly, r: MultiPoly) -> MultiPoly:
    """分配律乘积；变量个数不一致时抛出 VariableCountException。"""
    return p * p._coerce(r)


def poly_partial(p: MultiPoly, k: int) -> MultiPoly:
    return p.partial(k)


def qpoly_eval(qp: QPoly, n: int) -> int:
    return qp.evaluate(n)
