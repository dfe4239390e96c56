"""
服务层：命令行与 HTTP 两个入口共用的业务逻辑

负责把用户输入（分拆文本、多项式文本、q 多项式文本）解析成领域对象，
调用 app.algebra 中的计算，并把结果渲染成 JSON 文档或规范文本。
"""

import logging
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ValidationError

from app.algebra.nabla import check_theorem1, corollary2_sides, laplace_nabla2, nabla
from app.algebra.lambda_ring import check_theorem3
from app.algebra.ring import MultiPoly, QPoly
from app.algebra.shapes import SkewShape, parse_partition_text
from app.algebra.symfunc import SchurExpansion, expand_schur_basis, h, schur, skew_schur
from app.algebra.verify import load_preset, run_sweep
from app.core.config import settings
from app.core.errors import ErrorMessages
from app.core.exceptions import ValidationException
from app.core.performance import get_performance_report
from app.schemas.algebra import (
    Corollary2Report,
    SweepConfig,
    SweepReport,
    Theorem1Report,
    Theorem3Report,
)

logger = logging.getLogger(__name__)

Result = Union[MultiPoly, SchurExpansion, BaseModel]


# =================================================================================
# 1. 输入解析
# =================================================================================


def parse_shape(nvars: int, outer: str, inner: str = "") -> SkewShape:
    """`3,2,1` 与 `1,1` 形式的文本补零到 N 元组后组成斜形状。"""
    return SkewShape(
        outer=parse_partition_text(outer, nvars), inner=parse_partition_text(inner, nvars)
    )


def build_sweep_config(
    preset: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None
) -> SweepConfig:
    """
    依次合并 VerifyConfig 默认值、预设（可选）与显式参数；显式参数中的 None 表示沿用前者。
    """
    base: Dict[str, Any] = {
        "seed": settings.verify.default_seed,
        "random_cases": settings.verify.random_cases,
        "workers": settings.verify.workers,
    }
    if preset:
        base.update(load_preset(preset).model_dump(exclude_unset=True))
    base.update({key: value for key, value in (overrides or {}).items() if value is not None})
    try:
        return SweepConfig.model_validate(base)
    except ValidationError as e:
        raise ValidationException(ErrorMessages.SWEEP_CONFIG_INVALID.format(error=e))


# =================================================================================
# 2. 计算服务
# =================================================================================


def h_service(n: int, nvars: int) -> MultiPoly:
    return h(n, nvars)


def schur_service(nvars: int, outer: str, inner: str = "") -> MultiPoly:
    return skew_schur(parse_shape(nvars, outer, inner))


def nabla_service(
    nvars: int, outer: str, inner: str = "", a: Optional[int] = None, b: Optional[int] = None
) -> Union[MultiPoly, Theorem1Report]:
    """
    只给形状时返回 ∇(s_{λ/μ})；给出 a 时返回完整的角展开报告。
    """
    if a is None and b is None:
        return nabla(schur_service(nvars, outer, inner))
    return theorem1_service(nvars, outer, inner, a, b)


def laplace_service(nvars: int, outer: str) -> SchurExpansion:
    """∇'(s_λ) 的 Schur 基展开。"""
    partition = parse_partition_text(outer, nvars)
    return expand_schur_basis(laplace_nabla2(schur(partition)))


def expand_service(nvars: int, poly: str) -> SchurExpansion:
    return expand_schur_basis(MultiPoly.from_text(poly, nvars))


def theorem1_service(
    nvars: int, outer: str, inner: str, a: Optional[int], b: Optional[int] = None
) -> Theorem1Report:
    """b 缺省时取 N - 1 - a；只给 b 时取 a = N - 1 - b。"""
    if a is None:
        a = nvars - 1 - b
    if b is None:
        b = nvars - 1 - a
    return check_theorem1(parse_shape(nvars, outer, inner), a, b)


def corollary2_service(nvars: int, outer: str, inner: str = "") -> Corollary2Report:
    shape = parse_shape(nvars, outer, inner)
    left, right = corollary2_sides(shape)
    return Corollary2Report(shape=shape, left=left, right=right, verdict=left == right)


def theorem3_service(outer: str, inner: str, a: str, b: str) -> Theorem3Report:
    return check_theorem3(
        parse_partition_text(outer).parts,
        parse_partition_text(inner).parts,
        QPoly.from_text(a),
        QPoly.from_text(b),
    )


def verify_service(config: SweepConfig) -> SweepReport:
    report = run_sweep(config)
    if report.failures:
        logger.warning(f"[验证] {report.identity} 有 {len(report.failures)} 个失败用例")
    return report


def status_service() -> Dict[str, Any]:
    """服务状态与性能统计。"""
    return {"status": "ok", "performance": get_performance_report()}


# =================================================================================
# 3. 结果渲染
# =================================================================================


def to_json_document(result: Result) -> Dict[str, Any]:
    if isinstance(result, (MultiPoly, SchurExpansion)):
        return result.to_json_dict()
    return result.model_dump(mode="json")


def _format_corners(label: str, terms) -> str:
    if not terms:
        return f"{label}: （无）"
    pieces = [
        f"i={term.index} 系数={term.coefficient} 分拆=({','.join(map(str, term.partition))})"
        for term in terms
    ]
    return f"{label}: " + "; ".join(pieces)


def to_text(result: Result) -> str:
    """规范文本形式；报告类结果逐行给出两边与结论。"""
    if isinstance(result, (MultiPoly, SchurExpansion)):
        return result.to_text()
    if isinstance(result, Theorem1Report):
        lines = [
            f"形状: {result.shape}  a={result.a}  b={result.b}",
            f"lhs: {result.lhs.to_text() if result.lhs is not None else '-'}",
            f"rhs: {result.rhs.to_text()}",
            _format_corners("外角项", result.outer_terms),
            _format_corners("内角项", result.inner_terms),
            f"verdict: {str(result.verdict).lower()}",
        ]
        return "\n".join(lines)
    if isinstance(result, Corollary2Report):
        return "\n".join(
            [
                f"形状: {result.shape}",
                f"left: {result.left.to_text()}",
                f"right: {result.right.to_text()}",
                f"verdict: {str(result.verdict).lower()}",
            ]
        )
    if isinstance(result, Theorem3Report):
        return "\n".join(
            [
                f"λ={result.outer}  μ={result.inner}  a={result.a}  b={result.b}",
                f"lhs: {result.lhs.to_text()}",
                f"rhs: {result.rhs.to_text()}",
                _format_corners("外角项", result.outer_terms),
                _format_corners("内角项", result.inner_terms),
                f"verdict: {str(result.verdict).lower()}",
            ]
        )
    if isinstance(result, SweepReport):
        lines = [
            f"identity: {result.identity}",
            f"cases_run: {result.cases_run}",
            f"failures: {len(result.failures)}",
            f"wall_time_s: {result.wall_time_s:.3f}",
        ]
        for failure in result.failures:
            lines.append(f"  失败: {failure.case}")
            lines.append(f"    lhs: {failure.lhs}")
            lines.append(f"    rhs: {failure.rhs}")
        return "\n".join(lines)
    return result.model_dump_json()
