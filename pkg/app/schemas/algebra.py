"""
代数计算的请求/报告模型

角展开报告（多项式环与 Λ）、验证配置与验证报告，以及 HTTP 请求体。
多项式字段在 JSON 中以规范的 JSON 形式出现（项按字典序降序，系数为十进制字符串）。
"""

from enum import Enum
from typing import Annotated, Any, Dict, List, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    WithJsonSchema,
    model_validator,
)

from app.algebra.ring import MultiPoly
from app.algebra.shapes import SkewShape


def _validate_poly(value: Any) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, dict):
        return MultiPoly.from_json_dict(value)
    raise ValueError("需要 MultiPoly 或其 JSON 形式")


def _validate_lambda(value: Any):
    # Λ 模块依赖本模块中的报告类型，这里延迟导入
    from app.algebra.lambda_ring import LambdaElement

    if isinstance(value, LambdaElement):
        return value
    if isinstance(value, dict):
        return LambdaElement.from_json_dict(value)
    raise ValueError("需要 LambdaElement 或其 JSON 形式")


def _dump_json_dict(value: Any) -> Dict[str, Any]:
    return value.to_json_dict()


PolyField = Annotated[
    MultiPoly,
    PlainValidator(_validate_poly),
    PlainSerializer(_dump_json_dict, return_type=dict),
    WithJsonSchema({"type": "object", "description": "MultiPoly JSON 形式"}),
]

LambdaField = Annotated[
    Any,
    PlainValidator(_validate_lambda),
    PlainSerializer(_dump_json_dict, return_type=dict),
    WithJsonSchema({"type": "object", "description": "LambdaElement JSON 形式"}),
]


# =================================================================================
# 恒等式报告
# =================================================================================


class CornerTerm(BaseModel):
    """角展开右边的一项：外角 (ℓ_i + a)·s_{(λ-e_i)/μ} 或内角 (b - m_i)·s_{λ/(μ+e_i)}。"""

    index: int = Field(..., description="行号 i，从 1 开始")
    coefficient: int = Field(..., description="ℓ_i + a 或 b - m_i")
    partition: Tuple[int, ...] = Field(..., description="λ - e_i 或 μ + e_i")
    diagonal: int = Field(..., description="该角所在的对角线：外角为 ℓ_i，内角为 m_i")
    vanishes: bool = Field(False, description="对应的斜 Schur 因子是否因不包含而为零")


class Theorem1Report(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    shape: SkewShape
    a: int
    b: int
    lhs: Optional[PolyField] = Field(None, description="∇(s_{λ/μ})；只求右边时为空")
    rhs: PolyField
    outer_terms: List[CornerTerm] = Field(default_factory=list)
    inner_terms: List[CornerTerm] = Field(default_factory=list)
    verdict: Optional[bool] = Field(None, description="lhs 与 rhs 是否完全相等")


class Corollary2Report(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    shape: SkewShape
    left: PolyField = Field(..., description="Σ s_{(λ-e_i)/μ}")
    right: PolyField = Field(..., description="Σ s_{λ/(μ+e_i)}")
    verdict: bool


class QCornerTerm(BaseModel):
    """Λ 中角展开右边的一项，系数属于 Z[q]。"""

    index: int
    coefficient: str = Field(..., description="系数的 q 多项式文本")
    partition: Tuple[int, ...]


class Theorem3Report(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    outer: Tuple[int, ...]
    inner: Tuple[int, ...]
    a: str
    b: str
    lhs: LambdaField
    rhs: LambdaField
    outer_terms: List[QCornerTerm] = Field(default_factory=list)
    inner_terms: List[QCornerTerm] = Field(default_factory=list)
    verdict: bool


# =================================================================================
# 验证流程
# =================================================================================


class SweepIdentity(str, Enum):
    THEOREM1 = "theorem1"
    COROLLARY2 = "corollary2"
    LEMMA_NABLA_H = "lemma_nabla_h"
    DET_LEMMAS = "det_lemmas"
    THEOREM3 = "theorem3"
    ORACLE_EQUIV = "oracle_equiv"
    WEIGANDT = "weigandt"
    DPROD = "dprod"
    PARAMETER_INDEPENDENCE = "parameter_independence"
    COMMUTATION = "commutation"
    DET_BACKENDS = "det_backends"
    LEIBNIZ = "leibniz"


DEFAULT_Q_PAIRS: List[Tuple[str, str]] = [("0", "q-1"), ("q-1", "0"), ("q", "-1")]


class SweepConfig(BaseModel):
    """一次验证的参数。相同配置（含种子）的两次运行得到相同的报告（耗时除外）。"""

    model_config = ConfigDict(use_enum_values=True)

    identity: SweepIdentity
    max_nvars: int = Field(..., ge=1, description="变量个数 N 的上界")
    max_outer_size: int = Field(..., ge=1, description="|λ| 的上界")
    a_values: List[int] = Field(default_factory=list, description="角展开的 a 取值（b = N - 1 - a）")
    a_offsets: List[int] = Field(
        default_factory=list, description="随 N 变化的 a 取值：a = N + offset"
    )
    q_pairs: List[Tuple[str, str]] = Field(
        default_factory=lambda: list(DEFAULT_Q_PAIRS), description="Λ 中角展开的 (a, b) 取值"
    )
    seed: int = Field(0, description="随机用例的种子")
    random_cases: int = Field(200, ge=1, description="随机恒等式的用例数")
    workers: int = Field(1, ge=1, description="并行进程数")
    fail_fast: bool = Field(False, description="遇到第一个失败即停止")

    @model_validator(mode="after")
    def check_parameters(self) -> "SweepConfig":
        needs_a = (SweepIdentity.THEOREM1.value, SweepIdentity.DPROD.value)
        if self.identity in needs_a and not (self.a_values or self.a_offsets):
            raise ValueError(f"{self.identity} 需要至少一个 a 取值（a_values 或 a_offsets）")
        if self.identity == SweepIdentity.THEOREM3.value and not self.q_pairs:
            raise ValueError("theorem3 需要至少一组 q_pairs")
        return self

    def a_range(self, nvars: int) -> List[int]:
        """N 个变量时要检查的 a，按给出顺序去重。"""
        values = list(self.a_values) + [nvars + offset for offset in self.a_offsets]
        return list(dict.fromkeys(values))


class FailureRecord(BaseModel):
    """一个不成立的用例；两边都以规范文本保存，足以单独复现。"""

    case: str = Field(..., description="用例描述")
    lhs: str
    rhs: str
    details: Dict[str, Any] = Field(default_factory=dict)


class SweepReport(BaseModel):
    identity: str
    cases_run: int
    failures: List[FailureRecord] = Field(default_factory=list)
    wall_time_s: float
    config: SweepConfig

    @property
    def passed(self) -> bool:
        return not self.failures


# =================================================================================
# HTTP 请求体
# =================================================================================


class HRequest(BaseModel):
    n: int = Field(..., description="次数 n")
    nvars: int = Field(..., ge=0, description="变量个数 N")


class ShapeRequest(BaseModel):
    nvars: int = Field(..., ge=0, description="变量个数 N")
    outer: str = Field(..., description="外分拆，如 `3,2,1`")
    inner: str = Field("", description="内分拆，空串表示零分拆")


class Theorem1Request(ShapeRequest):
    a: int
    b: Optional[int] = Field(None, description="缺省时取 N - 1 - a")


class NablaRequest(ShapeRequest):
    a: Optional[int] = Field(None, description="给出时返回角展开报告")
    b: Optional[int] = None


class ExpandRequest(BaseModel):
    nvars: int = Field(..., ge=0)
    poly: str = Field(..., description="多项式文本，变量为 x1 ... xN")


class Theorem3Request(BaseModel):
    outer: str = Field(..., description="λ，如 `2,1`")
    inner: str = Field("", description="μ，空串表示空分拆")
    a: str = Field(..., description="q 多项式文本")
    b: str = Field(..., description="q 多项式文本")


class VerifyRequest(BaseModel):
    preset: Optional[str] = Field(None, description="config.yaml 中的预设名")
    config: Optional[SweepConfig] = None

    @model_validator(mode="after")
    def check_source(self) -> "VerifyRequest":
        if (self.preset is None) == (self.config is None):
            raise ValueError("preset 与 config 必须恰好给出一个")
        return self


# =================================================================================
# HTTP 响应体
# =================================================================================


class PolyTerm(BaseModel):
    exp: List[int] = Field(..., description="指数向量，长度为 N")
    coeff: str = Field(..., description="十进制整数系数")


class PolyResponse(BaseModel):
    """MultiPoly 的 JSON 形式，项按字典序降序排列。"""

    nvars: int
    terms: List[PolyTerm] = Field(default_factory=list)


class SchurTerm(BaseModel):
    partition: List[int] = Field(..., description="N 个变量的分拆 α")
    coeff: str = Field(..., description="s_α 的十进制整数系数")


class ExpansionResponse(BaseModel):
    """Schur 基展开，按分拆的字典序降序排列。"""

    terms: List[SchurTerm] = Field(default_factory=list)


class StatusResponse(BaseModel):
    status: str
    performance: Dict[str, Any]
