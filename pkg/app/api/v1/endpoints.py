"""
API端点：每个命令行子命令对应一个 POST 路由
"""

from typing import Union

from fastapi import APIRouter

from app.api.v1.services import (
    build_sweep_config,
    corollary2_service,
    expand_service,
    h_service,
    laplace_service,
    nabla_service,
    schur_service,
    status_service,
    theorem1_service,
    theorem3_service,
    to_json_document,
    verify_service,
)
from app.schemas.algebra import (
    Corollary2Report,
    ExpandRequest,
    ExpansionResponse,
    HRequest,
    NablaRequest,
    PolyResponse,
    ShapeRequest,
    StatusResponse,
    SweepReport,
    Theorem1Report,
    Theorem1Request,
    Theorem3Report,
    Theorem3Request,
    VerifyRequest,
)

router = APIRouter()

# =================================================================================
# 1. 多项式计算 (Polynomials)
# =================================================================================


@router.post("/h", response_model=PolyResponse, tags=["Polynomials"])
def compute_h(request: HRequest):
    """
    完全齐次对称多项式 h_n(x_1, ..., x_N)。

    Args:
        request (HRequest): 次数 n 与变量个数 N

    Returns:
        PolyResponse: h_n 的 JSON 形式；n < 0 时为零多项式
    """
    return to_json_document(h_service(request.n, request.nvars))


@router.post("/schur", response_model=PolyResponse, tags=["Polynomials"])
def compute_schur(request: ShapeRequest):
    """
    斜 Schur 多项式 s_{λ/μ}。

    Args:
        request (ShapeRequest): 变量个数 N、外分拆 λ 与内分拆 μ

    Returns:
        PolyResponse: s_{λ/μ} 的 JSON 形式

    Note:
        - inner 为空串时即为 Schur 多项式 s_λ
        - μ ⊄ λ 时返回零多项式
        - λ 或 μ 不是分拆时返回 400
    """
    return to_json_document(schur_service(request.nvars, request.outer, request.inner))


@router.post(
    "/nabla", response_model=Union[PolyResponse, Theorem1Report], tags=["Polynomials"]
)
def compute_nabla(request: NablaRequest):
    """
    ∇(s_{λ/μ})。

    Args:
        request (NablaRequest): 斜形状，以及可选的参数 a、b

    Returns:
        Union[PolyResponse, Theorem1Report]: 未给出 a 时只返回 ∇(s_{λ/μ})，
        给出 a 时返回带外角/内角明细的角展开报告

    Note:
        - b 缺省为 N - 1 - a；a + b ≠ N - 1 时返回 400
    """
    result = nabla_service(request.nvars, request.outer, request.inner, request.a, request.b)
    return to_json_document(result)


@router.post("/laplace", response_model=ExpansionResponse, tags=["Polynomials"])
def compute_laplace(request: ShapeRequest):
    """∇'(s_λ) 的 Schur 基展开，inner 被忽略。"""
    return to_json_document(laplace_service(request.nvars, request.outer))


@router.post("/expand", response_model=ExpansionResponse, tags=["Polynomials"])
def expand(request: ExpandRequest):
    """
    对称多项式的 Schur 基展开。

    Args:
        request (ExpandRequest): 变量个数 N 与多项式文本

    Returns:
        ExpansionResponse: 非零系数的 (α, c_α)，按 α 的字典序降序

    Note:
        - 文本无法解析或多项式不对称时返回 400
    """
    return to_json_document(expand_service(request.nvars, request.poly))


# =================================================================================
# 2. 恒等式 (Identities)
# =================================================================================


@router.post("/theorem1", response_model=Theorem1Report, tags=["Identities"])
def theorem1(request: Theorem1Request):
    """
    检查 ∇(s_{λ/μ}) 的外角/内角展开。

    Args:
        request (Theorem1Request): 斜形状与参数 a、b

    Returns:
        Theorem1Report: 两边的多项式、每个角的明细与判定结果

    Note:
        - a + b ≠ N - 1 时返回 400
        - 展开不成立时仍返回 200，verdict 为 false
    """
    report = theorem1_service(request.nvars, request.outer, request.inner, request.a, request.b)
    return to_json_document(report)


@router.post("/corollary2", response_model=Corollary2Report, tags=["Identities"])
def corollary2(request: ShapeRequest):
    return to_json_document(corollary2_service(request.nvars, request.outer, request.inner))


@router.post("/theorem3", response_model=Theorem3Report, tags=["Identities"])
def theorem3(request: Theorem3Request):
    """在 Λ 中以符号 q 检查 ∇_q(s_{λ/μ}) 的展开。"""
    report = theorem3_service(request.outer, request.inner, request.a, request.b)
    return to_json_document(report)


@router.post("/verify", response_model=SweepReport, tags=["Identities"])
def verify(request: VerifyRequest):
    """
    运行一次穷举验证。

    Args:
        request (VerifyRequest): 预设名或完整的验证配置，二者恰好给出一个

    Returns:
        SweepReport: 用例数、失败记录、耗时与实际使用的配置

    Note:
        - 恒等式不成立时仍返回 200，失败用例列在 failures 中
        - 预设不存在或预设文件无效时返回 500
    """
    if request.preset is not None:
        config = build_sweep_config(preset=request.preset)
    else:
        config = request.config
    return to_json_document(verify_service(config))


# =================================================================================
# 3. 服务状态 (Management)
# =================================================================================


@router.get("/status", response_model=StatusResponse, tags=["Management"])
def get_status():
    """服务状态与性能统计（调用次数、耗时、缓存命中率）。"""
    return status_service()
