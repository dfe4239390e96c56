"""
恒等式验证模块

在有界的分拆族上穷举运行各个恒等式，给出可机读的验证报告。
用例按确定的顺序枚举；多进程执行时结果仍按枚举顺序合并，所以相同配置的两次运行
得到相同的报告（耗时除外）。
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

import yaml
from pydantic import ValidationError

from app.algebra.lambda_ring import LambdaElement, check_theorem3, nabla_q, specialize
from app.algebra.nabla import (
    check_theorem1,
    corollary2_sides,
    dprod_sides,
    inner_corner_sum,
    inner_terms_vanish,
    leibniz_product_sides,
    nabla,
    nabla_h_check,
    theorem1_rhs,
)
from app.algebra.ring import MultiPoly, QPoly
from app.algebra.shapes import (
    Partition,
    SkewShape,
    add_box,
    content,
    contains,
    iter_partitions,
    remove_box,
)
from app.algebra.symfunc import content_determinant, det_poly, h, skew_schur, ssyt_skew_schur
from app.core.config import settings
from app.core.errors import ErrorMessages
from app.core.exceptions import ConfigurationException
from app.core.performance import PerformanceMonitor
from app.schemas.algebra import FailureRecord, SweepConfig, SweepIdentity, SweepReport

logger = logging.getLogger(__name__)

Parts = Tuple[int, ...]
Case = Tuple[str, tuple]


# =================================================================================
# 1. 用例枚举
# =================================================================================


def _iter_pairs(cfg: SweepConfig, contained_only: bool) -> Iterator[Tuple[int, Parts, Parts]]:
    """N = 1..max_nvars，|λ| <= max_outer_size，μ_i <= λ_1 且 |μ| <= |λ|。"""
    for nvars in range(1, cfg.max_nvars + 1):
        for outer in iter_partitions(nvars, cfg.max_outer_size):
            first = outer.parts[0]
            for inner in iter_partitions(nvars, outer.size(), max_part=first):
                if contained_only and not contains(inner, outer):
                    continue
                yield nvars, outer.parts, inner.parts


def _random_poly(rng: random.Random, nvars: int, max_degree: int = 2) -> Tuple[tuple, ...]:
    terms = []
    for _ in range(rng.randint(1, 3)):
        exponent = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exponent[rng.randrange(nvars)] += 1
        terms.append((tuple(exponent), rng.randint(-3, 3)))
    return tuple(terms)


def _random_lambda_terms(rng: random.Random) -> Tuple[tuple, ...]:
    terms = []
    for _ in range(rng.randint(1, 3)):
        index = tuple(rng.randint(1, 5) for _ in range(rng.randint(0, 3)))
        coeffs = tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 3)))
        terms.append((index, coeffs))
    return tuple(terms)


def iter_cases(cfg: SweepConfig) -> Iterator[Case]:
    identity = cfg.identity
    if identity == SweepIdentity.LEMMA_NABLA_H.value:
        for nvars in range(0, cfg.max_nvars + 1):
            for n in range(-2, cfg.max_outer_size + 1):
                yield identity, (n, nvars)
    elif identity == SweepIdentity.THEOREM1.value:
        for nvars, outer, inner in _iter_pairs(cfg, contained_only=False):
            for a in cfg.a_range(nvars):
                yield identity, (outer, inner, a)
    elif identity == SweepIdentity.DPROD.value:
        for nvars, outer, inner in _iter_pairs(cfg, contained_only=False):
            for a in cfg.a_range(nvars):
                yield identity, (outer, inner, a)
    elif identity in (
        SweepIdentity.COROLLARY2.value,
        SweepIdentity.DET_LEMMAS.value,
        SweepIdentity.PARAMETER_INDEPENDENCE.value,
    ):
        for _, outer, inner in _iter_pairs(cfg, contained_only=False):
            yield identity, (outer, inner)
    elif identity == SweepIdentity.ORACLE_EQUIV.value:
        for _, outer, inner in _iter_pairs(cfg, contained_only=True):
            yield identity, (outer, inner)
    elif identity == SweepIdentity.WEIGANDT.value:
        for nvars in range(1, cfg.max_nvars + 1):
            for outer in iter_partitions(nvars, cfg.max_outer_size):
                yield identity, (outer.parts,)
    elif identity == SweepIdentity.THEOREM3.value:
        # λ 的长度不超过 max_nvars，μ 取遍 λ 的所有子分拆
        for outer in iter_partitions(cfg.max_nvars, cfg.max_outer_size):
            for inner in iter_partitions(cfg.max_nvars, outer.size(), max_part=outer.parts[0]):
                if not contains(inner, outer):
                    continue
                for a_text, b_text in cfg.q_pairs:
                    yield identity, (outer.trimmed(), inner.trimmed(), a_text, b_text)
    elif identity == SweepIdentity.COMMUTATION.value:
        rng = random.Random(cfg.seed)
        for _ in range(cfg.random_cases):
            yield identity, (_random_lambda_terms(rng), rng.randint(1, 4))
    elif identity == SweepIdentity.DET_BACKENDS.value:
        rng = random.Random(cfg.seed)
        for _ in range(cfg.random_cases):
            nvars, size = rng.randint(1, 3), rng.randint(1, 4)
            rows = tuple(
                tuple(_random_poly(rng, nvars) for _ in range(size)) for _ in range(size)
            )
            yield identity, (nvars, rows)
    elif identity == SweepIdentity.LEIBNIZ.value:
        rng = random.Random(cfg.seed)
        for _ in range(cfg.random_cases):
            nvars = rng.randint(1, 3)
            factors = tuple(_random_poly(rng, nvars) for _ in range(rng.randint(1, 5)))
            yield identity, (nvars, factors)


# =================================================================================
# 2. 单个用例的检查
# =================================================================================


def _shape(outer: Parts, inner: Parts) -> SkewShape:
    return SkewShape(outer=Partition(parts=outer), inner=Partition(parts=inner))


def _failure(case: str, lhs: Any, rhs: Any, **details) -> FailureRecord:
    return FailureRecord(case=case, lhs=lhs.to_text(), rhs=rhs.to_text(), details=details)


def _check_lemma_nabla_h(n: int, nvars: int) -> List[FailureRecord]:
    if nabla_h_check(n, nvars):
        return []
    return [
        _failure(
            f"∇h_{n}, N={nvars}",
            nabla(h(n, nvars)),
            h(n - 1, nvars).scale(n + nvars - 1),
            n=n,
            nvars=nvars,
        )
    ]


def _check_theorem1(outer: Parts, inner: Parts, a: int) -> List[FailureRecord]:
    shape = _shape(outer, inner)
    b = shape.nvars - 1 - a
    report = check_theorem1(shape, a, b)
    if report.verdict:
        return []
    return [_failure(f"{shape}, a={a}, b={b}", report.lhs, report.rhs, a=a, b=b)]


def _check_weigandt(outer: Parts) -> List[FailureRecord]:
    nvars = len(outer)
    shape = _shape(outer, (0,) * nvars)
    report = check_theorem1(shape, nvars, -1)
    failures = []
    if not report.verdict:
        failures.append(_failure(f"{shape}, a={nvars}, b=-1", report.lhs, report.rhs))
    if not inner_terms_vanish(report):
        terms = [term.model_dump() for term in report.inner_terms]
        failures.append(
            _failure(
                f"{shape} 内角项非零",
                inner_corner_sum(report),
                MultiPoly.zero(nvars),
                inner_terms=terms,
            )
        )
    return failures


def _check_corollary2(outer: Parts, inner: Parts) -> List[FailureRecord]:
    left, right = corollary2_sides(_shape(outer, inner))
    if left == right:
        return []
    return [_failure(str(_shape(outer, inner)), left, right)]


def _check_det_lemmas(outer: Parts, inner: Parts) -> List[FailureRecord]:
    """
    det(h_{ℓ_i - m_j}) = s_{λ/μ}；把 ℓ 换成 ℓ - e_k（或 m 换成 m + e_k）后，
    新向量对应分拆时行列式是相应的斜 Schur 多项式，否则为零。
    """
    shape = _shape(outer, inner)
    nvars = shape.nvars
    ell, m = content(shape.outer), content(shape.inner)
    failures = []

    lhs = content_determinant(ell.values, m.values, nvars)
    rhs = skew_schur(shape)
    if lhs != rhs:
        failures.append(_failure(f"{shape} 内容行列式", lhs, rhs))

    for k in range(1, nvars + 1):
        smaller = remove_box(shape.outer, k)
        lhs = content_determinant(ell.shifted(k, -1).values, m.values, nvars)
        rhs = (
            skew_schur(SkewShape(outer=smaller, inner=shape.inner))
            if smaller is not None
            else MultiPoly.zero(nvars)
        )
        if lhs != rhs:
            failures.append(_failure(f"{shape} 行移位 k={k}", lhs, rhs, k=k))

        larger = add_box(shape.inner, k)
        lhs = content_determinant(ell.values, m.shifted(k, 1).values, nvars)
        rhs = (
            skew_schur(SkewShape(outer=shape.outer, inner=larger))
            if larger is not None
            else MultiPoly.zero(nvars)
        )
        if lhs != rhs:
            failures.append(_failure(f"{shape} 列移位 k={k}", lhs, rhs, k=k))
    return failures


def _check_oracle(outer: Parts, inner: Parts) -> List[FailureRecord]:
    shape = _shape(outer, inner)
    lhs, rhs = skew_schur(shape), ssyt_skew_schur(shape)
    return [] if lhs == rhs else [_failure(f"{shape} Jacobi-Trudi 与 SSYT", lhs, rhs)]


def _check_dprod(outer: Parts, inner: Parts, a: int) -> List[FailureRecord]:
    shape = _shape(outer, inner)
    nvars = shape.nvars
    ell, m = content(shape.outer).values, content(shape.inner).values
    b = nvars - 1 - a
    failures = []
    for sigma in permutations(range(nvars)):
        lhs, rhs = dprod_sides(ell, m, sigma, a, b)
        if lhs != rhs:
            failures.append(
                _failure(
                    f"{shape}, σ={sigma}, a={a}",
                    lhs,
                    rhs,
                    ell=list(ell),
                    m=list(m),
                    sigma=list(sigma),
                    a=a,
                    b=b,
                )
            )
    return failures


def _check_parameter_independence(outer: Parts, inner: Parts) -> List[FailureRecord]:
    shape = _shape(outer, inner)
    nvars = shape.nvars
    reference = theorem1_rhs(shape, 0, nvars - 1).rhs
    failures = []
    for a in range(-2, nvars + 3):
        rhs = theorem1_rhs(shape, a, nvars - 1 - a).rhs
        if rhs != reference:
            failures.append(_failure(f"{shape}, a={a} 与 a=0", rhs, reference, a=a))
    return failures


def _check_theorem3(outer: Parts, inner: Parts, a_text: str, b_text: str) -> List[FailureRecord]:
    report = check_theorem3(outer, inner, QPoly.from_text(a_text), QPoly.from_text(b_text))
    if report.verdict:
        return []
    return [
        _failure(f"λ={outer}, μ={inner}, a={a_text}, b={b_text}", report.lhs, report.rhs)
    ]


def _check_commutation(terms: tuple, nvars: int) -> List[FailureRecord]:
    element = LambdaElement({index: QPoly(coeffs) for index, coeffs in terms})
    lhs = specialize(nabla_q(element), nvars)
    rhs = nabla(specialize(element, nvars))
    if lhs == rhs:
        return []
    return [_failure(f"u={element.to_text()}, N={nvars}", lhs, rhs)]


def _check_det_backends(nvars: int, rows: tuple) -> List[FailureRecord]:
    matrix = [[MultiPoly(nvars, dict(entry)) for entry in row] for row in rows]
    lhs = det_poly(matrix, backend="bareiss", nvars=nvars)
    rhs = det_poly(matrix, backend="leibniz", nvars=nvars)
    if lhs == rhs:
        return []
    entries = [[entry.to_text() for entry in row] for row in matrix]
    return [_failure(f"{len(matrix)} 阶矩阵, N={nvars}", lhs, rhs, matrix=entries)]


def _check_leibniz(nvars: int, factors: tuple) -> List[FailureRecord]:
    polys = [MultiPoly(nvars, dict(terms)) for terms in factors]
    lhs, rhs = leibniz_product_sides(polys)
    if lhs == rhs:
        return []
    texts = [poly.to_text() for poly in polys]
    return [_failure(f"{len(polys)} 个因子, N={nvars}", lhs, rhs, factors=texts)]


_CHECKS: Dict[str, Callable[..., List[FailureRecord]]] = {
    SweepIdentity.LEMMA_NABLA_H.value: _check_lemma_nabla_h,
    SweepIdentity.THEOREM1.value: _check_theorem1,
    SweepIdentity.WEIGANDT.value: _check_weigandt,
    SweepIdentity.COROLLARY2.value: _check_corollary2,
    SweepIdentity.DET_LEMMAS.value: _check_det_lemmas,
    SweepIdentity.ORACLE_EQUIV.value: _check_oracle,
    SweepIdentity.DPROD.value: _check_dprod,
    SweepIdentity.PARAMETER_INDEPENDENCE.value: _check_parameter_independence,
    SweepIdentity.THEOREM3.value: _check_theorem3,
    SweepIdentity.COMMUTATION.value: _check_commutation,
    SweepIdentity.DET_BACKENDS.value: _check_det_backends,
    SweepIdentity.LEIBNIZ.value: _check_leibniz,
}


def run_case(case: Case) -> List[FailureRecord]:
    identity, payload = case
    return _CHECKS[identity](*payload)


# =================================================================================
# 3. 执行与汇总
# =================================================================================


def _iter_results(cases: Iterator[Case], workers: int) -> Iterator[List[FailureRecord]]:
    if workers <= 1:
        for case in cases:
            yield run_case(case)
        return
    executor = ProcessPoolExecutor(max_workers=workers)
    try:
        # map 按提交顺序返回结果
        yield from executor.map(run_case, list(cases), chunksize=16)
    finally:
        executor.shutdown(wait=True, cancel_futures=True)


def run_sweep(cfg: SweepConfig) -> SweepReport:
    """按配置枚举用例并逐个检查；fail_fast 时在第一个失败处停止。"""
    logger.info(
        ErrorMessages.SWEEP_START.format(
            identity=cfg.identity, max_nvars=cfg.max_nvars, max_size=cfg.max_outer_size
        )
    )
    cases_run = 0
    failures: List[FailureRecord] = []
    with PerformanceMonitor(f"sweep.{cfg.identity}") as monitor:
        for case_failures in _iter_results(iter_cases(cfg), cfg.workers):
            cases_run += 1
            for failure in case_failures:
                logger.warning(ErrorMessages.SWEEP_FAILURE.format(case=failure.case))
            failures.extend(case_failures)
            if failures and cfg.fail_fast:
                break
    wall_time = monitor.duration or 0.0
    logger.info(
        ErrorMessages.SWEEP_DONE.format(
            identity=cfg.identity, cases=cases_run, failures=len(failures), seconds=wall_time
        )
    )
    return SweepReport(
        identity=cfg.identity,
        cases_run=cases_run,
        failures=failures,
        wall_time_s=wall_time,
        config=cfg,
    )


# =================================================================================
# 4. 预设
# =================================================================================


def load_presets(path: Optional[str] = None) -> Dict[str, Dict[str, Any]]:
    """读取 config.yaml 中的 sweep_presets 段。"""
    file_path = Path(path or settings.verify.presets_path)
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    except FileNotFoundError:
        raise ConfigurationException(
            ErrorMessages.PRESET_FILE_NOT_FOUND.format(file_path=file_path)
        )
    except yaml.YAMLError as e:
        raise ConfigurationException(
            ErrorMessages.PRESET_FILE_INVALID.format(file_path=file_path, error=e)
        )
    presets = raw.get("sweep_presets") if isinstance(raw, dict) else None
    if not isinstance(presets, dict):
        raise ConfigurationException(
            ErrorMessages.PRESET_FILE_INVALID.format(
                file_path=file_path, error="缺少 sweep_presets 段"
            )
        )
    return presets


def load_preset(name: str, path: Optional[str] = None) -> SweepConfig:
    presets = load_presets(path)
    if name not in presets:
        raise ConfigurationException(
            ErrorMessages.PRESET_NOT_FOUND.format(name=name),
            details={"available": sorted(presets)},
        )
    try:
        return SweepConfig.model_validate(presets[name])
    except ValidationError as e:
        raise ConfigurationException(ErrorMessages.SWEEP_CONFIG_INVALID.format(error=e))
