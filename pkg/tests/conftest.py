"""
pytest配置文件
提供测试夹具和配置
"""

from pathlib import Path
from typing import Generator

import pytest
from fastapi.testclient import TestClient
from hypothesis import settings as hypothesis_settings

from app.algebra.ring import MultiPoly
from app.algebra.shapes import Partition, SkewShape
from app.core.performance import reset_performance_stats
from app.main import app

# 精确运算不设单例截止时间
hypothesis_settings.register_profile("schur", deadline=None)
hypothesis_settings.load_profile("schur")


def pytest_addoption(parser):
    parser.addoption(
        "--run-slow", action="store_true", default=False, help="运行完整规模的穷举验证"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 完整规模的穷举验证，需要 --run-slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="需要 --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="function")
def client() -> Generator[TestClient, None, None]:
    """创建测试客户端"""
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture
def clean_performance_stats():
    """清空性能统计"""
    reset_performance_stats()
    yield
    reset_performance_stats()


@pytest.fixture
def make_shape():
    """由两个元组构造斜形状"""

    def _make(outer, inner=None):
        inner = inner if inner is not None else (0,) * len(outer)
        return SkewShape(outer=Partition(parts=tuple(outer)), inner=Partition(parts=tuple(inner)))

    return _make


@pytest.fixture
def poly():
    """由文本构造多项式"""

    def _poly(text: str, nvars: int) -> MultiPoly:
        return MultiPoly.from_text(text, nvars)

    return _poly


@pytest.fixture
def presets_path() -> str:
    """仓库根目录下的 config.yaml"""
    return str(Path(__file__).resolve().parent.parent / "config.yaml")
