"""
应用配置管理模块

集中管理应用的所有配置项，包括日志、计算后端、验证流程和API配置。
"""

import json
import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import List, Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class LoggingConfig(BaseSettings):
    """日志配置类"""

    model_config = SettingsConfigDict(
        env_prefix="LOG_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    level: str = Field("INFO", description="日志级别")
    format: str = Field(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s", description="日志格式"
    )
    file_path: Optional[str] = Field(None, description="日志文件路径")
    max_file_size_mb: int = Field(10, description="日志文件最大大小（MB）")
    backup_count: int = Field(5, description="日志文件备份数量")


class ComputeConfig(BaseSettings):
    """计算配置类：行列式算法与结果缓存"""

    model_config = SettingsConfigDict(
        env_prefix="SCHUR_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    det_backend: Literal["bareiss", "leibniz"] = Field("bareiss", description="默认行列式算法")
    leibniz_max_size: int = Field(6, description="Leibniz 展开允许的最大阶数")
    lambda_max_size: int = Field(8, description="Λ 中 Jacobi-Trudi 行列式的最大阶数")
    h_cache_size: int = Field(4096, description="h(n, N) 缓存条目上限")
    schur_cache_size: int = Field(20000, description="斜 Schur 多项式缓存条目上限")


class VerifyConfig(BaseSettings):
    """验证流程配置类"""

    model_config = SettingsConfigDict(
        env_prefix="VERIFY_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    workers: int = Field(1, description="并行进程数，1 表示在当前进程内执行")
    presets_path: str = Field("config.yaml", description="验证预设文件路径")
    default_seed: int = Field(0, description="随机性质检查的默认种子")
    random_cases: int = Field(200, description="随机恒等式的默认用例数")


class APIConfig(BaseSettings):
    """API配置类"""

    model_config = SettingsConfigDict(
        env_prefix="API_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    title: str = Field("Schur-Nabla API", description="API标题")
    description: str = Field(
        "斜 Schur 多项式、对角导数与恒等式验证的精确计算服务。", description="API描述"
    )
    version: str = Field("1.0.0", description="API版本")
    debug: bool = Field(False, description="调试模式")

    cors_origins: List[str] = Field(
        default=["http://localhost:5173", "http://localhost"],
        description="允许的CORS源",
    )

    @field_validator("cors_origins", mode="before")
    @classmethod
    def parse_cors_origins(cls, v):
        """解析CORS源，支持JSON数组格式和逗号分隔格式"""
        if isinstance(v, list):
            return v
        if isinstance(v, str):
            try:
                parsed = json.loads(v)
                if isinstance(parsed, list):
                    return parsed
            except json.JSONDecodeError:
                return [origin.strip() for origin in v.split(",") if origin.strip()]
        return v


class AppConfig(BaseSettings):
    """应用总配置类"""

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", case_sensitive=False, extra="ignore"
    )

    environment: str = Field("development", description="运行环境")

    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    compute: ComputeConfig = Field(default_factory=ComputeConfig)
    verify: VerifyConfig = Field(default_factory=VerifyConfig)
    api: APIConfig = Field(default_factory=APIConfig)


# 全局配置实例
settings = AppConfig()


def setup_logging(config: Optional[LoggingConfig] = None) -> None:
    """
    根据日志配置初始化根日志器。

    标准输出只留给计算结果，所以日志一律写到 stderr（以及可选的滚动日志文件）。
    """
    config = config or settings.logging
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.file_path:
        handlers.append(
            RotatingFileHandler(
                config.file_path,
                maxBytes=config.max_file_size_mb * 1024 * 1024,
                backupCount=config.backup_count,
                encoding="utf-8",
            )
        )
    logging.basicConfig(
        level=config.level.upper(), format=config.format, handlers=handlers, force=True
    )


def is_debug_mode() -> bool:
    """是否为调试模式"""
    return settings.api.debug
