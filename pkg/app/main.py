import logging
from contextlib import asynccontextmanager

from dotenv import load_dotenv
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.api.v1.endpoints import router as api_router_v1
from app.core.config import is_debug_mode, settings, setup_logging
from app.core.exceptions import setup_exception_handlers

logger = logging.getLogger(__name__)


# 使用 lifespan 管理器来处理应用启动和关闭时的逻辑
@asynccontextmanager
async def lifespan(app: FastAPI):
    # --- 在应用启动时执行的代码 ---
    load_dotenv()
    setup_logging()
    logger.info("--- 正在加载 Schur-Nabla 服务... ---")
    if is_debug_mode():
        logger.info(f"调试模式已开启，默认行列式算法: {settings.compute.det_backend}")
    logger.info("--- Schur-Nabla 服务加载完成 ---")

    yield  # 应用在这里开始运行

    # --- 在应用关闭时执行的代码 ---
    logger.info("--- Schur-Nabla 正在关闭... ---")


# 创建 FastAPI 应用实例
app = FastAPI(
    title=settings.api.title,
    description=settings.api.description,
    version=settings.api.version,
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.api.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# 设置统一异常处理器
setup_exception_handlers(app)

# 包含 v1 版本的 API 路由
app.include_router(api_router_v1, prefix="/api/v1")


# 定义一个根路径，用于健康检查
@app.get("/", tags=["Health Check"])
def read_root():
    """
    一个简单的根端点，用于检查服务是否正在运行。
    """
    return {"status": "Schur-Nabla API is online."}
