"""
错误消息定义模块

统一管理所有错误消息、HTTP状态码和命令行退出码，提供标准化的错误响应格式。
"""


class ErrorMessages:
    """错误消息常量类"""

    # 通用错误
    INTERNAL_SERVER_ERROR = "服务器内部错误"
    BAD_REQUEST = "请求参数错误"

    # 多项式环相关错误
    VARIABLE_COUNT_MISMATCH = "变量个数不一致: {left} != {right}"
    EXPONENT_LENGTH_MISMATCH = "指数向量长度应为 {nvars}，实际为 {length}: {exponent}"
    NEGATIVE_NVARS = "变量个数不能为负数: {nvars}"
    NEGATIVE_EXPONENT = "指数向量中出现负数: {exponent}"
    VARIABLE_INDEX_OUT_OF_RANGE = "变量下标 {index} 超出范围 [1, {nvars}]"
    EXACT_DIVISION_FAILED = "精确除法失败: {dividend_term} 不能被 {divisor_term} 整除"
    DIVISION_BY_ZERO = "除数为零多项式"

    # 分拆相关错误
    PARTITION_NEGATIVE_ENTRY = "分拆第 {index} 项为负数: {value}"
    PARTITION_NOT_DECREASING = "分拆不满足单调不增: 第 {index} 项 {left} < 第 {next_index} 项 {right}"
    PARTITION_TOO_LONG = "分拆 {parts} 的非零部分超过 {nvars} 项"
    BOX_INDEX_OUT_OF_RANGE = "格子行号 {index} 超出范围 [1, {nvars}]"

    # 行列式相关错误
    MATRIX_NOT_SQUARE = "矩阵不是方阵: 第 {row} 行长度 {length} != {size}"
    MATRIX_MIXED_NVARS = "矩阵元素的变量个数不一致"
    MATRIX_EMPTY_NVARS = "空矩阵必须显式给出变量个数"
    LEIBNIZ_SIZE_EXCEEDED = "Leibniz 展开只支持阶数 <= {limit} 的矩阵，实际为 {size}"
    LAMBDA_SIZE_EXCEEDED = "Λ 中的行列式阶数 {size} 超过上限 {limit}"
    UNKNOWN_DET_BACKEND = "未知的行列式算法: {backend}"

    # 恒等式相关错误
    PARAMETER_CONSTRAINT_INT = "参数必须满足 a + b = N - 1: a={a}, b={b}, N={nvars}"
    PARAMETER_CONSTRAINT_Q = "参数必须满足 a + b = q - 1: a={a}, b={b}"
    NON_SYMMETRIC_INPUT = "多项式不是对称多项式: 首项指数 {exponent} 不是单调不增的"

    # 解析相关错误
    POLY_PARSE_FAILED = "无法解析多项式 '{text}': {error}"
    QPOLY_PARSE_FAILED = "无法解析 q 多项式 '{text}': {error}"
    PARTITION_PARSE_FAILED = "无法解析分拆 '{text}': {error}"
    INTEGER_LIST_PARSE_FAILED = "无法解析整数列表 '{text}'"

    # 配置相关错误
    PRESET_FILE_NOT_FOUND = "预设文件未找到: {file_path}"
    PRESET_FILE_INVALID = "预设文件格式错误 ({file_path}): {error}"
    PRESET_NOT_FOUND = "未找到名为 '{name}' 的验证预设"
    SWEEP_CONFIG_INVALID = "验证配置无效: {error}"

    # 验证流程日志
    SWEEP_START = "[验证] 开始 {identity}: max_nvars={max_nvars}, max_size={max_size}"
    SWEEP_FAILURE = "[验证] 恒等式不成立: {case}"
    SWEEP_DONE = "[验证] {identity} 完成: {cases} 个用例, {failures} 个失败, 用时 {seconds:.3f}s"


class HTTPStatusCodes:
    """HTTP状态码常量类"""

    OK = 200

    BAD_REQUEST = 400

    INTERNAL_SERVER_ERROR = 500


class ExitCodes:
    """命令行退出码常量类"""

    OK = 0
    IDENTITY_FAILED = 1
    USAGE_ERROR = 2
    INTERNAL_ERROR = 3


def create_error_response(status_code: int, detail: str, **kwargs) -> dict:
    """
    创建标准化的错误响应格式

    Args:
        status_code: HTTP状态码
        detail: 错误详情
        **kwargs: 额外的错误信息

    Returns:
        标准化的错误响应字典
    """
    error_response = {
        "error": True,
        "status_code": status_code,
        "detail": detail,
    }

    if kwargs:
        error_response.update(kwargs)

    return error_response
