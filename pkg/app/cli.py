"""
命令行入口

    python -m app h --n 2 --nvars 2
    python -m app schur --nvars 2 --outer 2,1 --inner ""
    python -m app laplace --nvars 3 --outer 5,3,0 --format json
    python -m app verify --identity theorem1 --max-nvars 3 --max-size 6 --a 0,1,2,3

计算结果写到标准输出（--format json 时恰好一个 JSON 文档），日志与错误写到标准错误。
退出码：0 成功，1 恒等式不成立，2 用法或输入错误，3 内部错误。
"""

import argparse
import json
import logging
import re
import sys
from typing import Any, Dict, List, Optional, Sequence

from dotenv import load_dotenv

from app.api.v1.services import (
    build_sweep_config,
    corollary2_service,
    expand_service,
    h_service,
    laplace_service,
    nabla_service,
    schur_service,
    theorem1_service,
    theorem3_service,
    to_json_document,
    to_text,
    verify_service,
)
from app.core.config import settings, setup_logging
from app.core.errors import ErrorMessages, ExitCodes
from app.core.exceptions import BaseAppException
from app.schemas.algebra import SweepIdentity, SweepReport

logger = logging.getLogger(__name__)


def parse_int_list(text: str) -> List[int]:
    """`0,1,2` → [0, 1, 2]"""
    try:
        return [int(piece) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(ErrorMessages.INTEGER_LIST_PARSE_FAILED.format(text=text))


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"不是整数: {text}")
    if value < 0:
        raise argparse.ArgumentTypeError(ErrorMessages.NEGATIVE_NVARS.format(nvars=value))
    return value


# 取值可能以负号开头的列表参数
_LIST_FLAGS = ("--a", "--a-offsets")
_NEGATIVE_LIST_PATTERN = re.compile(r"-[0-9]+(?:,-?[0-9]+)*")


def attach_negative_lists(argv: Sequence[str]) -> List[str]:
    """把 `--a -2,0` 改写成 `--a=-2,0`，否则 argparse 会把 `-2,0` 当成选项。"""
    tokens = list(argv)
    merged: List[str] = []
    index = 0
    while index < len(tokens):
        token = tokens[index]
        if (
            token in _LIST_FLAGS
            and index + 1 < len(tokens)
            and _NEGATIVE_LIST_PATTERN.fullmatch(tokens[index + 1])
        ):
            merged.append(f"{token}={tokens[index + 1]}")
            index += 2
            continue
        merged.append(token)
        index += 1
    return merged


# =================================================================================
# 1. 参数解析
# =================================================================================


def _add_shape_arguments(parser: argparse.ArgumentParser, with_inner: bool = True) -> None:
    parser.add_argument("--nvars", type=non_negative_int, required=True, help="变量个数 N")
    parser.add_argument("--outer", required=True, help="外分拆 λ，如 3,2,1")
    if with_inner:
        parser.add_argument("--inner", default="", help="内分拆 μ，空串表示零分拆")


def build_parser() -> argparse.ArgumentParser:
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument(
        "--format", choices=["text", "json"], default="text", help="输出格式（默认 text）"
    )

    parser = argparse.ArgumentParser(
        prog="schur-nabla",
        description="斜 Schur 多项式、对角导数 ∇ 与相关恒等式的精确计算和穷举验证。",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.api.version}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    h_parser = commands.add_parser("h", parents=[output], help="完全齐次对称多项式 h_n")
    h_parser.add_argument("--n", type=int, required=True, help="次数 n")
    h_parser.add_argument("--nvars", type=non_negative_int, required=True, help="变量个数 N")

    schur_parser = commands.add_parser("schur", parents=[output], help="斜 Schur 多项式 s_{λ/μ}")
    _add_shape_arguments(schur_parser)

    nabla_parser = commands.add_parser(
        "nabla", parents=[output], help="∇(s_{λ/μ})；给出 --a 时输出角展开报告"
    )
    _add_shape_arguments(nabla_parser)
    nabla_parser.add_argument("--a", type=int, default=None)
    nabla_parser.add_argument("--b", type=int, default=None)
    nabla_parser.add_argument(
        "--report", choices=["text", "json"], dest="format", default="text", help="同 --format"
    )

    laplace_parser = commands.add_parser(
        "laplace", parents=[output], help="∇'(s_λ) 的 Schur 基展开"
    )
    _add_shape_arguments(laplace_parser, with_inner=False)

    expand_parser = commands.add_parser("expand", parents=[output], help="对称多项式的 Schur 基展开")
    expand_parser.add_argument("--nvars", type=non_negative_int, required=True, help="变量个数 N")
    expand_parser.add_argument("--poly", required=True, help="多项式文本，如 'x1^2 + x1*x2 + x2^2'")

    theorem1_parser = commands.add_parser(
        "theorem1", parents=[output], help="检查 ∇(s_{λ/μ}) 的外角/内角展开"
    )
    _add_shape_arguments(theorem1_parser)
    theorem1_parser.add_argument("--a", type=int, required=True)
    theorem1_parser.add_argument("--b", type=int, default=None, help="缺省为 N - 1 - a")

    corollary2_parser = commands.add_parser(
        "corollary2", parents=[output], help="Σ s_{(λ-e_i)/μ} 与 Σ s_{λ/(μ+e_i)}"
    )
    _add_shape_arguments(corollary2_parser)

    theorem3_parser = commands.add_parser(
        "theorem3", parents=[output], help="在 Λ 中检查 ∇_q(s_{λ/μ}) 的展开"
    )
    theorem3_parser.add_argument("--outer", required=True, help="λ，如 2,1")
    theorem3_parser.add_argument("--inner", default="", help="μ，空串表示空分拆")
    theorem3_parser.add_argument("--a", required=True, help="q 多项式，如 q-1")
    theorem3_parser.add_argument("--b", required=True, help="q 多项式，如 0")

    verify_parser = commands.add_parser("verify", parents=[output], help="穷举验证恒等式")
    verify_parser.add_argument(
        "--identity", choices=[identity.value for identity in SweepIdentity], default=None
    )
    verify_parser.add_argument("--preset", default=None, help="config.yaml 中的预设名")
    verify_parser.add_argument("--max-nvars", type=int, default=None, dest="max_nvars")
    verify_parser.add_argument("--max-size", type=int, default=None, dest="max_outer_size")
    verify_parser.add_argument(
        "--a", type=parse_int_list, default=None, dest="a_values", help="a 的取值列表，如 -2,0,3"
    )
    verify_parser.add_argument("--a-offsets", type=parse_int_list, default=None, dest="a_offsets")
    verify_parser.add_argument("--seed", type=int, default=None)
    verify_parser.add_argument("--workers", type=int, default=None)
    verify_parser.add_argument("--random-cases", type=int, default=None, dest="random_cases")
    verify_parser.add_argument("--fail-fast", action="store_true", default=None, dest="fail_fast")
    verify_parser.add_argument("--output", default=None, help="同时把 JSON 报告写入该文件")

    return parser


# =================================================================================
# 2. 命令分发
# =================================================================================


def _dispatch(args: argparse.Namespace):
    command = args.command
    if command == "h":
        return h_service(args.n, args.nvars)
    if command == "schur":
        return schur_service(args.nvars, args.outer, args.inner)
    if command == "nabla":
        return nabla_service(args.nvars, args.outer, args.inner, args.a, args.b)
    if command == "laplace":
        return laplace_service(args.nvars, args.outer)
    if command == "expand":
        return expand_service(args.nvars, args.poly)
    if command == "theorem1":
        return theorem1_service(args.nvars, args.outer, args.inner, args.a, args.b)
    if command == "corollary2":
        return corollary2_service(args.nvars, args.outer, args.inner)
    if command == "theorem3":
        return theorem3_service(args.outer, args.inner, args.a, args.b)
    overrides: Dict[str, Any] = {
        key: getattr(args, key)
        for key in (
            "identity",
            "max_nvars",
            "max_outer_size",
            "a_values",
            "a_offsets",
            "seed",
            "workers",
            "random_cases",
            "fail_fast",
        )
    }
    return verify_service(build_sweep_config(args.preset, overrides))


def _exit_code(result) -> int:
    if isinstance(result, SweepReport):
        return ExitCodes.OK if result.passed else ExitCodes.IDENTITY_FAILED
    if getattr(result, "verdict", None) is False:
        return ExitCodes.IDENTITY_FAILED
    return ExitCodes.OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(attach_negative_lists(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        # argparse 对 --help / --version 以 0 退出，对用法错误以 2 退出
        return e.code if isinstance(e.code, int) else ExitCodes.USAGE_ERROR

    try:
        result = _dispatch(args)
    except BaseAppException as e:
        print(f"错误: {e.message}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception("命令执行失败")
        print(f"错误: {e}", file=sys.stderr)
        return ExitCodes.INTERNAL_ERROR

    document = to_json_document(result)
    if args.format == "json":
        print(json.dumps(document, ensure_ascii=False))
    else:
        print(to_text(result))
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as f:
            json.dump(document, f, ensure_ascii=False, indent=2)
    return _exit_code(result)
