"""
性能监控模块
记录计算耗时和缓存命中情况，并给出简单的优化建议
"""

import functools
import threading
import time
from collections import defaultdict, deque
from typing import Any, Dict, List, Optional

# 慢计算阈值（秒）
SLOW_THRESHOLD_SECONDS = 1.0

# 性能统计数据
performance_stats = {
    # 按名字累计，不保存单次耗时
    "call_times": {},
    "cache_hits": defaultdict(int),
    "cache_misses": defaultdict(int),
    "function_calls": defaultdict(int),
    "total_calls": 0,
    "slow_calls": deque(maxlen=100),
}

# 线程安全的锁
_stats_lock = threading.Lock()


class PerformanceMonitor:
    """性能监控器"""

    def __init__(self, name: str):
        self.name = name
        self.start_time = None
        self.end_time = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.end_time = time.perf_counter()
        self._record_performance()

    def _record_performance(self):
        """记录性能数据"""
        if self.start_time is None or self.end_time is None:
            return
        duration = self.end_time - self.start_time

        with _stats_lock:
            _accumulate(self.name, duration)
            performance_stats["function_calls"][self.name] += 1
            performance_stats["total_calls"] += 1

            if duration > SLOW_THRESHOLD_SECONDS:
                performance_stats["slow_calls"].append(
                    {"name": self.name, "duration": duration, "timestamp": time.time()}
                )

    @property
    def duration(self) -> Optional[float]:
        """获取执行时间"""
        if self.start_time is not None and self.end_time is not None:
            return self.end_time - self.start_time
        return None


def _accumulate(name: str, duration: float) -> None:
    # 调用方持有 _stats_lock
    stats = performance_stats["call_times"].get(name)
    if stats is None:
        performance_stats["call_times"][name] = {
            "count": 1,
            "total_time": duration,
            "min_time": duration,
            "max_time": duration,
        }
        return
    stats["count"] += 1
    stats["total_time"] += duration
    stats["min_time"] = min(stats["min_time"], duration)
    stats["max_time"] = max(stats["max_time"], duration)


def monitor_performance(name: str):
    """性能监控装饰器"""

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            with PerformanceMonitor(name):
                return func(*args, **kwargs)

        return wrapper

    return decorator


def record_cache_hit(cache_name: str):
    """记录缓存命中"""
    with _stats_lock:
        performance_stats["cache_hits"][cache_name] += 1


def record_cache_miss(cache_name: str):
    """记录缓存未命中"""
    with _stats_lock:
        performance_stats["cache_misses"][cache_name] += 1


def get_performance_report() -> Dict[str, Any]:
    """获取性能报告"""
    with _stats_lock:
        report = {
            "summary": {
                "total_calls": performance_stats["total_calls"],
                "total_functions": len(performance_stats["function_calls"]),
                "slow_calls_count": len(performance_stats["slow_calls"]),
            },
            "call_performance": {},
            "cache_performance": {},
            "slow_calls": list(performance_stats["slow_calls"])[-10:],
            "recommendations": [],
        }

        for name, stats in performance_stats["call_times"].items():
            report["call_performance"][name] = {
                "count": stats["count"],
                "avg_time": stats["total_time"] / stats["count"],
                "min_time": stats["min_time"],
                "max_time": stats["max_time"],
                "total_time": stats["total_time"],
            }

        all_cache_names = set(performance_stats["cache_hits"]) | set(
            performance_stats["cache_misses"]
        )
        for cache_name in sorted(all_cache_names):
            hits = performance_stats["cache_hits"].get(cache_name, 0)
            misses = performance_stats["cache_misses"].get(cache_name, 0)
            total = hits + misses
            hit_rate = (hits / total * 100) if total > 0 else 0

            report["cache_performance"][cache_name] = {
                "hits": hits,
                "misses": misses,
                "total": total,
                "hit_rate": f"{hit_rate:.2f}%",
            }

        report["recommendations"] = _generate_recommendations(report)

        return report


def _generate_recommendations(report: Dict[str, Any]) -> List[str]:
    """生成性能优化建议"""
    recommendations = []

    if report["summary"]["slow_calls_count"] > 0:
        recommendations.append(
            f"发现 {report['summary']['slow_calls_count']} 次慢计算，建议缩小验证范围或增加并行进程数"
        )

    for cache_name, stats in report["cache_performance"].items():
        hit_rate = float(stats["hit_rate"].rstrip("%"))
        if stats["total"] > 100 and hit_rate < 50:
            recommendations.append(
                f"缓存 '{cache_name}' 命中率较低 ({stats['hit_rate']})，建议调大缓存上限"
            )

    for name, stats in report["call_performance"].items():
        if stats["avg_time"] > 0.5:
            recommendations.append(
                f"函数 '{name}' 平均执行时间较长 ({stats['avg_time']:.3f}s)"
            )

    if not recommendations:
        recommendations.append("性能表现良好，无明显优化建议")

    return recommendations


def reset_performance_stats():
    """重置性能统计"""
    with _stats_lock:
        performance_stats["call_times"].clear()
        performance_stats["cache_hits"].clear()
        performance_stats["cache_misses"].clear()
        performance_stats["function_calls"].clear()
        performance_stats["total_calls"] = 0
        performance_stats["slow_calls"].clear()
