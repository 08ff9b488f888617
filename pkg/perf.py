# perf.py
from __future__ import annotations
import json
import logging
import os
import time
from contextvars import ContextVar
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

# Enable globally via env or per run via perf.enable()
PERF_DEFAULT = os.getenv("PERF_TRACE", "0") == "1"
PERF_WARN_MS = int(os.getenv("PERF_WARN_MS", "400"))

_ctx_trace: ContextVar[Optional[Dict[str, Any]]] = ContextVar("trace", default=None)


def enable(run_id: Optional[str] = None) -> None:
    _ctx_trace.set({
        "id": run_id or f"run-{int(time.time() * 1000)}",
        "start": time.perf_counter(),
        "spans": [],   # {name, ms, extra}
        "marks": {},   # counters
    })


def disable() -> None:
    _ctx_trace.set(None)


def is_enabled() -> bool:
    return _ctx_trace.get() is not None


def mark(key: str, inc: float = 1.0) -> None:
    t = _ctx_trace.get()
    if not t:
        return
    t["marks"][key] = t["marks"].get(key, 0.0) + inc


class span:
    """with perf.span('decompose', extra={'n': 40}): ..."""

    def __init__(self, name: str, extra: Optional[Dict[str, Any]] = None):
        self.name = name
        self.extra = extra or {}
        self.t0 = 0.0

    def __enter__(self) -> "span":
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:
        t = _ctx_trace.get()
        if not t:
            return False
        ms = (time.perf_counter() - self.t0) * 1000.0
        rec: Dict[str, Any] = {"name": self.name, "ms": round(ms, 1)}
        if self.extra:
            rec["extra"] = self.extra
        if exc_type is not None:
            rec["error"] = exc_type.__name__
        t["spans"].append(rec)
        if ms >= PERF_WARN_MS:
            logger.warning("slow span %r %.1fms extra=%s", self.name, ms, self.extra)
        return False


def snapshot() -> Optional[Dict[str, Any]]:
    t = _ctx_trace.get()
    if not t:
        return None
    out = dict(t)
    out["total_ms"] = round((time.perf_counter() - t["start"]) * 1000.0, 1)
    return out


def totals(trace: Optional[Dict[str, Any]] = None) -> Dict[str, Dict[str, float]]:
    """Per span name: call count and summed milliseconds."""
    t = trace if trace is not None else snapshot()
    out: Dict[str, Dict[str, float]] = {}
    for rec in (t or {}).get("spans", []):
        row = out.setdefault(rec["name"], {"count": 0, "ms": 0.0})
        row["count"] += 1
        row["ms"] = round(row["ms"] + rec["ms"], 1)
    return out


def dumps(obj: Optional[Dict[str, Any]]) -> str:
    """Compact summary of a trace for stderr."""
    if not obj:
        return "{}"
    try:
        return json.dumps({
            "id": obj.get("id"),
            "total_ms": obj.get("total_ms"),
            "spans": totals(obj),
            "marks": obj.get("marks", {}),
        }, separators=(",", ":"), default=str)
    except (TypeError, ValueError):
        return "{}"
