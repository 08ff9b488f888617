# cache_ttl.py
from __future__ import annotations
import json
import logging
import os
import threading
import time
from typing import Any, Dict, Optional, Tuple

logger = logging.getLogger(__name__)

_REDIS_URL = os.getenv("REDIS_URL")
DEFAULT_TTL = int(os.getenv("CACHE_TTL_SEC", "3600"))
_USE_REDIS = False
_r = None

if _REDIS_URL:
    try:
        import redis
        _r = redis.from_url(_REDIS_URL, decode_responses=True)
        _USE_REDIS = True
    except Exception:
        logger.warning("redis unavailable at %s, using in-memory cache", _REDIS_URL)
        _r = None
        _USE_REDIS = False

_mem: Dict[str, Tuple[float, str]] = {}
_lock = threading.Lock()

_hits = 0
_miss = 0
_sets = 0


def metrics() -> Dict[str, Any]:
    return {"hits": _hits, "miss": _miss, "sets": _sets, "backend": "redis" if _USE_REDIS else "memory"}


def verify_key(suite: str, corpus: str, seed: int, graph6: str) -> str:
    return f"verify:{suite}:{corpus}:{seed}:{graph6}"


def setex(key: str, ttl_sec: Optional[int], value: Any) -> None:
    global _sets
    ttl = DEFAULT_TTL if ttl_sec is None else ttl_sec
    s = json.dumps(value, separators=(",", ":"))
    with _lock:
        _sets += 1
    if _USE_REDIS and _r:
        try:
            _r.setex(key, ttl, s)
            return
        except Exception:
            logger.debug("redis setex failed for %s", key, exc_info=True)
    with _lock:
        _mem[key] = (time.time() + ttl, s)


def get(key: str) -> Optional[Any]:
    global _hits, _miss
    if _USE_REDIS and _r:
        try:
            s = _r.get(key)
        except Exception:
            logger.debug("redis get failed for %s", key, exc_info=True)
        else:
            with _lock:
                if s is None:
                    _miss += 1
                    return None
                _hits += 1
            return json.loads(s)
    with _lock:
        tup = _mem.get(key)
        if not tup or time.time() > tup[0]:
            _mem.pop(key, None)
            _miss += 1
            return None
        _hits += 1
        s = tup[1]
    try:
        return json.loads(s)
    except ValueError:
        return None


def clear() -> None:
    global _hits, _miss, _sets
    with _lock:
        _mem.clear()
        _hits = _miss = _sets = 0
