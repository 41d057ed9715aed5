"""JSON serialization of results.  Rationals become ``{"num": "p", "den": "q"}``
with decimal strings; no floats are ever written."""

from __future__ import annotations

import dataclasses
import json
from collections import Counter
from fractions import Fraction
from typing import Any

from .graph import ColoredGraph, Graph
from .templates import Frame


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return {"num": str(obj.numerator), "den": str(obj.denominator)}
    if isinstance(obj, float):
        raise TypeError("floats are not serialized; use exact rationals")
    if isinstance(obj, ColoredGraph):
        return {"n": obj.n, "colored_edges": [[u, v, c] for (u, v), c in sorted(obj.colors.items())]}
    if isinstance(obj, Graph):
        return {"n": obj.n, "edges": [list(e) for e in obj.edges]}
    if isinstance(obj, Frame):
        return {"name": obj.name, "graph": to_jsonable(obj.colored)}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
               if f.repr}
        return out
    if isinstance(obj, (dict, Counter)):
        items = sorted(obj.items(), key=lambda kv: _sort_key(kv[0]))
        return {_key(k): to_jsonable(v) for k, v in items}
    if isinstance(obj, (frozenset, set)):
        return [to_jsonable(v) for v in sorted(obj, key=_sort_key)]
    if isinstance(obj, (list, tuple, range)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _sort_key(k):
    return (0, k, "") if isinstance(k, (int, Fraction)) else (1, 0, str(k))


def _key(k) -> str:
    if isinstance(k, Fraction):
        return f"{k.numerator}/{k.denominator}"
    return str(k)


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def _revive(obj):
    if isinstance(obj, dict) and set(obj) == {"num", "den"} and all(isinstance(v, str) for v in obj.values()):
        return Fraction(int(obj["num"]), int(obj["den"]))
    return obj


def loads(text: str) -> Any:
    """Parse a report, turning every serialized rational back into a Fraction."""
    return json.loads(text, object_hook=_revive)


def summary(obj: Any, title: str = "") -> str:
    """Human-readable one-pager of the scalar fields of a report."""
    data = to_jsonable(obj)
    lines = [title] if title else []

    def fmt(v):
        if isinstance(v, dict) and set(v) == {"num", "den"}:
            return v["num"] if v["den"] == "1" else f"{v['num']}/{v['den']}"
        return json.dumps(v, sort_keys=True)

    def walk(d, prefix=""):
        for k in sorted(d):
            v = d[k]
            if isinstance(v, dict) and set(v) != {"num", "den"}:
                if len(json.dumps(v)) <= 120:
                    lines.append(f"{prefix}{k}: {fmt(v)}")
                else:
                    walk(v, prefix + k + ".")
            elif isinstance(v, list) and len(json.dumps(v)) > 120:
                lines.append(f"{prefix}{k}: [{len(v)} entries]")
            else:
                lines.append(f"{prefix}{k}: {fmt(v)}")

    if isinstance(data, dict):
        walk(data)
    else:
        lines.append(fmt(data))
    return "\n".join(lines) + "\n"
