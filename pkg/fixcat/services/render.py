"""
Output rendering: JSON documents, pandas text tables, DOT diagrams.
"""
import json
import math
from enum import Enum

import numpy as np
import pandas as pd
from pydantic import BaseModel

from fixcat import FORMAT_TAG
from fixcat.core.category import FinMap, FinSet, NamedArrow, OrderArrow, element_key
from fixcat.core.rank import RankValue
from fixcat.core.sigma import DeltaMap, SigmaMorphism, SigmaObject


def to_jsonable(obj):
    """Recursively convert core values, tuples and numpy scalars into JSON-ready data."""
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    elif isinstance(obj, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(obj, key=_sort_key)]
    elif isinstance(obj, FinSet):
        return [to_jsonable(e) for e in obj.elements]
    elif isinstance(obj, FinMap):
        return {
            "source": to_jsonable(obj.source),
            "target": to_jsonable(obj.target),
            "images": [to_jsonable(obj(x)) for x in obj.source],
        }
    elif isinstance(obj, OrderArrow):
        return [obj.source, obj.target]
    elif isinstance(obj, NamedArrow):
        return obj.name
    elif isinstance(obj, (SigmaObject, SigmaMorphism)):
        return obj.label()
    elif isinstance(obj, DeltaMap):
        return list(obj.values)
    elif isinstance(obj, RankValue):
        return obj.as_dict()
    elif isinstance(obj, BaseModel):
        return obj.model_dump(mode="json", exclude_none=True)
    elif isinstance(obj, Enum):
        return obj.value
    elif isinstance(obj, (np.bool_,)):
        return bool(obj)
    elif isinstance(obj, (np.integer,)):
        return int(obj)
    elif isinstance(obj, (np.floating,)):
        val = float(obj)
        return None if math.isnan(val) or math.isinf(val) else val
    elif isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    return obj


def _key(k) -> str:
    if isinstance(k, str):
        return k
    return json.dumps(to_jsonable(k), ensure_ascii=False)


def _sort_key(v):
    try:
        return (0, element_key(v))
    except Exception:
        return (1, repr(v))


def dump_json(obj) -> str:
    """Sorted keys, so identical results give byte-identical output."""
    data = to_jsonable(obj)
    if isinstance(data, dict):
        data.setdefault("format", FORMAT_TAG)
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)


# ── Text ──


def render_text(summary: dict, rows: list[dict] | None = None) -> str:
    lines = []
    for key in sorted(summary):
        value = to_jsonable(summary[key])
        if isinstance(value, (dict, list)):
            value = json.dumps(value, ensure_ascii=False, sort_keys=True)
        lines.append(f"{key}: {value}")
    if rows:
        frame = pd.DataFrame([to_jsonable(r) for r in rows])
        lines.append("")
        lines.append(frame.to_string(index=False))
    return "\n".join(lines)


def stage_rows(stage_sizes: list[int], image_sizes: list[int] | None = None) -> list[dict]:
    rows = []
    for n, size in enumerate(stage_sizes):
        row = {"stage": n, "size": size}
        if image_sizes is not None and n < len(image_sizes):
            row["image"] = image_sizes[n]
        rows.append(row)
    return rows


# ── DOT ──


def _quote(text) -> str:
    return '"' + str(text).replace('"', '\\"') + '"'


def chain_to_dot(stage_sizes: list[int], name: str = "chain", stable_at: int | None = None) -> str:
    lines = [f"digraph {name} {{"]
    for n, size in enumerate(stage_sizes):
        label = f"X{n} |{size}|" + (" *" if n == stable_at else "")
        lines.append(f"  X{n} [label={_quote(label)}];")
    for n in range(len(stage_sizes) - 1):
        lines.append(f"  X{n} -> X{n + 1};")
    lines.append("}")
    return "\n".join(lines)


def pushout_row_to_dot(sizes: dict, name: str = "propagation") -> str:
    """The row F(B) ← E → B pushed out to P; `sizes` maps E, FB, B, P to cardinalities."""
    lines = [f"digraph {name} {{"]
    for node in ("E", "FB", "B", "P"):
        lines.append(f"  {node} [label={_quote(f'{node} |{sizes[node]}|')}];")
    for src, dst, label in (("E", "FB", "r"), ("E", "B", "a"), ("FB", "P", "j"), ("B", "P", "i")):
        lines.append(f"  {src} -> {dst} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines)
