"""Canonical JSON reports.

Sorted keys, compact separators, rationals in lowest terms as [num, den]:
identical inputs give byte-identical reports regardless of parallelism.
"""

from __future__ import annotations

import json
from dataclasses import is_dataclass
from fractions import Fraction
from typing import Any

import numpy as np


def jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(x) for x in seq]
    if is_dataclass(obj):
        return {
            k: jsonable(v) for k, v in vars(obj).items() if not k.startswith("_")
        }
    raise TypeError(f"cannot encode {type(obj).__name__} into a report")


def canonical_dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":")) + "\n"
