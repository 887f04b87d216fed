"""Problem files, JSON reports, CSV tables.

Machine-readable output carries every number as an exact 'p/q' string
(integers render bare); log-statistic intervals render as ["lo", "hi"].
Serialization is canonical — sorted keys, fixed indentation, no
timestamps — so identical inputs produce byte-identical reports.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import fields, is_dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .core import ApproximationProblem, LatticePoint, as_rational, rational_str
from .errors import UsageError


def to_jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        raise UsageError("floats must never reach machine-readable output")
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, LatticePoint):
        return {"x": list(obj.x), "y": list(obj.y)}
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, ApproximationProblem):
        return {
            "theta": [[rational_str(c) for c in row] for row in obj.theta],
            "alpha": [rational_str(c) for c in obj.alpha],
        }
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise UsageError(f"cannot serialize {type(obj).__name__}")


def canonical_dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def input_sha256(obj: Any) -> str:
    compact = json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(compact.encode("utf-8")).hexdigest()


def load_problem(path) -> tuple[ApproximationProblem, dict]:
    """Read a problem file: theta (n x m of 'p/q'), alpha (n of 'p/q'), labels."""
    with open(path, "r", encoding="utf-8") as handle:
        doc = json.load(handle)
    if not isinstance(doc, dict) or "theta" not in doc or "alpha" not in doc:
        raise UsageError(f"{path}: expected an object with 'theta' and 'alpha'")
    try:
        problem = ApproximationProblem.from_strings(doc["theta"], doc["alpha"])
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc
    meta = {k: doc[k] for k in ("label", "provenance") if k in doc}
    return problem, meta


def save_problem(problem: ApproximationProblem, path, **meta) -> None:
    doc: dict[str, Any] = to_jsonable(problem)
    doc.update(meta)
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def make_report(command: str, problem: Optional[ApproximationProblem], parameters: dict, result: Any) -> dict:
    hashed = {"command": command, "parameters": parameters}
    if problem is not None:
        hashed["problem"] = problem
    return {
        "command": command,
        "input_sha256": input_sha256(hashed),
        "parameters": to_jsonable(parameters),
        "result": to_jsonable(result),
    }


def write_report(report: dict, json_path=None, echo=True) -> str:
    text = canonical_dumps(report)
    if json_path:
        Path(json_path).write_text(text, encoding="utf-8")
    if echo:
        print(text, end="")
    return text


def write_csv(rows: list[dict], path) -> None:
    """Flat table output; row values must already be strings or ints."""
    if not rows:
        Path(path).write_text("", encoding="utf-8")
        return
    keys = list(rows[0].keys())
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=keys)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def parse_rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational: {text!r}") from exc


def parse_vector_arg(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational_arg(part) for part in text.split(","))
