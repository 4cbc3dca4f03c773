"""Job documents: JSON with every integer written as a decimal string."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import InputError

_INT = re.compile(r"-?\d+")
_RAT = re.compile(r"-?\d+(/\d+)?")


def parse_int(x, where: str) -> int:
    if isinstance(x, bool):
        raise InputError(f"{where}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and _INT.fullmatch(x.strip()):
        return int(x)
    raise InputError(f"{where}: expected an integer as a decimal string, got {x!r}")


def parse_rational(x, where: str) -> Fraction:
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str) and _RAT.fullmatch(x.strip()):
        return Fraction(x)
    raise InputError(f"{where}: expected a rational like \"3\" or \"-1/2\", got {x!r}")


def _int_list(v, where: str) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise InputError(f"{where}: expected a list")
    return tuple(parse_int(x, f"{where}[{i}]") for i, x in enumerate(v))


def _points(v, where: str, dim: int | None) -> tuple[tuple[int, ...], ...]:
    if not isinstance(v, list):
        raise InputError(f"{where}: expected a list of points")
    pts = tuple(_int_list(p, f"{where}[{i}]") for i, p in enumerate(v))
    for i, p in enumerate(pts):
        if dim is not None and len(p) != dim:
            raise InputError(f"{where}[{i}]: expected {dim} coordinates, got {len(p)}")
    return pts


@dataclass
class Job:
    dim: int
    points: tuple[tuple[int, ...], ...]
    daughters: tuple[tuple[int, ...], ...] | None = None
    cone: tuple[tuple[int, ...], ...] | None = None
    block_dim: int | None = None
    supports: tuple[tuple[tuple[int, ...], ...], ...] | None = None
    params: dict[str, Any] = field(default_factory=dict)

    def param_int(self, key: str) -> int:
        if key not in self.params:
            raise InputError(f"params.{key}: missing")
        return parse_int(self.params[key], f"params.{key}")

    def param_ints(self, key: str) -> tuple[int, ...] | None:
        if key not in self.params:
            return None
        return _int_list(self.params[key], f"params.{key}")

    def param_rationals(self, key: str) -> list[list[Fraction]] | None:
        if key not in self.params:
            return None
        v = self.params[key]
        if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
            raise InputError(f"params.{key}: expected a list of lists")
        return [[parse_rational(x, f"params.{key}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(v)]


_KEYS = {"dim", "points", "daughters", "cone", "blocks", "params"}


def parse_job(doc: Any) -> Job:
    if not isinstance(doc, dict):
        raise InputError("job: expected an object")
    extra = set(doc) - _KEYS
    if extra:
        raise InputError(f"job: unknown field(s) {sorted(extra)}")
    if "dim" not in doc:
        raise InputError("dim: missing")
    dim = parse_int(doc["dim"], "dim")
    if dim < 1:
        raise InputError("dim: must be at least 1")
    pts = _points(doc.get("points", []), "points", dim)
    job = Job(dim, pts)
    if "daughters" in doc:
        ds = doc["daughters"]
        if not isinstance(ds, list):
            raise InputError("daughters: expected a list of index lists")
        job.daughters = tuple(_int_list(d, f"daughters[{i}]") for i, d in enumerate(ds))
        for i, d in enumerate(job.daughters):
            for x in d:
                if not 0 <= x < len(pts):
                    raise InputError(f"daughters[{i}]: index {x} out of range 0..{len(pts) - 1}")
    if "cone" in doc:
        c = doc["cone"]
        if not isinstance(c, dict) or "functionals" not in c:
            raise InputError("cone: expected an object with 'functionals'")
        job.cone = _points(c["functionals"], "cone.functionals", dim)
    if "blocks" in doc:
        b = doc["blocks"]
        if not isinstance(b, dict) or "supports" not in b or "block_dim" not in b:
            raise InputError("blocks: expected an object with 'block_dim' and 'supports'")
        bd = parse_int(b["block_dim"], "blocks.block_dim")
        sup = b["supports"]
        if not isinstance(sup, list) or not sup:
            raise InputError("blocks.supports: expected a nonempty list of point lists")
        job.block_dim = bd
        job.supports = tuple(_points(s, f"blocks.supports[{i}]", bd) for i, s in enumerate(sup))
    if "params" in doc:
        if not isinstance(doc["params"], dict):
            raise InputError("params: expected an object")
        job.params = dict(doc["params"])
    return job


def load_job(path: str) -> Job:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from None
    return parse_job(doc)


def encode(obj):
    """Make a value JSON-safe with exact integers and rationals as strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(obj):
    """Inverse of ``encode`` on numeric strings (integers and ``p/q`` rationals)."""
    if isinstance(obj, str):
        if _INT.fullmatch(obj):
            return int(obj)
        if _RAT.fullmatch(obj):
            return Fraction(obj)
        return obj
    if isinstance(obj, dict):
        return {k: decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(x) for x in obj]
    return obj


def dumps(doc) -> str:
    return json.dumps(encode(doc), indent=2, ensure_ascii=False) + "\n"
