"""Check records: one verified inequality or identity with both sides and a verdict."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

PASS = "pass"
FAIL = "fail"
HEURISTIC_PASS = "heuristic-pass"
INFINITE_SKIP = "infinite-skip"
VERDICTS = (PASS, HEURISTIC_PASS, FAIL, INFINITE_SKIP)

#: ``lhs >= rhs``, ``lhs <= rhs`` or ``lhs == rhs``
RELATIONS = ("ge", "le", "eq")


@dataclass(frozen=True)
class CheckRecord:
    """``slack = lhs - rhs`` whenever both sides are finite, else ``None``.

    ``heuristic`` marks records whose sides include optimizer estimates;
    such a record can at best earn ``heuristic-pass``.
    """

    suite: str
    instance_id: int
    inputs_digest: str
    relation: str
    lhs: float
    rhs: float
    slack: float | None
    tolerance: float
    verdict: str
    wall_ms: float | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = asdict(self)
        for key in ("lhs", "rhs", "slack"):
            out[key] = encode_float(out[key])
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CheckRecord":
        data = dict(data)
        for key in ("lhs", "rhs", "slack"):
            data[key] = decode_float(data[key])
        return cls(**data)


def encode_float(x):
    """JSON has no infinities: non-finite values travel as strings."""
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else repr(x)


def decode_float(x):
    if x is None or isinstance(x, (int, float)):
        return x
    return float(x)


def judge(lhs: float, rhs: float, relation: str, tolerance: float, heuristic: bool = False):
    """Slack and verdict for ``lhs <relation> rhs`` at ``tolerance``.

    An infinite side gives ``infinite-skip``, never ``fail``.
    """
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    lhs, rhs = float(lhs), float(rhs)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return None, INFINITE_SKIP
    slack = lhs - rhs
    if relation == "ge":
        ok = slack >= -tolerance
    elif relation == "le":
        ok = slack <= tolerance
    else:
        ok = abs(slack) <= tolerance
    if not ok:
        return slack, FAIL
    return slack, HEURISTIC_PASS if heuristic else PASS


def make_record(suite, instance_id, digest, relation, lhs, rhs, tolerance,
                heuristic=False, wall_ms=None, note="") -> CheckRecord:
    slack, verdict = judge(lhs, rhs, relation, tolerance, heuristic)
    return CheckRecord(suite, int(instance_id), digest, relation, float(lhs), float(rhs),
                       slack, float(tolerance), verdict, wall_ms, note)


def _feed(h, item):
    if isinstance(item, np.ndarray):
        a = np.ascontiguousarray(item, dtype=complex)
        h.update(repr(a.shape).encode())
        h.update(a.tobytes())
    elif hasattr(item, "kraus"):
        h.update(item.kind.encode())
        _feed(h, item.kraus)
    elif isinstance(item, (list, tuple)):
        for sub in item:
            _feed(h, sub)
    else:
        h.update(json.dumps(item, sort_keys=True, default=lambda o: o.item()).encode())
    h.update(b"|")


def digest(*items) -> str:
    """Short SHA-256 over arrays, channels, numbers and strings."""
    h = hashlib.sha256()
    _feed(h, items)
    return h.hexdigest()[:16]
