"""CSV/JSON writers (and a level reader) for engine outputs.

Floats are written with 15 significant digits; CSV keeps trailing zeros so
columns line up (E of the ground level prints as 1.00000000000000).
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Sequence

from .core import Component, Configuration, QuantumNumbers
from .spectrum import EnergyLevel

LEVEL_FIELDS = ("config", "component", "m_s", "N", "n", "m_l", "k", "K", "E2", "E")
FORMATS = ("csv", "json")


def fmt_float(x: float) -> str:
    return f"{x:#.15g}"


def round15(x: float) -> float:
    return float(f"{x:.15g}")


def _json_value(v: Any) -> Any:
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return round15(v)
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def _csv_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def qn_record(qn: QuantumNumbers) -> dict[str, Any]:
    return {
        "config": qn.config.value,
        "component": qn.component.value,
        "m_s": qn.m_s,
        "N": qn.N,
        "n": qn.n,
        "m_l": qn.m_l,
        "k": qn.k,
    }


def level_record(level: EnergyLevel) -> dict[str, Any]:
    rec = qn_record(level.qn)
    rec.update(K=level.K, E2=level.E2, E=level.E)
    return rec


def write_csv(records: Iterable[dict[str, Any]], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([_csv_value(rec.get(c)) for c in columns])
    return buf.getvalue()


def write_json(payload: Any) -> str:
    return json.dumps(_json_value(payload), indent=2) + "\n"


def serialize_records(records: Sequence[dict[str, Any]], fmt: str, columns: Sequence[str]) -> str:
    if fmt == "csv":
        return write_csv(records, columns)
    if fmt == "json":
        return write_json([{c: r.get(c) for c in columns} for r in records])
    raise ValueError(f"unknown format {fmt!r}")


def serialize_levels(levels: Sequence[EnergyLevel], fmt: str = "csv") -> str:
    return serialize_records([level_record(lv) for lv in levels], fmt, LEVEL_FIELDS)


def _level_from_record(rec: dict[str, Any]) -> EnergyLevel:
    qn = QuantumNumbers(
        Configuration(rec["config"]),
        Component(rec["component"]),
        int(rec["N"]),
        int(rec["n"]),
        int(rec["m_l"]),
    )
    return EnergyLevel(qn, float(rec["K"]), float(rec["E2"]), float(rec["E"]))


def parse_levels(text: str, fmt: str = "csv") -> list[EnergyLevel]:
    if fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        if rows and tuple(rows[0]) != LEVEL_FIELDS:
            raise ValueError(f"unexpected CSV header {tuple(rows[0])}")
        return [_level_from_record(r) for r in rows]
    if fmt == "json":
        return [_level_from_record(r) for r in json.loads(text)]
    raise ValueError(f"unknown format {fmt!r}")
