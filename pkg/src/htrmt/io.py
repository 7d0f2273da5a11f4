"""Run configuration and CSV/JSON artifacts.

Every artifact starts with its full configuration: CSV files carry a first
line ``# {json}`` and JSON files a ``"config"`` member, so re-reading the
header reconstructs an equivalent RunConfig.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .errors import UsageError

FORMAT_VERSION = 1


@dataclass
class RunConfig:
    subcommand: str
    family: str | None = None
    model: str | None = None
    kind: str | None = None
    alpha: str | None = None
    alpha1: str | None = None
    alpha2: str | None = None
    kappa: str | None = None
    order: int | None = None
    pmax: int | None = None
    qmax: int | None = None
    grid: list | None = None
    bins: int | None = None
    edges: list | None = None
    size: int | None = None
    trials: int | None = None
    seed: int | None = None
    mode: str = "exact"
    correction: bool = False
    fold: bool = False
    quick: bool = False
    output: str | None = None
    format: str = "csv"
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v not in (None, {}, [])}

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)


def _header(config: RunConfig, meta: dict | None) -> dict:
    return {"version": FORMAT_VERSION, "config": config.to_dict(), "meta": meta or {}}


def _json_default(obj):
    try:
        import numpy as np
        if isinstance(obj, np.generic):
            return obj.item()
        if isinstance(obj, np.ndarray):
            return obj.tolist()
    except ImportError:  # pragma: no cover
        pass
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_json_default, ensure_ascii=False)


def format_csv(config: RunConfig, columns, rows, meta: dict | None = None) -> str:
    buf = io.StringIO()
    buf.write("# " + dumps(_header(config, meta)) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, float):
        return repr(v)  # shortest round-trip
    return "" if v is None else v


def format_json(config: RunConfig, payload: dict, meta: dict | None = None) -> str:
    doc = _header(config, meta)
    doc.update(payload)
    return dumps(doc) + "\n"


def emit(text: str, output: str | None):
    if output in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(output).write_text(text, encoding="utf-8")


def read_artifact(source) -> tuple:
    """Parse an artifact written by this package: (RunConfig, meta, body).

    ``body`` is a list of dict rows for CSV and the remaining members for JSON.
    """
    text = Path(source).read_text(encoding="utf-8") if not isinstance(source, str) or "\n" not in source else source
    if text.startswith("# "):
        first, rest = text.split("\n", 1)
        head = json.loads(first[2:])
        body = list(csv.DictReader(io.StringIO(rest)))
    else:
        head = json.loads(text)
        body = {k: v for k, v in head.items() if k not in ("version", "config", "meta")}
    return RunConfig.from_dict(head["config"]), head.get("meta", {}), body
