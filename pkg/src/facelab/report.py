"""Versioned JSON reports.

Everything except the ``timings`` block is a pure function of the input bytes
and the configuration, so reruns compare equal once timings are dropped.
"""
from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction

import numpy as np

SCHEMA_VERSION = "1.0"


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def digest_file(path: str | os.PathLike) -> str:
    with open(path, "rb") as fh:
        return digest_bytes(fh.read())


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def make_report(command: str, config: dict, results: dict, *, input_path=None, timings=None) -> dict:
    rep = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "results": results,
    }
    if input_path is not None:
        rep["input"] = {"path": str(input_path), "digest": digest_file(input_path)}
    rep["timings"] = timings or {}
    return rep


def dumps(report: dict) -> str:
    return json.dumps(report, default=_default, sort_keys=True, indent=2)


def strip_timings(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timings"}
