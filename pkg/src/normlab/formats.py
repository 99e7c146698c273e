"""Norm-spec documents, matrix files, and report serialization.

Norm descriptors round-trip through a tagged JSON tree; matrices load from
CSV with complex literals like ``1+2i`` or from a tagged tree of
``{"re": ..., "im": ...}`` cells.  All reports serialize to JSON with sorted
keys under ``"schema_version": 1`` so identical runs produce identical bytes
apart from elapsed-time fields.
"""

from __future__ import annotations

import json
import math
import re

import numpy as np

from .budget import ComputationResult, OptBudget
from .errors import DocumentParseError, SpecValidationError
from .extraction import AlphaIdentityReport, ProbeReport
from .gind import ChainReport
from .matrix_norms import (
    EntrywiseMax,
    EntrywiseSum,
    GInd,
    MaxColSum,
    MaxRowSum,
    Spectral,
)
from .vector_norms import (
    DominanceReport,
    Extracted,
    Lp,
    MaxOf,
    Scaled,
    WeightedLp,
)
from .verification import SuiteReport

SCHEMA_VERSION = 1


# --- norm-spec documents ---------------------------------------------------

def _p_to_doc(p: float):
    return "inf" if p == math.inf else p


def _p_from_doc(value, locus: str) -> float:
    if isinstance(value, str):
        if value.lower() in ("inf", "infinity"):
            return math.inf
        raise DocumentParseError(f"cannot read lp exponent {value!r}", locus)
    if isinstance(value, (int, float)):
        return float(value)
    raise DocumentParseError(f"cannot read lp exponent {value!r}", locus)


def norm_spec_to_doc(spec) -> dict:
    """Encode a vector or matrix norm descriptor as a tagged tree."""
    if isinstance(spec, Lp):
        return {"kind": "lp", "p": _p_to_doc(spec.p)}
    if isinstance(spec, WeightedLp):
        return {"kind": "weighted-lp", "weights": list(spec.weights), "p": _p_to_doc(spec.p)}
    if isinstance(spec, Scaled):
        return {"kind": "scaled", "gamma": spec.gamma, "inner": norm_spec_to_doc(spec.inner)}
    if isinstance(spec, MaxOf):
        return {"kind": "maxof", "inner": [norm_spec_to_doc(p) for p in spec.parts]}
    if isinstance(spec, EntrywiseSum):
        return {"kind": "sigma"}
    if isinstance(spec, EntrywiseMax):
        return {"kind": "entrywise-max"}
    if isinstance(spec, MaxColSum):
        return {"kind": "maxcolsum"}
    if isinstance(spec, MaxRowSum):
        return {"kind": "maxrowsum"}
    if isinstance(spec, Spectral):
        return {"kind": "spectral"}
    if isinstance(spec, GInd):
        return {
            "kind": "gind",
            "norm1": norm_spec_to_doc(spec.norm1),
            "norm2": norm_spec_to_doc(spec.norm2),
        }
    if isinstance(spec, Extracted):
        return {
            "kind": "extracted",
            "role": spec.role,
            "source": norm_spec_to_doc(spec.source),
            "budget": budget_to_doc(spec.budget),
        }
    raise DocumentParseError(f"cannot encode norm descriptor {spec!r}")


def _require(doc: dict, field: str, locus: str):
    if field not in doc:
        raise DocumentParseError(f"missing field {field!r}", locus)
    return doc[field]


def norm_spec_from_doc(doc, locus: str = "$"):
    """Decode a tagged tree into a norm descriptor, validating as it goes."""
    if not isinstance(doc, dict):
        raise DocumentParseError(f"expected an object, got {type(doc).__name__}", locus)
    kind = _require(doc, "kind", locus)
    try:
        if kind == "lp":
            return Lp(_p_from_doc(_require(doc, "p", locus), f"{locus}.p"))
        if kind == "weighted-lp":
            weights = _require(doc, "weights", locus)
            if not isinstance(weights, list):
                raise DocumentParseError("weights must be a list", f"{locus}.weights")
            return WeightedLp(
                tuple(float(w) for w in weights),
                _p_from_doc(_require(doc, "p", locus), f"{locus}.p"),
            )
        if kind == "scaled":
            return Scaled(
                float(_require(doc, "gamma", locus)),
                norm_spec_from_doc(_require(doc, "inner", locus), f"{locus}.inner"),
            )
        if kind == "maxof":
            inner = _require(doc, "inner", locus)
            if not isinstance(inner, list) or not inner:
                raise DocumentParseError("maxof needs a nonempty list", f"{locus}.inner")
            return MaxOf(
                tuple(
                    norm_spec_from_doc(part, f"{locus}.inner[{i}]")
                    for i, part in enumerate(inner)
                )
            )
        if kind == "sigma":
            return EntrywiseSum()
        if kind == "entrywise-max":
            return EntrywiseMax()
        if kind == "maxcolsum":
            return MaxColSum()
        if kind == "maxrowsum":
            return MaxRowSum()
        if kind == "spectral":
            return Spectral()
        if kind == "gind":
            return GInd(
                norm_spec_from_doc(_require(doc, "norm1", locus), f"{locus}.norm1"),
                norm_spec_from_doc(_require(doc, "norm2", locus), f"{locus}.norm2"),
            )
        if kind == "extracted":
            return Extracted(
                int(_require(doc, "role", locus)),
                norm_spec_from_doc(_require(doc, "source", locus), f"{locus}.source"),
                budget_from_doc(_require(doc, "budget", locus), f"{locus}.budget"),
            )
    except SpecValidationError as exc:
        raise DocumentParseError(str(exc), locus) from exc
    raise DocumentParseError(f"unknown norm kind {kind!r}", locus)


def parse_norm_spec(text: str):
    """Parse a JSON norm-spec document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"invalid JSON: {exc}") from exc
    return norm_spec_from_doc(doc)


def print_norm_spec(spec) -> str:
    return json.dumps(norm_spec_to_doc(spec), sort_keys=True)


def budget_to_doc(budget: OptBudget) -> dict:
    return {
        "multistarts": budget.multistarts,
        "max_iters": budget.max_iters,
        "samples": budget.samples,
        "step_init": budget.step_init,
        "tol": budget.tol,
        "seed": budget.seed,
    }


def budget_from_doc(doc, locus: str = "$") -> OptBudget:
    if not isinstance(doc, dict):
        raise DocumentParseError("budget must be an object", locus)
    try:
        return OptBudget(
            multistarts=int(_require(doc, "multistarts", locus)),
            max_iters=int(_require(doc, "max_iters", locus)),
            samples=int(_require(doc, "samples", locus)),
            step_init=float(_require(doc, "step_init", locus)),
            tol=float(_require(doc, "tol", locus)),
            seed=int(_require(doc, "seed", locus)),
        )
    except SpecValidationError as exc:
        raise DocumentParseError(str(exc), locus) from exc


# --- matrix documents ------------------------------------------------------

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_RE_REAL = re.compile(rf"^[+-]?{_NUM}$")
_RE_IMAG = re.compile(rf"^([+-]?)({_NUM})?i$")
_RE_BOTH = re.compile(rf"^([+-]?{_NUM})([+-])({_NUM})?i$")


def parse_complex_literal(text: str, locus: str = "literal") -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` with IEEE-exact floats."""
    s = text.strip()
    if not s:
        raise DocumentParseError("empty cell", locus)
    if _RE_REAL.match(s):
        return complex(float(s), 0.0)
    m = _RE_IMAG.match(s)
    if m:
        sign, mag = m.groups()
        value = float(mag) if mag is not None else 1.0
        return complex(0.0, -value if sign == "-" else value)
    m = _RE_BOTH.match(s)
    if m:
        real, sign, mag = m.groups()
        value = float(mag) if mag is not None else 1.0
        return complex(float(real), -value if sign == "-" else value)
    raise DocumentParseError(f"malformed complex literal {text!r}", locus)


def matrix_from_csv(text: str) -> np.ndarray:
    """Parse a CSV of complex literals into a square matrix."""
    rows: list[list[complex]] = []
    for i, line in enumerate(text.splitlines()):
        if not line.strip():
            continue
        cells = line.split(",")
        rows.append(
            [
                parse_complex_literal(cell, f"row {i + 1}, column {j + 1}")
                for j, cell in enumerate(cells)
            ]
        )
    if not rows:
        raise DocumentParseError("matrix document is empty")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DocumentParseError(
                f"ragged row: expected {width} cells, got {len(row)}", f"row {i + 1}"
            )
    if len(rows) != width:
        raise DocumentParseError(f"matrix must be square, got {len(rows)}x{width}")
    return np.asarray(rows, dtype=np.complex128)


def _cell_from_doc(cell, locus: str) -> complex:
    if isinstance(cell, (int, float)):
        return complex(float(cell), 0.0)
    if isinstance(cell, dict):
        re_part = cell.get("re", 0.0)
        im_part = cell.get("im", 0.0)
        if not isinstance(re_part, (int, float)) or not isinstance(im_part, (int, float)):
            raise DocumentParseError("cell parts must be numbers", locus)
        return complex(float(re_part), float(im_part))
    raise DocumentParseError(f"cannot read matrix cell {cell!r}", locus)


def matrix_from_doc(doc, locus: str = "$") -> np.ndarray:
    if not isinstance(doc, dict) or "rows" not in doc:
        raise DocumentParseError("matrix document needs a 'rows' field", locus)
    rows = doc["rows"]
    if not isinstance(rows, list) or not rows:
        raise DocumentParseError("'rows' must be a nonempty list", f"{locus}.rows")
    parsed = []
    width = None
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise DocumentParseError("row must be a list", f"{locus}.rows[{i}]")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise DocumentParseError(
                f"ragged row: expected {width} cells, got {len(row)}",
                f"{locus}.rows[{i}]",
            )
        parsed.append(
            [_cell_from_doc(c, f"{locus}.rows[{i}][{j}]") for j, c in enumerate(row)]
        )
    if len(parsed) != width:
        raise DocumentParseError(f"matrix must be square, got {len(parsed)}x{width}", locus)
    return np.asarray(parsed, dtype=np.complex128)


def load_matrix_text(text: str) -> np.ndarray:
    """Sniff JSON vs CSV and parse accordingly."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentParseError(f"invalid JSON: {exc}") from exc
        return matrix_from_doc(doc)
    return matrix_from_csv(text)


def load_matrix(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return load_matrix_text(fh.read())


# --- report documents ------------------------------------------------------

def complex_to_doc(z: complex) -> dict:
    return {"im": float(np.imag(z)), "re": float(np.real(z))}


def array_to_doc(arr) -> dict:
    a = np.asarray(arr)
    if a.ndim == 1:
        return {"entries": [complex_to_doc(z) for z in a]}
    if a.ndim == 2:
        return {"rows": [[complex_to_doc(z) for z in row] for row in a]}
    raise DocumentParseError(f"cannot encode array of rank {a.ndim}")


def _witness_to_doc(witness):
    if witness is None:
        return None
    if isinstance(witness, list):
        return [array_to_doc(w) for w in witness if w is not None]
    return array_to_doc(witness)


def suite_report_to_doc(report: SuiteReport, header: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "suite-report",
        "suite_name": report.suite_name,
        "seed": report.seed,
        "elapsed": report.elapsed,
        "passed": report.passed,
        "cases": [
            {
                "description": c.description,
                "status": c.status,
                "values": {k: float(v) for k, v in sorted(c.values.items())},
                "witness": _witness_to_doc(c.witness),
            }
            for c in report.cases
        ],
    }
    if header:
        doc["settings"] = header
    return doc


def computation_to_doc(result: ComputationResult, header: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "computation",
        "value": float(result.value),
        "exactness": result.exactness,
        "evaluations": int(result.evaluations),
        "witness": _witness_to_doc(result.witness),
    }
    if header:
        doc["settings"] = header
    return doc


def probe_to_doc(report: ProbeReport, header: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "minimality-probe",
        "max_gap_ratio": float(report.max_gap_ratio),
        "trials": int(report.trials),
        "verdict": report.verdict,
        "witness": _witness_to_doc(report.witness),
    }
    if header:
        doc["settings"] = header
    return doc


def chain_to_doc(report: ChainReport, header: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "chain-report",
        "v21": report.v21,
        "v11": report.v11,
        "v22": report.v22,
        "v12": report.v12,
        "chain_holds": report.chain_holds,
        "slack": report.slack,
    }
    if header:
        doc["settings"] = header
    return doc


def dominance_to_doc(report: DominanceReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "dominance-report",
        "dominated": report.dominated,
        "max_ratio": report.max_ratio,
        "samples_used": report.samples_used,
        "counterexample": _witness_to_doc(report.counterexample),
    }


def alpha_to_doc(report: AlphaIdentityReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "alpha-identity",
        "lhs": report.lhs,
        "rhs": report.rhs,
        "holds": report.holds,
    }


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
