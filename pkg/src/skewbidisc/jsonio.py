"""JSON encoding of the artifacts the CLI reads and writes.

Complex numbers travel as {"re": float, "im": float} objects; vectors and
matrices as (nested) arrays of those; points of C^2 as two-element arrays.
Decoding is strict: missing keys, wrong types, inconsistent shapes, and
non-finite numbers all raise ParseError with a message naming the offender.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .colligation import Colligation, SubspaceSplit
from .domains import Point2
from .errors import ParseError
from .synthesis import BidiscModelSpec, PolyVectorMap, ScalarPoly


def complex_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def complex_from_json(obj: Any, where: str) -> complex:
    if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
        raise ParseError(f"{where}: expected an object with keys 're' and 'im'")
    re, im = obj["re"], obj["im"]
    if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
        raise ParseError(f"{where}: 're' and 'im' must be numbers")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ParseError(f"{where}: non-finite component")
    return complex(re, im)


def vector_to_json(vec) -> list:
    return [complex_to_json(z) for z in np.asarray(vec, dtype=complex).reshape(-1)]


def vector_from_json(obj: Any, where: str) -> np.ndarray:
    if not isinstance(obj, list):
        raise ParseError(f"{where}: expected an array")
    return np.array(
        [complex_from_json(z, f"{where}[{i}]") for i, z in enumerate(obj)], dtype=complex
    )


def matrix_to_json(mat) -> list:
    return [vector_to_json(row) for row in np.asarray(mat, dtype=complex)]


def matrix_from_json(obj: Any, where: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{where}: expected a non-empty array of rows")
    rows = [vector_from_json(row, f"{where}[{i}]") for i, row in enumerate(obj)]
    lengths = {row.shape[0] for row in rows}
    if len(lengths) != 1:
        raise ParseError(f"{where}: ragged rows with lengths {sorted(lengths)}")
    return np.vstack(rows)


def _require(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    return obj[key]


def _real_number(obj: Any, where: str) -> float:
    if not isinstance(obj, (int, float)) or not math.isfinite(obj):
        raise ParseError(f"{where}: expected a finite number")
    return float(obj)


def _int_number(obj: Any, where: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise ParseError(f"{where}: expected an integer")
    return obj


def colligation_to_json(c: Colligation) -> dict:
    return {
        "r": c.r,
        "d1": c.split.d1,
        "a": complex_to_json(c.a),
        "beta": vector_to_json(c.beta),
        "gamma": vector_to_json(c.gamma),
        "D": matrix_to_json(c.D),
        "U": matrix_to_json(c.U),
    }


def colligation_from_json(obj: Any, where: str = "colligation") -> Colligation:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    r = _real_number(_require(obj, "r", where), f"{where}.r")
    if not 0.0 < r < 1.0:
        raise ParseError(f"{where}.r: must satisfy 0 < r < 1, got {r}")
    d1 = _int_number(_require(obj, "d1", where), f"{where}.d1")
    a = complex_from_json(_require(obj, "a", where), f"{where}.a")
    beta = vector_from_json(_require(obj, "beta", where), f"{where}.beta")
    gamma = vector_from_json(_require(obj, "gamma", where), f"{where}.gamma")
    d_mat = matrix_from_json(_require(obj, "D", where), f"{where}.D")
    u_mat = matrix_from_json(_require(obj, "U", where), f"{where}.U")
    total = beta.shape[0]
    d2 = total - d1
    if d1 < 0 or d2 < 0:
        raise ParseError(f"{where}: d1={d1} incompatible with vector length {total}")
    if gamma.shape[0] != total or d_mat.shape != (total, total) or u_mat.shape != (total, total):
        raise ParseError(
            f"{where}: inconsistent shapes (beta {total}, gamma {gamma.shape[0]}, "
            f"D {d_mat.shape}, U {u_mat.shape})"
        )
    try:
        split = SubspaceSplit(d1, d2)
        return Colligation(r=r, split=split, a=a, beta=beta, gamma=gamma, D=d_mat, U=u_mat)
    except Exception as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _poly_vector_from_json(obj: Any, dim: int, where: str) -> PolyVectorMap:
    if not isinstance(obj, list):
        raise ParseError(f"{where}: expected an array of terms")
    terms = []
    for i, term in enumerate(obj):
        if not isinstance(term, dict):
            raise ParseError(f"{where}[{i}]: expected an object")
        j = _int_number(_require(term, "j", f"{where}[{i}]"), f"{where}[{i}].j")
        k = _int_number(_require(term, "k", f"{where}[{i}]"), f"{where}[{i}].k")
        coeff = vector_from_json(_require(term, "coeff", f"{where}[{i}]"), f"{where}[{i}].coeff")
        terms.append(((j, k), coeff))
    try:
        return PolyVectorMap(dim=dim, terms=tuple(terms))
    except Exception as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _poly_vector_to_json(pm: PolyVectorMap) -> list:
    return [
        {"j": j, "k": k, "coeff": vector_to_json(coeff)} for (j, k), coeff in pm.terms
    ]


def _scalar_poly_from_json(obj: Any, where: str) -> ScalarPoly:
    if not isinstance(obj, list):
        raise ParseError(f"{where}: expected an array of terms")
    terms = []
    for i, term in enumerate(obj):
        if not isinstance(term, dict):
            raise ParseError(f"{where}[{i}]: expected an object")
        j = _int_number(_require(term, "j", f"{where}[{i}]"), f"{where}[{i}].j")
        k = _int_number(_require(term, "k", f"{where}[{i}]"), f"{where}[{i}].k")
        coeff = complex_from_json(_require(term, "coeff", f"{where}[{i}]"), f"{where}[{i}].coeff")
        terms.append(((j, k), coeff))
    try:
        return ScalarPoly(terms=tuple(terms))
    except Exception as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _scalar_poly_to_json(sp: ScalarPoly) -> list:
    return [
        {"j": j, "k": k, "coeff": complex_to_json(c)} for (j, k), c in sp.terms
    ]


def model_spec_to_json(spec: BidiscModelSpec) -> dict:
    return {
        "r": spec.r,
        "d1": spec.d1,
        "d2": spec.d2,
        "u1": _poly_vector_to_json(spec.u1),
        "u2": _poly_vector_to_json(spec.u2),
        "F": _scalar_poly_to_json(spec.F),
    }


def model_spec_from_json(obj: Any, where: str = "model spec") -> BidiscModelSpec:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    r = _real_number(_require(obj, "r", where), f"{where}.r")
    d1 = _int_number(_require(obj, "d1", where), f"{where}.d1")
    d2 = _int_number(_require(obj, "d2", where), f"{where}.d2")
    u1 = _poly_vector_from_json(_require(obj, "u1", where), d1, f"{where}.u1")
    u2 = _poly_vector_from_json(_require(obj, "u2", where), d2, f"{where}.u2")
    f_poly = _scalar_poly_from_json(_require(obj, "F", where), f"{where}.F")
    try:
        return BidiscModelSpec(r=r, d1=d1, d2=d2, u1=u1, u2=u2, F=f_poly)
    except Exception as exc:
        raise ParseError(f"{where}: {exc}") from exc


def points_to_json(pts) -> list:
    return [[complex_to_json(p[0]), complex_to_json(p[1])] for p in pts]


def points_from_json(obj: Any, where: str = "points") -> list[Point2]:
    if not isinstance(obj, list):
        raise ParseError(f"{where}: expected an array")
    out: list[Point2] = []
    for i, pair in enumerate(obj):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"{where}[{i}]: expected a two-element array")
        out.append(
            (
                complex_from_json(pair[0], f"{where}[{i}][0]"),
                complex_from_json(pair[1], f"{where}[{i}][1]"),
            )
        )
    return out


def load_json(path: str | Path, where: str = "input") -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{where}: cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: invalid JSON in {path}: {exc}") from exc


def dump_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
