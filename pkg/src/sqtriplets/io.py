"""Text formats for modules, free complexes and degree triplets.

Modules and complexes are JSON documents; rationals are written as strings
"p/q" or "p".  Writers emit a canonical layout so that write(read(text))
reproduces text exactly for anything a writer produced.
"""

from __future__ import annotations

import json
import re

from .degrees import all_degrees, degree_from_str, degree_from_vector, degree_str, degree_vector
from .exactcore import RatMatrix, format_rational, parse_rational
from .freecomplex import FreeSqComplex
from .sqmodule import InvalidModuleError, SqModule
from .triplets import DegreeTriplet, TripletError

__all__ = [
    "FormatError",
    "module_to_text",
    "module_from_text",
    "complex_to_text",
    "complex_from_text",
    "triplet_to_text",
    "triplet_from_text",
    "parse_int_list",
]


class FormatError(ValueError):
    pass


def _matrix_out(m: RatMatrix) -> list:
    return [[format_rational(x) for x in row] for row in m.data]


def _matrix_in(rows, shape) -> RatMatrix:
    try:
        data = [[parse_rational(x) for x in row] for row in rows]
    except (TypeError, ValueError, ZeroDivisionError) as err:
        raise FormatError(f"bad matrix entry: {err}") from None
    r, c = shape
    if len(data) != r or any(len(row) != c for row in data):
        raise FormatError(f"matrix should be {r}x{c}")
    return RatMatrix(r, c, data)


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise FormatError(f"not valid JSON: {err}") from None
    if not isinstance(doc, dict) or "n" not in doc:
        raise FormatError("document must be an object with field n")
    return doc


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def module_to_text(M: SqModule) -> str:
    if M.n > 9:
        raise FormatError("the module format names degrees by digit strings, so n <= 9")
    order = all_degrees(M.n)
    components = {degree_str(R): M.dims[R] for R in order if M.dims[R]}
    mult = {}
    for R in order:
        for v in range(1, M.n + 1):
            m = M.mult.get((v, R))
            if m is not None and not m.is_zero():
                mult[f"{v}@{degree_str(R)}"] = _matrix_out(m)
    return _dump({"n": M.n, "components": components, "mult": mult})


def module_from_text(text: str) -> SqModule:
    doc = _load(text)
    n = int(doc["n"])
    try:
        dims = {degree_from_str(k): int(v) for k, v in doc.get("components", {}).items()}
        mult = {}
        for key, rows in doc.get("mult", {}).items():
            v, _, R = key.partition("@")
            v, R = int(v), degree_from_str(R)
            bit = 1 << (v - 1)
            mult[(v, R)] = _matrix_in(rows, (dims.get(R | bit, 0), dims.get(R, 0)))
        return SqModule(n, dims, mult)
    except InvalidModuleError:
        raise
    except (ValueError, TypeError) as err:
        raise FormatError(str(err)) from None


def complex_to_text(F: FreeSqComplex) -> str:
    terms = [
        {"position": p, "generators": [degree_vector(g, F.n) for g in F.terms[p]]}
        for p in F.positions()
    ]
    diffs = [{"from": p, "entries": _matrix_out(F.diffs[p])} for p in sorted(F.diffs) if not F.diffs[p].is_zero()]
    return _dump({"n": F.n, "terms": terms, "diffs": diffs})


def complex_from_text(text: str) -> FreeSqComplex:
    doc = _load(text)
    n = int(doc["n"])
    try:
        terms = {}
        for t in doc.get("terms", []):
            gens = []
            for vec in t["generators"]:
                if len(vec) != n:
                    raise FormatError(f"generator {vec} does not have length {n}")
                gens.append(degree_from_vector(vec))
            terms[int(t["position"])] = gens
        diffs = {}
        for d in doc.get("diffs", []):
            p = int(d["from"])
            shape = (len(terms.get(p + 1, [])), len(terms.get(p, [])))
            diffs[p] = _matrix_in(d["entries"], shape)
        return FreeSqComplex(n, terms, diffs)
    except (KeyError, TypeError, ValueError) as err:
        raise FormatError(f"malformed complex document: {err}") from None


def parse_int_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise FormatError(f"expected comma separated integers, got {text!r}") from None


_TRIPLET = re.compile(r"^\s*n\s*=\s*(\d+)\s*;\s*A\s*=([^;]*);\s*B\s*=([^;]*);\s*C\s*=([^;]*?)\s*;?\s*$")


def triplet_to_text(T: DegreeTriplet) -> str:
    j = lambda S: ",".join(str(x) for x in S)  # noqa: E731
    return f"n={T.n}; A={j(T.A)}; B={j(T.B)}; C={j(T.C)}"


def triplet_from_text(text: str) -> DegreeTriplet:
    m = _TRIPLET.match(text)
    if not m:
        raise FormatError(f"expected 'n=..; A=..; B=..; C=..', got {text!r}")
    n = int(m.group(1))
    try:
        return DegreeTriplet(n, *(parse_int_list(m.group(k)) for k in (2, 3, 4)))
    except TripletError as err:
        raise FormatError(str(err)) from None
