"""
symloops JSON documents
Every document starts with "schema": "symloops/<kind>@1"; keys are emitted in
a fixed order so identical inputs give byte-identical output.
"""

import json
import sys

from .arith import PolynomialRing, parse_ring
from .chevalley import GroupMatrix, RootA
from .errors import InputFormatError
from .loops import PathMatrix
from .simplicial import SimplexMatrix, SimplexPoly
from .steinberg import Letter, SteinbergWord

SCHEMA_VERSION = 1


def schema(kind):
    return f"symloops/{kind}@{SCHEMA_VERSION}"


def dumps(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False)


def loads(text, source="input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"{source} is not valid JSON: {e}")


def load_document(path):
    """Read a JSON document from a file path, '-' meaning stdin"""
    if path == "-":
        return loads(sys.stdin.read(), "stdin")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return loads(f.read(), path)
    except OSError as e:
        raise InputFormatError(f"cannot read {path}: {e}")


def _field(doc, key, kind):
    if not isinstance(doc, dict) or key not in doc:
        raise InputFormatError(f"{kind} document is missing {key!r}")
    return doc[key]


def _check_schema(doc, *kinds):
    tag = doc.get("schema") if isinstance(doc, dict) else None
    if tag is not None and tag not in [schema(k) for k in kinds]:
        raise InputFormatError(f"expected a {' or '.join(kinds)} document, got schema {tag!r}")


def _int(value, what):
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise InputFormatError(f"{what} must be an integer, got {value!r}")


def _ring(doc, kind):
    return parse_ring(_field(doc, "ring", kind))


def _entries(ring, rows, n, kind):
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise InputFormatError(f"{kind} entries must be an {n}x{n} list of lists")
    return [[ring.from_json(x) for x in row] for row in rows]


def encode_entries(matrix):
    return [[matrix.ring.to_json(x) for x in row] for row in matrix.entries]


# matrices ------------------------------------------------------------------

def encode_matrix(m):
    return {"schema": schema("matrix"), "n": m.n, "ring": m.ring.descriptor, "entries": encode_entries(m)}


def decode_matrix(doc):
    _check_schema(doc, "matrix", "path")
    ring = _ring(doc, "matrix")
    n = _int(_field(doc, "n", "matrix"), "matrix size n")
    return GroupMatrix(ring, _entries(ring, _field(doc, "entries", "matrix"), n, "matrix"))


def decode_generators(doc):
    """A list of matrix documents, bare or under "generators" """
    if isinstance(doc, dict):
        _check_schema(doc, "generators")
        doc = _field(doc, "generators", "generators")
    if not isinstance(doc, list) or not doc:
        raise InputFormatError("expected a non-empty list of matrix documents")
    return [decode_matrix(g) for g in doc]


# paths ---------------------------------------------------------------------

def encode_path(p):
    return {
        "schema": schema("path"),
        "n": p.n,
        "ring": p.ring.descriptor,
        "entries": encode_entries(p.matrix),
    }


def decode_path(doc):
    _check_schema(doc, "path", "matrix")
    ring = _ring(doc, "path")
    if not isinstance(ring, PolynomialRing) or not ring.is_univariate:
        raise InputFormatError(f"a path document needs a ring poly:<field>:T, got {ring.descriptor}")
    n = _int(_field(doc, "n", "path"), "path size n")
    return PathMatrix(GroupMatrix(ring, _entries(ring, _field(doc, "entries", "path"), n, "path")))


# words ---------------------------------------------------------------------

def encode_word(w):
    return {
        "schema": schema("word"),
        "n": w.n,
        "ring": w.ring.descriptor,
        "letters": [[l.root.i, l.root.j, w.ring.to_json(l.param), l.sign] for l in w.letters],
        "flags": w.flags,
    }


def decode_word(doc):
    _check_schema(doc, "word")
    ring = _ring(doc, "word")
    n = _int(_field(doc, "n", "word"), "word size n")
    letters = []
    items = _field(doc, "letters", "word")
    if not isinstance(items, list):
        raise InputFormatError(f"word letters must be a list, got {items!r}")
    for item in items:
        if not isinstance(item, list) or len(item) not in (3, 4):
            raise InputFormatError(f"a letter is [i, j, param] or [i, j, param, sign], got {item!r}")
        sign = _int(item[3], "letter sign") if len(item) == 4 else 1
        if sign not in (1, -1):
            raise InputFormatError(f"letter sign must be 1 or -1, got {sign}")
        i, j = _int(item[0], "root index"), _int(item[1], "root index")
        letters.append(Letter(RootA(i, j), ring.from_json(item[2]), sign))
    return SteinbergWord(n, ring, letters)


def encode_factors(factors, n, ring):
    return {
        "schema": schema("factors"),
        "n": n,
        "ring": ring.descriptor,
        "count": len(factors),
        "factors": [[root.i, root.j, ring.to_json(a)] for root, a in factors],
    }


# simplices -----------------------------------------------------------------

def encode_simplex(s):
    return {
        "schema": schema("simplex"),
        "level": s.level,
        "n": s.n,
        "ring": s.matrix.ring.descriptor,
        "entries": encode_entries(s.matrix),
    }


def decode_simplex(doc):
    """A simplex document, or a path document read as a 1-simplex"""
    if isinstance(doc, dict) and doc.get("schema") == schema("path"):
        return SimplexMatrix.from_path(decode_path(doc))
    _check_schema(doc, "simplex")
    ring = _ring(doc, "simplex")
    n = _int(_field(doc, "n", "simplex"), "simplex size n")
    level = _int(_field(doc, "level", "simplex"), "simplex level")
    return SimplexMatrix(level, GroupMatrix(ring, _entries(ring, _field(doc, "entries", "simplex"), n, "simplex")))


def encode_simplex_poly(f):
    return {
        "schema": schema("simplex-poly"),
        "level": f.level,
        "ring": f.poly.ring.descriptor,
        "poly": f.poly.ring.to_json(f.poly),
    }


def decode_simplex_poly(doc):
    _check_schema(doc, "simplex-poly")
    ring = _ring(doc, "simplex-poly")
    level = _int(_field(doc, "level", "simplex-poly"), "simplex-poly level")
    return SimplexPoly(level, ring.from_json(_field(doc, "poly", "simplex-poly")))


# presentations -------------------------------------------------------------

def encode_presentation(p, extra=None):
    doc = {
        "schema": schema("presentation"),
        "generators": len(p.generators),
        "relations": p.relations.nrows,
        "invariant_factors": list(p.invariant_factors),
        "free_rank": p.free_rank,
    }
    doc.update(extra or {})
    doc["metadata"] = dict(p.metadata)
    return doc
