"""Versioned JSON documents for series, weights and reports.

Every document carries ``"schema": "carlitz-forms/1"`` and a ``"type"`` tag.
Keys are emitted in sorted order with fixed separators, so a document is a
deterministic function of its content.  Field elements and polynomials use
the canonical text forms of :mod:`carlitz_forms.algebra.text`.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import KVector, PolyA, format_ratk, make_ctx, parse_poly, parse_ratk
from .errors import DomainError, ParseError
from .useries import USeriesK

SCHEMA = "carlitz-forms/1"


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True)


def loads(text: str) -> dict:
    """Parse JSON text; syntax errors become ParseError with the character offset."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.pos) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", 0)
    if doc.get("schema") != SCHEMA:
        raise ParseError(f"unknown schema {doc.get('schema')!r}", 0)
    return doc


def document(kind: str, **fields) -> dict:
    return {"schema": SCHEMA, "type": kind, **fields}


def field_doc(ctx) -> dict:
    return {"p": ctx.p, "m0": ctx.m0, "modulus": list(ctx.modulus)}


def field_from_doc(doc) -> object:
    try:
        return make_ctx(int(doc["p"]), int(doc["m0"]), tuple(int(c) for c in doc["modulus"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad field description: {exc}", 0) from None


def _require(doc: dict, kind: str, keys):
    if doc.get("type") != kind:
        raise ParseError(f"expected a {kind!r} document, found {doc.get('type')!r}", 0)
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ParseError(f"{kind} document lacks {', '.join(missing)}", 0)


# u-series


def useries_doc(f: USeriesK, **extra) -> dict:
    return document(
        "useries",
        field=field_doc(f.ctx),
        trunc=f.trunc,
        coefficients=[format_ratk(c) for c in f.coefficients()],
        **extra,
    )


def useries_from_doc(doc: dict) -> USeriesK:
    _require(doc, "useries", ("field", "trunc", "coefficients"))
    ctx = field_from_doc(doc["field"])
    coeffs = doc["coefficients"]
    if not isinstance(coeffs, list) or len(coeffs) != doc["trunc"]:
        raise ParseError("coefficient list does not match trunc", 0)
    vals = []
    for i, text in enumerate(coeffs):
        try:
            vals.append(parse_ratk(ctx, text))
        except ParseError as exc:
            raise ParseError(f"coefficient {i}: {exc}", exc.position) from None
    return USeriesK(KVector.from_elements(ctx, vals))


# v-adic series and weights


def vseries_doc(f, **extra) -> dict:
    vctx = f.vctx
    return document(
        "vseries",
        field=field_doc(vctx.ctx),
        v=str(vctx.v),
        M=vctx.M,
        T=vctx.T,
        shift=f.shift,
        trunc=f.trunc,
        residues=[str(f.residue(j)) for j in range(f.trunc)],
        **extra,
    )


def vseries_from_doc(doc: dict):
    from .vadic import VContext, VSeries

    _require(doc, "vseries", ("field", "v", "M", "T", "shift", "trunc", "residues"))
    ctx = field_from_doc(doc["field"])
    v = parse_poly(ctx, doc["v"])
    vctx = VContext(v, int(doc["M"]), int(doc["T"]))
    res = doc["residues"]
    if not isinstance(res, list) or len(res) != doc["trunc"]:
        raise ParseError("residue list does not match trunc", 0)
    polys = [parse_poly(ctx, r) for r in res]
    width = max([p.c.size for p in polys] + [0])
    mat = np.zeros((len(polys), width), dtype=np.int64)
    for j, p in enumerate(polys):
        if p.degree >= vctx.modulus.degree:
            raise ParseError(f"residue {j} is not reduced mod p_v^M", 0)
        mat[j, : p.c.size] = p.c
    return VSeries(vctx, int(doc["shift"]), mat)


def poly_list(polys) -> list[str]:
    return [str(a) for a in polys]


def from_text(text: str):
    """Deserialize a series document into a USeriesK or VSeries."""
    doc = loads(text)
    kind = doc.get("type")
    if kind == "useries":
        return useries_from_doc(doc)
    if kind == "vseries":
        return vseries_from_doc(doc)
    raise ParseError(f"cannot rebuild an object from a {kind!r} document", 0)


def to_text(obj, **extra) -> str:
    from .vadic import VSeries

    if isinstance(obj, USeriesK):
        return dumps(useries_doc(obj, **extra))
    if isinstance(obj, VSeries):
        return dumps(vseries_doc(obj, **extra))
    raise DomainError(f"no document type for {type(obj).__name__}")


def parse_element(ctx, text: str) -> PolyA:
    """A polynomial from the command line, accepting ``theta`` as an alias of T."""
    return parse_poly(ctx, text.replace("theta", "T"))
