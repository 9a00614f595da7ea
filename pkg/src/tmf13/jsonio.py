"""JSON encoding of the package's exact objects (schema version 1).

Rationals are strings ``"p/q"``.  Other coefficients are tagged objects::

    {"type": "qlaurent", "low": -3, "trunc": 20, "coeffs": ["1", "0", "24", ...]}
    {"type": "gradedmf", "pole": 1, "terms": [{"a1": 3, "a3": 0, "c": "1"}]}
    {"type": "cyclo", "re": <qlaurent>, "im": <qlaurent>}

Series are ``{"vars", "bound", "ring", "terms": [{"exp": [...], "coeff": ...}]}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .charclasses import PontryaginPoly, TorusClass
from .gradedmf import GradedMF
from .series import CycloLaurent, MultiSeries, QLaurent

__all__ = [
    "SCHEMA",
    "encode_coeff",
    "decode_coeff",
    "encode_series",
    "decode_series",
    "encode_class",
    "decode_class",
    "encode_poly",
    "decode_poly",
    "encode_lift_report",
    "dumps",
    "load_json_arg",
]

SCHEMA = 1


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def encode_coeff(c):
    if isinstance(c, (int, Fraction)):
        return _frac(c)
    if isinstance(c, QLaurent):
        return {"type": "qlaurent", "low": c.low, "trunc": c.trunc, "coeffs": [_frac(x) for x in c.coeffs]}
    if isinstance(c, GradedMF):
        terms = [{"a1": a, "a3": b, "c": _frac(v)} for (a, b), v in sorted(c.terms.items())]
        return {"type": "gradedmf", "pole": c.pole, "terms": terms}
    if isinstance(c, CycloLaurent):
        return {"type": "cyclo", "re": encode_coeff(c.re), "im": encode_coeff(c.im)}
    raise TypeError(f"cannot encode {type(c).__name__}")


def decode_coeff(obj):
    if isinstance(obj, (str, int)):
        return Fraction(obj)
    kind = obj.get("type")
    if kind == "qlaurent":
        return QLaurent(int(obj["low"]), [Fraction(x) for x in obj["coeffs"]], int(obj["trunc"]))
    if kind == "gradedmf":
        return GradedMF({(t["a1"], t["a3"]): Fraction(t["c"]) for t in obj["terms"]}, int(obj["pole"]))
    if kind == "cyclo":
        return CycloLaurent(decode_coeff(obj["re"]), decode_coeff(obj["im"]))
    raise ValueError(f"unknown coefficient type {kind!r}")


def encode_series(s: MultiSeries) -> dict:
    terms = [{"exp": list(e), "coeff": encode_coeff(c)} for e, c in sorted(s.terms.items())]
    return {"vars": list(s.vars), "bound": s.bound, "ring": s.ring, "terms": terms}


def decode_series(obj: dict) -> MultiSeries:
    terms = {tuple(t["exp"]): decode_coeff(t["coeff"]) for t in obj["terms"]}
    return MultiSeries(tuple(obj["vars"]), int(obj["bound"]), terms, obj.get("ring", "rational"))


def encode_class(c: TorusClass) -> dict:
    return {"schema": SCHEMA, "kind": "torus_class", "theory": c.theory, "degree": c.degree,
            "series": encode_series(c.series)}


def _check_schema(obj: dict):
    if obj.get("schema", SCHEMA) != SCHEMA:
        raise ValueError(f"unsupported schema version {obj.get('schema')!r}")


def decode_class(obj: dict) -> TorusClass:
    _check_schema(obj)
    if obj.get("kind", "torus_class") != "torus_class":
        raise ValueError("expected a torus_class object")
    return TorusClass(decode_series(obj["series"]), obj["theory"], int(obj.get("degree", 0)))


def encode_poly(p: PontryaginPoly) -> dict:
    terms = [{"index": list(I), "coeff": encode_coeff(c)} for I, c in sorted(p.terms.items())]
    return {"schema": SCHEMA, "kind": "pontryagin_poly", "theory": p.theory, "terms": terms}


def decode_poly(obj: dict) -> PontryaginPoly:
    _check_schema(obj)
    return PontryaginPoly({tuple(t["index"]): decode_coeff(t["coeff"]) for t in obj["terms"]},
                          obj.get("theory", "tmf"))


def _plain(x):
    if isinstance(x, (Fraction, QLaurent, GradedMF, CycloLaurent)):
        return encode_coeff(x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    return x


def encode_lift_report(r) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "lift_report",
        "status": r.status,
        "liftable": r.liftable,
        "lift": encode_class(r.lift) if r.lift is not None else None,
        "witness": _plain(r.witness),
        "truncation": r.truncation,
        "full_rank": r.full_rank,
        "solves": r.solves,
    }


def dumps(obj) -> str:
    return json.dumps(_plain(obj), indent=2, sort_keys=True)


def load_json_arg(arg: str):
    """Parse a JSON string, or read it from a path."""
    text = arg.strip()
    if not text.startswith(("{", "[")):
        text = Path(arg).read_text()
    return json.loads(text)
