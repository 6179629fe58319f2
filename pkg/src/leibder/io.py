"""JSON algebra files.

::

    {
      "dim": 4,
      "brackets": [
        {"i": 1, "j": 1, "out": [[3, "1"]]},
        {"i": 2, "j": 1, "out": [[3, "1"]]}
      ]
    }

Indices are 1-based, coefficients are ``"p/q"`` or integer strings, and
products that are not listed are zero.  :func:`emit_algebra` writes one
bracket record per line, sorted by ``(i, j)`` and then ``k``.
"""
import json

from .algebra import Algebra
from .linalg import format_scalar, parse_scalar


class AlgebraFormatError(ValueError):
    pass


def _index(value, n, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise AlgebraFormatError(f"{what} must be an integer, got {value!r}")
    if not 1 <= value <= n:
        raise AlgebraFormatError(f"{what}={value} outside 1..{n}")
    return value


def parse_algebra(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "dim" not in doc:
        raise AlgebraFormatError("document must be an object with a 'dim' field")
    n = doc["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise AlgebraFormatError(f"dim must be a non-negative integer, got {n!r}")
    records = doc.get("brackets", [])
    if not isinstance(records, list):
        raise AlgebraFormatError("'brackets' must be a list")
    products = {}
    for rec in records:
        if not isinstance(rec, dict) or not {"i", "j", "out"} <= rec.keys():
            raise AlgebraFormatError(f"bracket record needs i, j, out: {rec!r}")
        i = _index(rec["i"], n, "i")
        j = _index(rec["j"], n, "j")
        out = products.setdefault((i, j), {})
        if not isinstance(rec["out"], list):
            raise AlgebraFormatError(f"'out' must be a list in record {rec!r}")
        for term in rec["out"]:
            if not isinstance(term, list) or len(term) != 2:
                raise AlgebraFormatError(f"term must be [k, coeff], got {term!r}")
            k = _index(term[0], n, "k")
            coeff = term[1]
            if not isinstance(coeff, str):
                raise AlgebraFormatError(f"coefficient must be a string, got {coeff!r}")
            try:
                v = parse_scalar(coeff)
            except ValueError as exc:
                raise AlgebraFormatError(str(exc)) from None
            if v == 0:
                raise AlgebraFormatError(f"zero coefficient listed for ({i},{j},{k})")
            if k in out:
                raise AlgebraFormatError(f"duplicate term ({i},{j},{k})")
            out[k] = v
    return Algebra(n, products)


def emit_algebra(A):
    lines = []
    for (i, j), out in A.products():
        terms = ", ".join(f'[{k}, "{format_scalar(v)}"]' for k, v in out.items())
        lines.append(f'    {{"i": {i}, "j": {j}, "out": [{terms}]}}')
    if not lines:
        return f'{{\n  "dim": {A.n},\n  "brackets": []\n}}\n'
    body = ",\n".join(lines)
    return f'{{\n  "dim": {A.n},\n  "brackets": [\n{body}\n  ]\n}}\n'


def read_algebra(path):
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


def write_algebra(A, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_algebra(A))
