"""Canonical JSON documents for invariant records and graph lists.

Record schema::

    {"group": {"orders": [n1, ...]},
     "linking": [["a/b", ...], ...],            # torsion generators only
     "quadratic": {"0110": ["a/b", ...], ...},  # one bit per even/free generator
     "cup": {"0": {"0,1,2": 1}, "2": {...}},    # i <= j <= k, zero entries omitted
     "rochlin": {"0110": 8, ...},
     "moduli": [0, 2, ...]}

Graph files hold ``[{"sign": 1, "leaves": [[h, [c, slope...]], ...x3]}, ...]``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .fgab import FgAbelianGroup
from .invariants import InvariantRecord, LinkingPairing, qz
from .spinspace import AffineFn, ConstraintViolation, PElement, SpinSpace
from .surgery import FormalYGraph


class DocumentError(ValueError):
    """A document does not follow the schema."""


def format_fraction(x: Fraction) -> str:
    x = qz(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    if not isinstance(s, str):
        raise DocumentError(f"expected a fraction string 'a/b', got {s!r}")
    try:
        return qz(Fraction(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad fraction {s!r}") from exc


def spin_key(sigma) -> str:
    return "".join(str(b) for b in sigma)


def _parse_spin(key: str, dim: int) -> tuple[int, ...]:
    if len(key) != dim or any(c not in "01" for c in key):
        raise DocumentError(f"spin index {key!r} is not a bitstring of length {dim}")
    return tuple(int(c) for c in key)


def record_to_dict(r: InvariantRecord) -> dict:
    spin = r.spin
    return {
        "group": {"orders": list(r.group.orders)},
        "linking": [[format_fraction(v) for v in row] for row in r.linking.matrix],
        "quadratic": {spin_key(s): [format_fraction(v) for v in r.quadratic[s]] for s in spin.points() if s in r.quadratic},
        "cup": {
            str(n): {",".join(map(str, t)): v for t, v in sorted(r.cup[n].items())}
            for n in r.moduli
        },
        "rochlin": {spin_key(s): r.rochlin[s] for s in spin.points() if s in r.rochlin},
        "moduli": list(r.moduli),
    }


def dumps_record(r: InvariantRecord) -> str:
    return json.dumps(record_to_dict(r), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise DocumentError(f"{what} must be an integer, got {v!r}")
    return v


def record_from_dict(doc: dict) -> InvariantRecord:
    try:
        orders = [_int(n, "order") for n in doc["group"]["orders"]]
        if any(n < 0 or n == 1 for n in orders):
            raise DocumentError("orders must be 0 or >= 2")
        H = FgAbelianGroup(orders)
        spin = SpinSpace(H)
        linking = LinkingPairing(H, [[parse_fraction(v) for v in row] for row in doc["linking"]])
        quadratic = {_parse_spin(k, spin.dim): tuple(parse_fraction(v) for v in vals) for k, vals in doc["quadratic"].items()}
        rochlin = {_parse_spin(k, spin.dim): _int(v, "Rochlin value") for k, v in doc["rochlin"].items()}
        moduli = tuple(_int(n, "modulus") for n in doc["moduli"])
        cup = {}
        for key, table in doc.get("cup", {}).items():
            n = int(key)
            entries = {}
            for tk, v in table.items():
                t = tuple(int(i) for i in tk.split(","))
                if len(t) != 3:
                    raise DocumentError(f"cup key {tk!r} is not a triple")
                entries[t] = _int(v, "cup value")
            cup[n] = entries
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DocumentError(f"malformed record: {exc}") from exc
    return InvariantRecord(H, linking, quadratic, cup, rochlin, moduli)


def loads_record(text: str) -> InvariantRecord:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("a record document is a JSON object")
    return record_from_dict(doc)


def load_record(path: str | Path) -> InvariantRecord:
    return loads_record(Path(path).read_text(encoding="utf-8"))


def graph_to_dict(g: FormalYGraph) -> dict:
    return {
        "sign": g.sign,
        "leaves": [[list(p.x.coeffs), [p.f.const, *p.f.slope]] for p in g.leaves],
    }


def graphs_from_list(doc, space: SpinSpace) -> list[FormalYGraph]:
    if not isinstance(doc, list):
        raise DocumentError("a graph document is a JSON list")
    out = []
    H = space.homology
    for k, item in enumerate(doc):
        try:
            sign = _int(item["sign"], "sign")
            leaves = []
            for h, fn in item["leaves"]:
                x = H.element([_int(c, "leaf coefficient") for c in h])
                f = AffineFn(space, _int(fn[0], "constant"), [_int(c, "slope") for c in fn[1:]])
                leaves.append(PElement(x, f))
            out.append(FormalYGraph(leaves, sign))
        except ConstraintViolation as exc:
            raise DocumentError(f"graph {k}: leaf violates the pull-back constraint: {exc}") from exc
        except DocumentError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"graph {k}: {exc}") from exc
    return out


def load_graphs(path: str | Path, space: SpinSpace) -> list[FormalYGraph]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return graphs_from_list(doc, space)
