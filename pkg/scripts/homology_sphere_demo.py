"""Homology spheres: the Rochlin invariant alone decides Y2-equivalence.

Builds the records of S^3 (bounding the 4-ball, R = 0) and of a sphere
bounding the E8 plumbing (R = signature mod 16 = 8), decides them, then
moves between the two classes by a single formal Y-surgery.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from clasper.decide import decide
from clasper.fgab import FgAbelianGroup
from clasper.invariants import InvariantRecord, LinkingPairing
from clasper.records import dumps_record
from clasper.spinspace import PElement
from clasper.surgery import FormalYGraph, apply_y_surgery

E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]


@dataclass
class DemoConfig:
    show_records: bool = False


def e8_signature() -> int:
    """Signature of the E8 form; it is positive definite, so count positive pivots."""
    a = [[Fraction(0)] * 8 for _ in range(8)]
    for i in range(8):
        a[i][i] = Fraction(2)
    for i, j in E8_EDGES:
        a[i][j] = a[j][i] = Fraction(-1)
    sig = 0
    for c in range(8):
        p = a[c][c]
        sig += 1 if p > 0 else -1
        for r in range(c + 1, 8):
            f = a[r][c] / p
            for k in range(c, 8):
                a[r][k] -= f * a[c][k]
    return sig


def sphere(R: int) -> InvariantRecord:
    H = FgAbelianGroup([])
    return InvariantRecord(H, LinkingPairing(H, []), {(): ()}, {}, {(): R})


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--show-records", action="store_true")
    config = DemoConfig(**vars(p.parse_args()))

    R = e8_signature() % 16
    s3, e8 = sphere(0), sphere(R)
    print(f"E8 signature mod 16: {R}")
    d = decide(s3, e8)
    print(f"S^3 vs E8 sphere: {'equivalent' if d.equivalent else 'not equivalent'} ({d.reason})")
    one = PElement(s3.group.zero(), s3.spin.one())
    moved = apply_y_surgery(s3, FormalYGraph([one] * 3))
    d = decide(moved, e8)
    print(f"S^3 after one Y-surgery vs E8 sphere: {'equivalent' if d.equivalent else 'not equivalent'}")
    if config.show_records:
        print(dumps_record(moved))


if __name__ == "__main__":
    main()
