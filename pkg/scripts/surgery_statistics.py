"""How often a single random Y-surgery leaves the Y2-class of a random record.

For each homology shape, draws random records and random graphs, applies
the surgery and tallies the decider's verdicts and refutation reasons.
"""
from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass, field

from clasper.decide import InfiniteSearchSpace, decide
from clasper.fgab import FgAbelianGroup
from clasper.sampling import SamplingConfig, random_graph, random_record
from clasper.surgery import surgery_S


@dataclass
class StatsConfig:
    trials: int = 50
    seed: int = 0
    shapes: list[tuple[int, ...]] = field(default_factory=lambda: [(), (2,), (2, 2), (2, 4), (2, 2, 2), (0, 0, 0), (2, 0)])
    sampling: SamplingConfig = field(default_factory=SamplingConfig)


def run(config: StatsConfig) -> dict[tuple[int, ...], Counter]:
    rng = random.Random(config.seed)
    out = {}
    for orders in config.shapes:
        H = FgAbelianGroup(orders)
        tally: Counter = Counter()
        for _ in range(config.trials):
            r = random_record(rng, H, config.sampling)
            r2 = surgery_S(r, [random_graph(rng, r.spin, config.sampling.coeff_range)])
            try:
                d = decide(r, r2)
            except InfiniteSearchSpace:
                tally["unknown"] += 1
                continue
            tally["equivalent" if d.equivalent else d.reason] += 1
        out[orders] = tally
    return out


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    for orders, tally in run(StatsConfig(trials=args.trials, seed=args.seed)).items():
        parts = ", ".join(f"{k}: {v}" for k, v in sorted(tally.items()))
        print(f"H = {orders or '0'}: {parts}")


if __name__ == "__main__":
    main()
