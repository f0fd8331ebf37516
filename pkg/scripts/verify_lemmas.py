"""Run every lemma oracle at full size and print one summary line each."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from clasper.lemmas import (
    verify_antisymmetry,
    verify_cubic,
    verify_d3,
    verify_slide,
    verify_square,
    verify_tri,
    verify_trivectors,
)


@dataclass
class LemmaConfig:
    trivector_bound: int = 64
    max_rank: int = 3
    square_cases: int = 200
    y_bound: int = 32
    d3_dim: int = 4
    seed: int = 0


def run(config: LemmaConfig) -> bool:
    reports = [
        verify_trivectors(config.trivector_bound, seed=config.seed),
        verify_cubic(config.max_rank),
        verify_tri(config.max_rank),
        verify_square(config.square_cases, seed=config.seed),
        verify_antisymmetry(config.y_bound),
        verify_slide(config.y_bound),
        verify_d3(config.d3_dim, seed=config.seed),
    ]
    for rep in reports:
        print(rep.summary())
    return all(rep.ok for rep in reports)


def main() -> int:
    defaults = LemmaConfig()
    p = argparse.ArgumentParser(description=__doc__)
    for name, value in vars(defaults).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=value)
    config = LemmaConfig(**vars(p.parse_args()))
    return 0 if run(config) else 1


if __name__ == "__main__":
    sys.exit(main())
