"""Sweep of the bound search over example complexes and subdivision levels.

Prints one JSON line per (complex, b) run.  Usage:
``python scripts/sweep_bounds.py --complexes circle,simplex2 --bmax 2``.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, fields

from simplicial_complexity.catalog import example
from simplicial_complexity.cover import sc_upper_bound


@dataclass
class Config:
    complexes: str = "point,interval,simplex2,circle"
    bmin: int = 0
    bmax: int = 1
    cmax: int = 8
    pieces: int = 4
    seed: int = 0
    budget: int = 200


def parse_config() -> Config:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(Config):
        parser.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    return Config(**vars(parser.parse_args()))


def main(cfg: Config) -> list[dict]:
    rows = []
    for name in cfg.complexes.split(","):
        K = example(name)
        for b in range(cfg.bmin, cfg.bmax + 1):
            start = time.perf_counter()
            report = sc_upper_bound(K, b=b, c_max=cfg.cmax, max_pieces=cfg.pieces, seed=cfg.seed, budget=cfg.budget)
            row = {
                "complex": name,
                "b": b,
                "status": report.status,
                "bound": report.bound,
                "c": report.c,
                "piece_sizes": report.stats.get("piece_sizes"),
                "chain_lengths": report.stats.get("chain_lengths"),
                "seconds": round(time.perf_counter() - start, 3),
            }
            print(json.dumps(row), flush=True)
            rows.append(row)
    return rows


if __name__ == "__main__":
    main(parse_config())
