"""Circle reproduction: bound, derived certificates and sample motion plans.

Writes every artefact to ``--out`` (default ``runs/circle``) and prints a
JSON summary.  Usage: ``python scripts/reproduce_circle.py --b 1 --cmax 16``.
"""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from simplicial_complexity import io
from simplicial_complexity.catalog import CIRCLE_COORDS, circle
from simplicial_complexity.cover import (
    pad_certificate,
    refine_certificate,
    sc_upper_bound,
    transport_certificate,
    verify_certificate,
)
from simplicial_complexity.planner import Embedding, make_path, sample_path


@dataclass
class Config:
    b: int = 1
    cmax: int = 16
    pieces: int = 2
    seed: int = 0
    policy: str = "max"
    plans: int = 5
    samples: int = 101
    out: str = "runs/circle"


def parse_config() -> Config:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(Config):
        parser.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    return Config(**vars(parser.parse_args()))


def main(cfg: Config) -> dict:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    report = sc_upper_bound(circle(), b=cfg.b, c_max=cfg.cmax, max_pieces=cfg.pieces, seed=cfg.seed, policy=cfg.policy)
    summary = {"config": asdict(cfg), "status": report.status, "bound": report.bound, "c": report.c,
               "seconds": round(time.perf_counter() - start, 3), "stats": report.stats}
    if report.certificate is None:
        return summary
    cert = report.certificate
    derived = {
        "certificate": cert,
        "padded": pad_certificate(cert, cert.c + 2),
        "transported": transport_certificate(cert, "min" if cfg.policy == "max" else "max"),
        "refined": refine_certificate(cert),
    }
    summary["derived"] = {}
    for name, c in derived.items():
        text = io.write_certificate(c)
        (out / f"{name}.json").write_text(text)
        summary["derived"][name] = {"b": c.b, "c": c.c, "verified": bool(verify_certificate(io.read_certificate(text)))}

    emb = Embedding(2, CIRCLE_COORDS)
    (out / "embedding.json").write_text(io.write_embedding(circle(), emb))
    rng = random.Random(cfg.seed)
    edges = [(0, 1), (0, 2), (1, 2)]

    def point():
        a, b = edges[rng.randrange(3)]
        t = rng.random()
        return tuple((1 - t) * p + t * q for p, q in zip(CIRCLE_COORDS[a], CIRCLE_COORDS[b]))

    for k in range(cfg.plans):
        x, y = point(), point()
        path = make_path(cert, emb, x, y)
        (out / f"path_{k}.json").write_text(io.write_path(sample_path(path, cfg.samples)))
    (out / "summary.json").write_text(json.dumps(summary, indent=2, default=str) + "\n")
    return summary


if __name__ == "__main__":
    print(json.dumps(main(parse_config()), indent=2, default=str))
