"""Run every registered check and write a JSON-lines report plus a per-scope tally."""

from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path

from hk4verify.checks import SCOPES, Options, run


@dataclass
class Config:
    seed: int = 0
    box: int = 3
    truncation: int = 6
    out: Path = Path("results/checks.jsonl")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(Config()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    opts = Options(seed=cfg.seed, box=cfg.box, truncation=cfg.truncation)
    tally: Counter = Counter()
    with cfg.out.open("w", encoding="utf-8") as fh:
        for scope in SCOPES:
            t0 = time.perf_counter()
            records = run(scope, opts)
            dt = time.perf_counter() - t0
            for r in records:
                fh.write(json.dumps({"scope": scope, **r.as_dict()}, sort_keys=True) + "\n")
                tally[(scope, r.status)] += 1
            print(f"{scope:10s} {tally[(scope, 'pass')]:3d} pass {tally[(scope, 'fail')]:3d} fail  {dt:6.2f}s")
    print(f"report: {cfg.out}")
    return 1 if any(s == "fail" for _, s in tally) else 0


if __name__ == "__main__":
    raise SystemExit(main())
