"""Fit the plane-swept cubic for seeded random nets and tabulate what comes out.

For each net: whether it has a base point, the dimension of the vertex space of
the fitted cubic, whether the cubic vanishes doubly along the quintic curve,
and how many distinct cubics appear overall.  Nets whose sampled planes do not
determine a unique cubic are reported as skipped.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import asdict, dataclass

from hk4verify import cubic4fold as c4


@dataclass
class Config:
    seed: int = 0
    nets: int = 12
    base_point_every: int = 3  # every k-th net is forced to have a base point
    coeff: int = 3


def random_net(rng: random.Random, cfg: Config, k: int) -> c4.NetOnQuinticRNC:
    if cfg.base_point_every and k % cfg.base_point_every == cfg.base_point_every - 1:
        return c4.NetOnQuinticRNC.base_point(rng.randint(-2, 2))
    while True:
        rows = [[rng.randint(-cfg.coeff, cfg.coeff) for _ in range(4)] for _ in range(3)]
        try:
            return c4.NetOnQuinticRNC(rows)
        except ValueError:
            continue


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", dest=name, type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)
    seen = []
    mismatches = 0
    print(f"{'net':>3}  {'base pts':>10}  {'vertex dim':>10}  {'double':>6}")
    for k in range(cfg.nets):
        net = random_net(rng, cfg, k)
        bp = c4.has_base_point(net)
        try:
            fit = c4.y_g_fit(net)
        except ValueError as exc:
            print(f"{k:3d}  skipped: {exc}")
            continue
        vdim = len(c4.vertex_space(fit.cubic))
        mismatches += (vdim > 0) != bool(bp)
        if not any(fit.cubic.is_proportional(s) for s in seen):
            seen.append(fit.cubic)
        print(f"{k:3d}  {str([str(b) for b in bp]):>10}  {vdim:>10}  {str(fit.doubly_vanishing):>6}")
    print(f"distinct cubics: {len(seen)}; cone/base-point mismatches: {mismatches}")
    return 0 if mismatches == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
