"""Time the 2-linkage to topological-minor reduction over the linkage corpus.

For every instance, compares the brute-force linkage verdict with the
anchored containment search on the reduced host and reports timings.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from digraph_width.dtm import is_dtm, solve_2_linkage
from digraph_width.generators import linkage_corpus


@dataclass
class ReductionSweepConfig:
    seed: int = 7
    max_dstar: int = 34


def run(cfg: ReductionSweepConfig) -> int:
    disagreements = 0
    print("kind\tn\tdstar\tlinkage\tdtm\tstatus\tms")
    for case in linkage_corpus(seed=cfg.seed, max_dstar=cfg.max_dstar):
        red = case.reduction
        expected = solve_2_linkage(case.instance) is not None
        t0 = time.perf_counter()
        res = is_dtm(red.pattern, red.dstar, anchors=red.anchors)
        ms = (time.perf_counter() - t0) * 1000
        disagreements += res.found != expected
        print(f"{case.kind}\t{len(case.instance.digraph.vertices)}\t{len(red.dstar.vertices)}\t"
              f"{str(expected).lower()}\t{str(res.found).lower()}\t{res.status}\t{ms:.1f}")
    print(f"# disagreements: {disagreements}")
    return 1 if disagreements else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=ReductionSweepConfig.seed)
    ap.add_argument("--max-dstar", type=int, default=ReductionSweepConfig.max_dstar)
    a = ap.parse_args()
    raise SystemExit(run(ReductionSweepConfig(a.seed, a.max_dstar)))
