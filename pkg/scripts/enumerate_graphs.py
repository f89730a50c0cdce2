"""Enumerate exchange graphs for small disks and print counts, timings and cycle statistics."""

from __future__ import annotations

import argparse
import time
from collections import Counter

from vortex_braid.exchange import CycleFailure, enumerate_graph, verify_groupoid_cycle
from vortex_braid.surface import MarkedSurfaceSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-marked", type=int, default=7)
    ap.add_argument("--punctures", type=int, nargs="+", default=[0, 1])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--cycles", action="store_true", help="also close every relation cycle")
    args = ap.parse_args()
    print("p  m  vertices  edges  seconds  irregular  cycles")
    for p in args.punctures:
        for m in range(2 if p else 4, args.max_marked + 1):
            spec = MarkedSurfaceSpec.disk(m, p)
            if spec.rank() < 1:
                continue
            t0 = time.perf_counter()
            g = enumerate_graph(spec, workers=args.workers)
            secs = time.perf_counter() - t0
            kinds = Counter()
            if args.cycles:
                for t in g.vertices.values():
                    labels = t.arc_labels()
                    for i, a in enumerate(labels):
                        for b in labels[i + 1:]:
                            try:
                                kinds[verify_groupoid_cycle(g, t, a, b).kind] += 1
                            except CycleFailure:
                                kinds["failed"] += 1
            print(f"{p}  {m}  {len(g.vertices):8d}  {len(g.edges):5d}  {secs:7.2f}  "
                  f"{len(g.regularity_exceptions()):9d}  {dict(kinds) if kinds else ''}")


if __name__ == "__main__":
    main()
