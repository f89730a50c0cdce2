"""Check the quiver-with-potential presentation in the engine at every eligible vertex."""

from __future__ import annotations

import argparse
from collections import Counter

from vortex_braid.duality import verify_cbr_relators
from vortex_braid.exchange import enumerate_graph
from vortex_braid.quiver import quiver_of
from vortex_braid.surface import MarkedSurfaceSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--disks", type=int, nargs="+", default=[5, 6, 7])
    ap.add_argument("--punctured", type=int, nargs="+", default=[3, 4, 5])
    args = ap.parse_args()
    specs = [MarkedSurfaceSpec.disk(m) for m in args.disks] + [MarkedSurfaceSpec.disk(m, 1) for m in args.punctured]
    for spec in specs:
        stats = Counter()
        for t in enumerate_graph(spec).vertices.values():
            if quiver_of(t).has_double_arrows():
                stats["double arrow"] += 1
            elif spec.puncture_count and not t.base.self_folded():
                stats["no folded triangle"] += 1
            else:
                stats["pass" if verify_cbr_relators(t).ok else "fail"] += 1
        print(f"p={spec.puncture_count} m={spec.marked_count}: {dict(stats)}")


if __name__ == "__main__":
    main()
