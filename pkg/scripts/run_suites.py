"""Run every verification suite on a list of genus-0 surfaces and tabulate the outcome."""

from __future__ import annotations

import argparse
import time

from vortex_braid.cli import run_suites
from vortex_braid.surface import MarkedSurfaceSpec

DEFAULT = ["0,1,1,4", "0,1,2,3", "0,1,3,2", "0,1,2,4", "0,2,1,2:2"]


def parse(text: str) -> MarkedSurfaceSpec:
    g, b, p, ms = text.split(",")
    return MarkedSurfaceSpec(int(g), int(b), int(p), tuple(int(v) for v in ms.split(":")))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("surfaces", nargs="*", default=DEFAULT, help="g,b,p,m1:m2:..")
    args = ap.parse_args()
    for text in args.surfaces:
        spec = parse(text)
        t0 = time.perf_counter()
        reports = run_suites(spec, "all")
        secs = time.perf_counter() - t0
        for r in reports:
            tag = " advisory" if r.advisory else ""
            print(f"{text:10s} {r.suite:12s}{tag:9s} {r.counts()}  ({secs:.1f}s total)")
            for c in r.checks:
                if c.status == "fail":
                    print(f"{'':23s}fail: {c.name}")


if __name__ == "__main__":
    main()
