"""Command line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
Errors are written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field

from .engine import PlanarModel, UnsupportedModelError
from .exchange import DEFAULT_VERTEX_LIMIT, VertexLimitExceeded, enumerate_graph, export as export_graph
from .homology import aj, aj_vortex, permutation_quotient
from .presentations import (
    UnsupportedParametersError,
    abelianization,
    bt_presentation_alternative,
    bt_presentation_punctured,
    bt_presentation_vortex,
    cbr_presentation_from_qp,
    export as export_presentation,
    weyl_quotient,
)
from .quiver import potential_of, quiver_of
from .surface import MarkedSurfaceSpec, SurfaceSpecError, h1_punctured, h1_vortex
from .triangulation import TriangulationError, UnsupportedSurfaceError, flip, from_json, normalize, seed_triangulation, to_json
from .verify import Report, commutator_formula_check, relator_braid, verify_epsilon_chains, verify_conjugation_formulas, \
    verify_corrected_vortex_relators, verify_vortex_relation

log = logging.getLogger("vortex_braid")

SUITES = ("presentation", "conjugation", "appendix", "vortex", "all")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    spec: str | None = None
    output: str | None = None
    fmt: str | None = None
    vertex_limit: int = DEFAULT_VERTEX_LIMIT
    threads: int = 1
    suite: str = "all"
    verbosity: int = 0
    extra: dict = field(default_factory=dict)


def _threads(value) -> int:
    if value is None:
        value = os.environ.get("VORTEX_BRAID_THREADS", "1")
    try:
        n = int(value)
    except ValueError:
        raise UsageError(f"thread count must be an integer, got {value!r}")
    if n < 1:
        raise UsageError("thread count must be at least 1")
    return n


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")


def _load_spec(path: str | None) -> MarkedSurfaceSpec:
    if not path:
        raise UsageError("--spec is required")
    return MarkedSurfaceSpec.from_json(_read(path))


def _emit(cfg: RunConfig, data) -> None:
    if isinstance(data, str):
        data = data.encode()
    if cfg.output:
        with open(cfg.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _json(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=1) + "\n").encode()


# subcommands


def cmd_surface(cfg: RunConfig, args) -> int:
    spec = _load_spec(cfg.spec)
    info = {
        "rank": spec.rank(),
        "decorations": spec.decoration_count(),
        "loops": spec.loop_count(),
        "h1_punctured": h1_punctured(spec).as_dict(),
        "h1_vortex": h1_vortex(spec).as_dict(),
    }
    if cfg.fmt == "json":
        _emit(cfg, _json(info))
    else:
        lines = [
            f"n={info['rank']}",
            f"aleph={info['decorations']}",
            f"H1 punctured: Z^{info['h1_punctured']['free_rank']}",
            f"H1 vortex: Z^{info['h1_vortex']['free_rank']}"
            + "".join(f" + Z/{d}" for d in info["h1_vortex"]["torsion"]),
        ]
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def _load_triangulation(args, spec_path):
    if getattr(args, "triangulation", None):
        return from_json(_read(args.triangulation))
    return seed_triangulation(_load_spec(spec_path))


def cmd_triangulate(cfg: RunConfig, args) -> int:
    t = seed_triangulation(_load_spec(cfg.spec))
    _emit(cfg, to_json(t) + "\n")
    return 0


def cmd_flip(cfg: RunConfig, args) -> int:
    t = _load_triangulation(args, cfg.spec)
    u = flip(t, args.arc)
    if args.normalize:
        u = normalize(u)
    _emit(cfg, to_json(u) + "\n")
    return 0


def cmd_exchange_graph(cfg: RunConfig, args) -> int:
    spec = _load_spec(cfg.spec)
    try:
        g = enumerate_graph(spec, vertex_limit=cfg.vertex_limit, workers=cfg.threads)
    except VertexLimitExceeded as exc:
        sys.stderr.write(json.dumps({"error": "VertexLimitExceeded", "message": str(exc)}) + "\n")
        _emit(cfg, export_graph(exc.partial, cfg.fmt or "json"))
        return 1
    log.info("%d vertices, %d edges", len(g.vertices), len(g.edges))
    _emit(cfg, export_graph(g, cfg.fmt or "json"))
    return 0


def cmd_quiver(cfg: RunConfig, args) -> int:
    t = _load_triangulation(args, cfg.spec)
    q, w = quiver_of(t), potential_of(t)
    _emit(cfg, q.to_json(w) + "\n")
    return 0


def _partition(text):
    if not text:
        return None
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"partition must be comma separated integers, got {text!r}")


def cmd_presentation(cfg: RunConfig, args) -> int:
    kind = args.kind
    if kind == "cbr":
        t = _load_triangulation(args, cfg.spec)
        p = cbr_presentation_from_qp(quiver_of(t), potential_of(t))
    else:
        spec = _load_spec(cfg.spec)
        if kind == "punctured":
            p = bt_presentation_punctured(spec)
        elif kind == "vortex":
            p = bt_presentation_vortex(spec)
        elif kind == "alt":
            p = bt_presentation_alternative(spec, _partition(args.partition))
        else:
            p = weyl_quotient(bt_presentation_vortex(spec))
    if args.abelianize:
        _emit(cfg, _json(abelianization(p).as_dict()))
    else:
        _emit(cfg, export_presentation(p, cfg.fmt or "text"))
    return 0


def run_suites(spec: MarkedSurfaceSpec, suite: str) -> list[Report]:
    model = PlanarModel(spec)
    reports = []
    chosen = SUITES[:-1] if suite == "all" else (suite,)
    if "presentation" in chosen:
        rep = Report("presentation", model.advisory)
        try:
            p = bt_presentation_punctured(spec)
        except UnsupportedParametersError as exc:
            rep.skip("presentation relators", str(exc))
        else:
            for tag, rel in zip(p.tags, p.relators):
                rep.trivial(f"{tag.kind}({','.join(tag.args)}) is the identity", relator_braid(model, rel, p.generators))
        verify_corrected_vortex_relators(model, rep)
        reports.append(rep)
    if "conjugation" in chosen:
        reports.append(verify_conjugation_formulas(model))
    if "appendix" in chosen:
        rep = verify_epsilon_chains(model)
        for s in range(1, model.loops + 1):
            for r in range(s + 1, model.loops + 1):
                rep.checks.append(commutator_formula_check(model, s, r))
        reports.append(rep)
    if "vortex" in chosen:
        rep = Report("vortex", model.advisory)
        for r in range(model.holes + 1, model.loops + 1):
            verify_vortex_relation(model, r, rep)
        reports.append(rep)
    return reports


def cmd_verify(cfg: RunConfig, args) -> int:
    spec = _load_spec(cfg.spec)
    reports = run_suites(spec, cfg.suite)
    ok = all(r.ok for r in reports)
    if args.report == "json":
        _emit(cfg, _json({"ok": ok, "reports": [r.as_dict() for r in reports]}))
    else:
        lines = []
        for r in reports:
            counts = ", ".join(f"{k} {v}" for k, v in sorted(r.counts().items()))
            lines.append(f"[{r.suite}]{' (advisory)' if r.advisory else ''} {counts}")
            for c in r.checks:
                if c.status != "pass":
                    lines.append(f"  {c.status}: {c.name}" + (f" ({c.detail})" if c.detail else ""))
        lines.append("ok" if ok else "FAILED")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_homology(cfg: RunConfig, args) -> int:
    spec = _load_spec(cfg.spec)
    out = {"h1_punctured": h1_punctured(spec).as_dict(), "h1_vortex": h1_vortex(spec).as_dict()}
    if args.word is not None:
        out["aj"] = list(aj(spec, args.word).values)
        out["aj_vortex"] = list(aj_vortex(spec, args.word).values)
        names = {f"s{i}": (i, i + 1) for i in range(1, spec.decoration_count())}
        names.update({f"t{r}": (1, 2) for r in range(1, spec.loop_count() + 1)})
        try:
            perm = permutation_quotient(args.word, names, spec.decoration_count())
            out["permutation"] = [v + 1 for v in perm]
        except KeyError:
            pass
    _emit(cfg, _json(out))
    return 0


COMMANDS = {
    "surface": cmd_surface,
    "triangulate": cmd_triangulate,
    "flip": cmd_flip,
    "exchange-graph": cmd_exchange_graph,
    "quiver": cmd_quiver,
    "presentation": cmd_presentation,
    "verify": cmd_verify,
    "homology": cmd_homology,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--spec")
    common.add_argument("--output", "-o")
    common.add_argument("--threads")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = _Parser(prog="vortex-braid", description="Decorated surfaces with vortices: triangulations, quivers, presentations.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    s = sub.add_parser("surface", parents=[common])
    s.add_argument("action", choices=["info"])
    s.add_argument("--format", choices=["text", "json"], default="text")
    sub.add_parser("triangulate", parents=[common])
    s = sub.add_parser("flip", parents=[common])
    s.add_argument("--triangulation")
    s.add_argument("--arc", type=int, required=True)
    s.add_argument("--normalize", action="store_true")
    s = sub.add_parser("exchange-graph", parents=[common])
    s.add_argument("--format", choices=["dot", "json"], default="json")
    s.add_argument("--vertex-limit", type=int, default=DEFAULT_VERTEX_LIMIT)
    s = sub.add_parser("quiver", parents=[common])
    s.add_argument("--triangulation")
    s = sub.add_parser("presentation", parents=[common])
    s.add_argument("--kind", choices=["punctured", "vortex", "alt", "cbr", "weyl"], required=True)
    s.add_argument("--partition")
    s.add_argument("--triangulation")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.add_argument("--abelianize", action="store_true")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--suite", choices=SUITES, default="all")
    s.add_argument("--report", choices=["text", "json"], default="text")
    s = sub.add_parser("homology", parents=[common])
    s.add_argument("--word", help="word such as \"e1 e2 e1'\"")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        cfg = RunConfig(
            command=args.command,
            spec=args.spec,
            output=args.output,
            fmt=getattr(args, "format", None),
            vertex_limit=getattr(args, "vertex_limit", DEFAULT_VERTEX_LIMIT),
            threads=_threads(args.threads),
            suite=getattr(args, "suite", "all"),
            verbosity=args.verbose,
        )
        logging.basicConfig(level=logging.WARNING - 10 * min(cfg.verbosity, 2), stream=sys.stderr,
                            format="%(levelname)s %(message)s")
        return COMMANDS[cfg.command](cfg, args)
    except (UsageError, SurfaceSpecError, UnsupportedParametersError, UnsupportedSurfaceError,
            UnsupportedModelError, TriangulationError, KeyError, IndexError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(msg)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
