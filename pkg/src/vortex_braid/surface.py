"""Marked surfaces with vortices and their numerical invariants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


class SurfaceSpecError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroupInvariants:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(sorted(int(d) for d in self.torsion))
        if any(d < 2 for d in t):
            raise ValueError("torsion entries must be at least 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("torsion entries must divide each other")
        object.__setattr__(self, "torsion", t)

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class MarkedSurfaceSpec:
    genus: int
    boundary_count: int
    puncture_count: int
    marked_per_boundary: tuple
    vortex_signs: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "marked_per_boundary", tuple(self.marked_per_boundary))
        if self.vortex_signs is None:
            object.__setattr__(self, "vortex_signs", (1,) * self.puncture_count)
        else:
            object.__setattr__(self, "vortex_signs", tuple(self.vortex_signs))
        if self.genus < 0 or self.puncture_count < 0:
            raise SurfaceSpecError("genus and puncture count must be nonnegative")
        if self.boundary_count < 1:
            raise SurfaceSpecError("at least one boundary component is required")
        if len(self.marked_per_boundary) != self.boundary_count:
            raise SurfaceSpecError("need one marked-point count per boundary component")
        if any(m < 1 for m in self.marked_per_boundary):
            raise SurfaceSpecError("every boundary component needs a marked point")
        if len(self.vortex_signs) != self.puncture_count:
            raise SurfaceSpecError("need one vortex sign per puncture")
        if any(s not in (1, -1) for s in self.vortex_signs):
            raise SurfaceSpecError("vortex signs must be +1 or -1")

    @classmethod
    def disk(cls, m: int, punctures: int = 0) -> "MarkedSurfaceSpec":
        return cls(0, 1, punctures, (m,))

    @property
    def marked_count(self) -> int:
        return sum(self.marked_per_boundary)

    def rank(self) -> int:
        g, b, p, m = self.genus, self.boundary_count, self.puncture_count, self.marked_count
        return 6 * g + 3 * p + 3 * b + m - 6

    def decoration_count(self) -> int:
        g, b, p, m = self.genus, self.boundary_count, self.puncture_count, self.marked_count
        return 4 * g + 2 * p + 2 * b + m - 4

    def loop_count(self) -> int:
        """Number of tau / eps generators, 2g + b + p - 1."""
        return 2 * self.genus + self.boundary_count + self.puncture_count - 1

    def to_json(self) -> str:
        return json.dumps(
            {
                "genus": self.genus,
                "boundary": list(self.marked_per_boundary),
                "punctures": self.puncture_count,
                "vortex_signs": list(self.vortex_signs),
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "MarkedSurfaceSpec":
        try:
            data = json.loads(text)
            boundary = data["boundary"]
            punctures = int(data.get("punctures", 0))
            return cls(
                int(data.get("genus", 0)),
                len(boundary),
                punctures,
                tuple(int(m) for m in boundary),
                data.get("vortex_signs"),
            )
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise SurfaceSpecError(f"malformed surface JSON: {exc}") from exc


def rank(spec: MarkedSurfaceSpec) -> int:
    return spec.rank()


def decoration_count(spec: MarkedSurfaceSpec) -> int:
    return spec.decoration_count()


def h1_punctured(spec: MarkedSurfaceSpec) -> AbelianGroupInvariants:
    return AbelianGroupInvariants(2 * spec.genus + spec.boundary_count - 1 + spec.puncture_count)


def h1_vortex(spec: MarkedSurfaceSpec) -> AbelianGroupInvariants:
    return AbelianGroupInvariants(2 * spec.genus + spec.boundary_count - 1, (2,) * spec.puncture_count)
