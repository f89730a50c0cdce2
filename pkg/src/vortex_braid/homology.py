"""Abel-Jacobi values and the symmetric-group quotient.

The Abel-Jacobi map is a homomorphism, so it is given by a table on the
generator alphabet.  Values are vectors in the basis of the ``e_t`` classes:
braid twists go to 0, ``e_t`` to the t-th basis vector, and both
``d_t = e_t e_(t-1)^-1`` and the L-twist ``L_t`` (push around loop ``t``
alone) to ``e_t - e_(t-1)``.  Loops are numbered handles first, then inner
boundaries, then vortices.

The vortex version works in single-loop coordinates, where the class of
``e_t`` covers loops ``1..t``, and reduces the vortex coordinates mod 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .surface import MarkedSurfaceSpec

_NAME = re.compile(r"^(s|t|tp|x|y|b|e|d|L|Taurus)(\d*)$")


class UnknownSymbolError(KeyError):
    pass


@dataclass(frozen=True)
class AJVector:
    values: tuple
    torsion_from: int | None = None  # coordinates from here on are mod 2
    basis: str = "eps"  # "eps" or "loop"

    def is_zero(self) -> bool:
        return not any(self.values)


def _parse(symbol: str):
    m = _NAME.match(symbol)
    if not m:
        raise UnknownSymbolError(symbol)
    return m.group(1), int(m.group(2)) if m.group(2) else None


def _table_value(spec: MarkedSurfaceSpec, symbol: str) -> list[int]:
    n = spec.loop_count()
    vec = [0] * n
    kind, k = _parse(symbol)
    if kind in ("s", "t", "tp", "x", "y", "b", "Taurus"):
        return vec
    if k is None or not 1 <= k <= n:
        raise UnknownSymbolError(f"{symbol}: loop index out of range 1..{n}")
    if kind == "e":
        vec[k - 1] = 1
    else:
        vec[k - 1] = 1
        if k > 1:
            vec[k - 2] = -1
    return vec


def _word_items(word):
    """Accept ``[(name, exponent), ...]`` or a whitespace string with trailing ``'`` for inverses."""
    if isinstance(word, str):
        out = []
        for tok in word.split():
            if tok.endswith("'"):
                out.append((tok[:-1], -1))
            else:
                out.append((tok, 1))
        return out
    return list(word)


def aj(spec: MarkedSurfaceSpec, word) -> AJVector:
    total = [0] * spec.loop_count()
    for name, e in _word_items(word):
        v = _table_value(spec, name)
        total = [a + e * b for a, b in zip(total, v)]
    return AJVector(tuple(total))


def to_loop_coordinates(v: AJVector) -> tuple:
    a = v.values
    return tuple(sum(a[t:]) for t in range(len(a)))


def aj_vortex(spec: MarkedSurfaceSpec, word) -> AJVector:
    loops = to_loop_coordinates(aj(spec, word))
    free = 2 * spec.genus + spec.boundary_count - 1
    vals = list(loops[:free]) + [a % 2 for a in loops[free:]]
    return AJVector(tuple(vals), free, "loop")


def aj_relator(spec: MarkedSurfaceSpec, relator, generators, vortex: bool = False) -> AJVector:
    items = [(generators[abs(a) - 1], 1 if a > 0 else -1) for a in relator]
    return aj_vortex(spec, items) if vortex else aj(spec, items)


# symmetric group quotient


def _compose(p: tuple, q: tuple) -> tuple:
    """``p o q`` on 0-based tuples."""
    return tuple(p[i] for i in q)


def transposition(n: int, i: int, j: int) -> tuple:
    out = list(range(n))
    out[i - 1], out[j - 1] = j - 1, i - 1
    return tuple(out)


def permutation_quotient(word, endpoints: dict, n: int) -> tuple:
    """Product of endpoint transpositions (rightmost acts first), 0-based image tuple."""
    out = tuple(range(n))
    for name, e in _word_items(word):
        if name not in endpoints:
            raise UnknownSymbolError(f"{name} carries no endpoint data")
        ends = endpoints[name]
        if len(ends) != 2 or ends[0] == ends[1]:
            raise ValueError(f"{name} does not join two decorations")
        out = _compose(out, transposition(n, *ends))
    return out


def relator_permutation(p, relator, n: int) -> tuple:
    items = [(p.generators[abs(a) - 1], 1 if a > 0 else -1) for a in relator]
    return permutation_quotient(items, p.endpoints, n)


def is_identity_permutation(perm) -> bool:
    return all(i == v for i, v in enumerate(perm))


# independent reading from the planar model


def push_trace(model, braid) -> AJVector:
    """Abel-Jacobi value read off the action on decoration generators.

    Each decoration generator goes to a conjugate ``c x_j c^-1``; summing the
    exponents of loop generators in the conjugators ``c`` over all
    decorations gives a homomorphism (loop generators only ever go to
    conjugates of loop generators).  The result is in loop coordinates, where
    ``e_t`` covers loops ``1..t``, and is converted to the ``e_t`` basis.
    """
    loops = [0] * model.loops
    pos = {model.loop_position(t): t - 1 for t in range(1, model.loops + 1)}
    for k in range(1, model.aleph + 1):
        img = braid.apply((k,))
        h = len(img) // 2
        if len(img) % 2 == 0 or abs(img[h]) > model.aleph or img[h] < 0 \
                or img[:h] != tuple(-a for a in reversed(img[h + 1:])):
            raise ValueError(f"image of decoration {k} is not a conjugate of a decoration generator")
        for a in img[:h]:
            if abs(a) in pos:
                loops[pos[abs(a)]] += 1 if a > 0 else -1
    vals = [loops[t] - (loops[t + 1] if t + 1 < len(loops) else 0) for t in range(len(loops))]
    return AJVector(tuple(vals))
