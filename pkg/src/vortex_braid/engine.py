"""Planar model of the decorated disk and exact evaluation of mapping classes.

Points sit on a line in the order: decorations ``1..aleph``, then inner
boundary components (modelled as punctures), then vortices.  The free group
generator ``g_k`` is the standard loop around position ``k``.

A mapping class is stored as a :class:`Braid`, a word of elementary letters:

* ``("h", j, e)``: Artin half twist of positions ``j, j+1`` (``e = +-1``),
  ``g_j -> g_j g_{j+1} g_j^-1``, ``g_{j+1} -> g_j``.
* ``("t", a, b, e)``: Dehn twist about the round curve enclosing positions
  ``a..b``, acting by conjugation with ``g_a ... g_b`` on that block.

Letters compose as functions, so the rightmost letter acts first.  Both
letter types are needed: point pushes are built from the Dehn twist letter
and compared against squares of half twists, which is how the two routes
stay independent.

Arcs off the chain of decorations (collision paths, pushing loops) pass the
intermediate points on the side selected by conjugating with inverse half
twists; this is the drawing under which the presentation relators hold.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .freegroup import FreeAutomorphism, invert_word, reduce_word
from .surface import MarkedSurfaceSpec


class UnsupportedModelError(ValueError):
    pass


@lru_cache(maxsize=None)
def _letter_table(letter):
    kind = letter[0]
    if kind == "h":
        _, j, e = letter
        if e > 0:
            return {j: (j, j + 1, -j), j + 1: (j,)}
        return {j: (j + 1,), j + 1: (-(j + 1), j, j + 1)}
    if kind == "t":
        _, a, b, e = letter
        block = tuple(range(a, b + 1))
        c = block if e > 0 else invert_word(block)
        ci = invert_word(c)
        return {k: c + (k,) + ci for k in block}
    raise ValueError(f"unknown letter {letter!r}")


def apply_letter(letter, word):
    table = _letter_table(letter)
    out: list[int] = []
    for a in word:
        img = table.get(abs(a))
        if img is None:
            img = (abs(a),)
        if a < 0:
            img = invert_word(img)
        for b in img:
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
    return tuple(out)


def _inverse_letter(letter):
    return letter[:-1] + (-letter[-1],)


# Fingerprints: the free group is sent to SL2(F_p) by random matrices, and a
# mapping class to the tuple of matrices of its generator images.  Equal
# mapping classes have equal fingerprints, so a mismatch proves inequality.

_P = (1 << 61) - 1


def _mat_mul(a, b):
    return (
        (a[0] * b[0] + a[1] * b[2]) % _P,
        (a[0] * b[1] + a[1] * b[3]) % _P,
        (a[2] * b[0] + a[3] * b[2]) % _P,
        (a[2] * b[1] + a[3] * b[3]) % _P,
    )


def _mat_inv(a):
    return (a[3], -a[1] % _P, -a[2] % _P, a[0])


_ID = (1, 0, 0, 1)


@lru_cache(maxsize=None)
def _base_matrices(rank, seed):
    rng = random.Random(seed * 1000003 + rank)
    out = []
    for _ in range(rank):
        a, b, c = (rng.randrange(1, _P) for _ in range(3))
        d = (1 + b * c) * pow(a, -1, _P) % _P
        out.append((a, b, c, d))
    return tuple(out)


class ImageTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class Braid:
    """A mapping class of the planar model given as a word of letters."""

    rank: int
    letters: tuple = ()

    def __mul__(self, other: "Braid") -> "Braid":
        if other.rank != self.rank:
            raise ValueError("mismatched contexts")
        out = list(self.letters)
        for L in other.letters:
            if out and out[-1] == _inverse_letter(L):
                out.pop()
            else:
                out.append(L)
        return Braid(self.rank, tuple(out))

    def inverse(self) -> "Braid":
        return Braid(self.rank, tuple(_inverse_letter(L) for L in reversed(self.letters)))

    def __pow__(self, k: int) -> "Braid":
        base = self if k >= 0 else self.inverse()
        out = Braid(self.rank)
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj(self, other: "Braid") -> "Braid":
        """``self^other = other^-1 self other``."""
        return other.inverse() * self * other

    def apply(self, word, limit: int | None = None) -> tuple:
        w = reduce_word(word)
        for L in reversed(self.letters):
            w = apply_letter(L, w)
            if limit is not None and len(w) > limit:
                raise ImageTooLarge(f"intermediate image longer than {limit} letters")
        return w

    def fingerprint(self, seed: int = 0) -> tuple:
        """Matrices of the generator images under a random SL2 representation."""
        mats = list(_base_matrices(self.rank, seed))
        # prefix scheme: mats[k] represents the image of g_{k+1} under the
        # letters processed so far, composed on the right
        for L in self.letters:
            table = _letter_table(L)
            new = {}
            for k, img in table.items():
                m = _ID
                for a in img:
                    m = _mat_mul(m, mats[a - 1] if a > 0 else _mat_inv(mats[-a - 1]))
                new[k] = m
            for k, m in new.items():
                mats[k - 1] = m
        return tuple(mats)

    def images(self) -> tuple:
        return tuple(self.apply((k,)) for k in range(1, self.rank + 1))

    def automorphism(self) -> FreeAutomorphism:
        inv = self.inverse()
        return FreeAutomorphism(self.rank, self.images(), inv.images())

    def is_identity(self) -> bool:
        if self.fingerprint() != _base_matrices(self.rank, 0):
            return False
        return all(self.apply((k,)) == (k,) for k in range(1, self.rank + 1))

    def equals(self, other: "Braid") -> bool:
        if other.rank != self.rank:
            raise ValueError("mismatched contexts")
        return (self * other.inverse()).is_identity()

    def permutation(self) -> tuple:
        """Permutation of positions: ``perm[k-1]`` is where point ``k`` goes."""
        perm = list(range(1, self.rank + 1))
        for L in reversed(self.letters):
            if L[0] == "h":
                j = L[1]
                perm = [j + 1 if q == j else j if q == j + 1 else q for q in perm]
        return tuple(perm)


def commutator(a: Braid, b: Braid) -> Braid:
    return a * b * a.inverse() * b.inverse()


@dataclass(frozen=True)
class NamedMappingClass:
    name: str
    braid: Braid
    endpoints: tuple | None = None

    @property
    def automorphism(self) -> FreeAutomorphism:
        return self.braid.automorphism()


@dataclass
class PlanarModel:
    """Free-group context for a genus-0 surface with decorations."""

    spec: MarkedSurfaceSpec
    aleph: int = field(init=False)
    holes: int = field(init=False)
    vortices: int = field(init=False)
    rank: int = field(init=False)

    def __post_init__(self):
        if self.spec.genus != 0:
            raise UnsupportedModelError("the planar model only covers genus 0")
        self.aleph = self.spec.decoration_count()
        self.holes = self.spec.boundary_count - 1
        self.vortices = self.spec.puncture_count
        self.rank = self.aleph + self.holes + self.vortices
        self._cache: dict = {}

    @property
    def advisory(self) -> bool:
        return self.holes > 0

    @property
    def loops(self) -> int:
        """Number of pushing loops at the first decoration (holes then vortices)."""
        return self.holes + self.vortices

    def generator_names(self) -> list[str]:
        names = [f"x{i}" for i in range(1, self.aleph + 1)]
        names += [f"h{k}" for k in range(2, self.holes + 2)]
        names += [f"v{r}" for r in range(1, self.vortices + 1)]
        return names

    def loop_position(self, t: int) -> int:
        if not 1 <= t <= self.loops:
            raise IndexError(f"loop index {t} out of range 1..{self.loops}")
        return self.aleph + t

    def vortex_position(self, r: int) -> int:
        return self.aleph + self.holes + r

    # elementary pieces

    def identity(self) -> Braid:
        return Braid(self.rank)

    def half(self, j: int, e: int = 1) -> Braid:
        if not 1 <= j < self.rank:
            raise IndexError(f"half twist position {j} out of range")
        return Braid(self.rank, (("h", j, e),))

    def block_twist(self, a: int, b: int, e: int = 1) -> Braid:
        if not 1 <= a < b <= self.rank:
            raise IndexError("block twist range invalid")
        return Braid(self.rank, (("t", a, b, e),))

    def mover(self, a: int, c: int) -> Braid:
        """Carries the round curve around ``a, a+1`` to one around ``a, c``."""
        out = self.identity()
        for j in range(c - 1, a, -1):
            out = out * self.half(j, -1)
        return out

    def arc_twist(self, a: int, c: int) -> Braid:
        """Half twist along the standard arc joining positions ``a < c``."""
        if a > c:
            a, c = c, a
        w = self.mover(a, c)
        return w * self.half(a) * w.inverse()

    # named classes

    def sigma(self, i: int) -> NamedMappingClass:
        if not 1 <= i < self.aleph:
            raise IndexError(f"sigma index {i} out of range")
        return NamedMappingClass(f"s{i}", self.half(i), (i, i + 1))

    def collision_twist(self, z: int, t: int) -> NamedMappingClass:
        """Half twist along the collision path from decoration ``z`` to loop point ``t``."""
        return NamedMappingClass(f"B[{z},{t}]", self.arc_twist(z, self.loop_position(t)))

    def l_twist(self, z: int, loop) -> NamedMappingClass:
        """Point push of decoration ``z`` along a loop.

        ``loop`` is a sequence of signed positions ``+-k``, each standing for
        the standard loop from ``z`` around position ``k``.  Pushing along a
        product of loops composes the pushes in reverse order.
        """
        out = self.identity()
        for step in loop:
            k = abs(step)
            if k == z:
                raise ValueError("loop must avoid the pushed point")
            a, c = min(z, k), max(z, k)
            w = self.mover(a, c)
            piece = w * self.block_twist(a, a + 1, 1 if step > 0 else -1) * w.inverse()
            out = piece * out
        return NamedMappingClass(f"L[{z};{','.join(map(str, loop))}]", out)

    def delta(self, t: int) -> NamedMappingClass:
        """Push of the first decoration around loop point ``t`` alone."""
        m = self.l_twist(1, (self.loop_position(t),))
        return NamedMappingClass(f"d{t}", m.braid)

    def epsilon(self, t: int) -> NamedMappingClass:
        """``eps_t = delta_t eps_{t-1}`` with ``eps_0 = id``."""
        key = ("eps", t)
        if key not in self._cache:
            if t == 0:
                b = self.identity()
            else:
                b = self.delta(t).braid * self.epsilon(t - 1).braid
            self._cache[key] = NamedMappingClass(f"e{t}", b)
        return self._cache[key]

    def tau(self, r: int) -> NamedMappingClass:
        """``tau_r = sigma_1^(eps_r^-1)``; ``tau_0`` is ``sigma_1``."""
        e = self.epsilon(r).braid
        return NamedMappingClass(f"t{r}", self.half(1).conj(e.inverse()), (1, 2))

    def x(self) -> Braid:
        s1, s2 = self.half(1), self.half(2)
        return s1.conj(s2.inverse())

    def y(self) -> Braid:
        s2, s3 = self.half(2), self.half(3)
        return s3.conj(s2.inverse())

    def taurus(self, r: int) -> Braid:
        return commutator(self.tau(r).braid, self.tau(r - 1).braid)

    # name resolution for relator words

    def resolve(self, name: str) -> Braid:
        key = ("name", name)
        if key in self._cache:
            return self._cache[key]
        if name.startswith("s") and name[1:].isdigit():
            b = self.sigma(int(name[1:])).braid
        elif name.startswith("t") and name[1:].isdigit():
            b = self.tau(int(name[1:])).braid
        elif name.startswith("e") and name[1:].isdigit():
            b = self.epsilon(int(name[1:])).braid
        elif name.startswith("d") and name[1:].isdigit():
            b = self.delta(int(name[1:])).braid
        else:
            raise KeyError(f"cannot resolve mapping class {name!r}")
        self._cache[key] = b
        return b

    def evaluate(self, word, table=None) -> Braid:
        """Evaluate a word of ``(name, exponent)`` pairs."""
        out = self.identity()
        for name, e in word:
            b = table[name] if table and name in table else self.resolve(name)
            out = out * (b if e > 0 else b.inverse())
        return out


def artin_half_twist(model: PlanarModel, j: int) -> FreeAutomorphism:
    return model.half(j).automorphism()
