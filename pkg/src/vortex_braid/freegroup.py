"""Free groups, reduced words and automorphisms given by generator images.

Letters are nonzero integers: ``k`` is the k-th generator (1-based) and
``-k`` its inverse.  Words are tuples of letters kept freely reduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple


def reduce_word(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("letter 0 is not allowed")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def invert_word(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def multiply(*words: Sequence[int]) -> Word:
    return reduce_word(a for w in words for a in w)


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        return power(invert_word(w), -k)
    return reduce_word(list(w) * k)


def conjugate(w: Sequence[int], c: Sequence[int]) -> Word:
    """Return ``c w c^-1``."""
    return multiply(c, w, invert_word(c))


def exponent_sums(w: Sequence[int], rank: int) -> list[int]:
    sums = [0] * rank
    for a in w:
        sums[abs(a) - 1] += 1 if a > 0 else -1
    return sums


def format_word(w: Sequence[int], names: Sequence[str] | None = None) -> str:
    if not w:
        return "1"
    parts = []
    for a in w:
        name = names[abs(a) - 1] if names else f"g{abs(a)}"
        parts.append(name if a > 0 else name + "'")
    return " ".join(parts)


@dataclass(frozen=True)
class FreeAutomorphism:
    """Automorphism of the free group of rank ``rank``.

    ``images[k]`` is the image of generator ``k+1``; ``inverse_images`` holds
    the images under the inverse map when known.  Composition follows
    function composition: ``a.compose(b)`` applies ``b`` first.
    """

    rank: int
    images: tuple
    inverse_images: tuple | None = None

    @classmethod
    def identity(cls, rank: int) -> "FreeAutomorphism":
        gens = tuple((k,) for k in range(1, rank + 1))
        return cls(rank, gens, gens)

    @classmethod
    def from_images(cls, rank, images, inverse_images=None, check=True):
        images = tuple(reduce_word(w) for w in images)
        if inverse_images is not None:
            inverse_images = tuple(reduce_word(w) for w in inverse_images)
        aut = cls(rank, images, inverse_images)
        if check and inverse_images is not None:
            inv = cls(rank, inverse_images, images)
            if not aut.compose(inv).is_identity() or not inv.compose(aut).is_identity():
                raise ValueError("supplied inverse does not invert the automorphism")
        return aut

    def apply(self, w: Sequence[int]) -> Word:
        out: list[int] = []
        for a in w:
            img = self.images[a - 1] if a > 0 else invert_word(self.images[-a - 1])
            for b in img:
                if out and out[-1] == -b:
                    out.pop()
                else:
                    out.append(b)
        return tuple(out)

    def compose(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        images = tuple(self.apply(w) for w in other.images)
        inv = None
        if self.inverse_images is not None and other.inverse_images is not None:
            inv_self = FreeAutomorphism(self.rank, self.inverse_images)
            inv_other = FreeAutomorphism(self.rank, other.inverse_images)
            inv = tuple(inv_other.apply(w) for w in inv_self.images)
        return FreeAutomorphism(self.rank, images, inv)

    def inverse(self) -> "FreeAutomorphism":
        if self.inverse_images is None:
            raise ValueError("inverse not recorded for this automorphism")
        return FreeAutomorphism(self.rank, self.inverse_images, self.images)

    def __mul__(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        return self.compose(other)

    def __pow__(self, k: int) -> "FreeAutomorphism":
        base = self if k >= 0 else self.inverse()
        out = FreeAutomorphism.identity(self.rank)
        for _ in range(abs(k)):
            out = out.compose(base)
        return out

    def is_identity(self) -> bool:
        return all(img == (k,) for k, img in enumerate(self.images, start=1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeAutomorphism):
            return NotImplemented
        return self.rank == other.rank and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.rank, self.images))


def equals(a: FreeAutomorphism, b: FreeAutomorphism) -> bool:
    if a.rank != b.rank:
        raise ValueError("automorphisms live on different free groups")
    return a.images == b.images


def conj_aut(a: FreeAutomorphism, b: FreeAutomorphism) -> FreeAutomorphism:
    """``a^b = b^-1 a b``."""
    return b.inverse() * a * b


def commutator(a: FreeAutomorphism, b: FreeAutomorphism) -> FreeAutomorphism:
    """``[a, b] = a b a^-1 b^-1``."""
    return a * b * a.inverse() * b.inverse()
