"""Iterated function systems of affine contractions on the line."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .numberfield import FieldElement, NumberField

__all__ = [
    "IFSError",
    "AffineMap",
    "IFS",
    "NotCommensurable",
    "NOT_COMMENSURABLE",
    "compose",
    "generation_words",
    "commensurability_exponents",
]

Word = tuple


class IFSError(ValueError):
    """The maps or probabilities violate an IFS invariant."""


@dataclass(frozen=True)
class AffineMap:
    """``x -> r*x + t``; ``t`` is the image of 0."""

    r: FieldElement
    t: FieldElement

    def __call__(self, x):
        return self.r * x + self.t

    def then(self, inner: "AffineMap") -> "AffineMap":
        """``self o inner``."""
        return AffineMap(self.r * inner.r, self.r * inner.t + self.t)

    def image(self) -> tuple[FieldElement, FieldElement]:
        """Image of [0, 1] as an ordered pair (left, right)."""
        a, b = self.t, self.t + self.r
        return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class IFS:
    """Maps ``S_j(x) = r_j x + d_j`` with probabilities ``p_j``, all in one field.

    The attractor's convex hull must be [0, 1] and the probabilities must
    sum to one exactly.
    """

    field: NumberField
    maps: tuple[AffineMap, ...]
    probs: tuple[FieldElement, ...]
    name: str = ""
    r_min: FieldElement = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.maps) < 2:
            raise IFSError("an IFS needs at least two maps")
        if len(self.probs) != len(self.maps):
            raise IFSError("need exactly one probability per map")
        for j, m in enumerate(self.maps):
            if m.r.field != self.field or m.t.field != self.field:
                raise IFSError(f"map {j} is not defined over the IFS field")
            if m.r.is_zero() or abs(m.r) >= 1:
                raise IFSError(f"map {j} is not a contraction: need 0 < |r| < 1")
        for j, p in enumerate(self.probs):
            if p.sign() <= 0:
                raise IFSError(f"probability {j} must be positive")
        if sum(self.probs, self.field.zero) != 1:
            raise IFSError("probabilities must sum to 1")
        lefts, rights = zip(*(m.image() for m in self.maps))
        if min(lefts) != 0 or max(rights) != 1:
            raise IFSError("convex hull of the attractor must be [0, 1]")
        object.__setattr__(self, "r_min", min(abs(m.r) for m in self.maps))

    @property
    def k(self) -> int:
        """Index of the last map (maps are numbered 0..k)."""
        return len(self.maps) - 1

    def with_probs(self, probs: Sequence[FieldElement]) -> "IFS":
        return IFS(self.field, self.maps, tuple(self.field(p) for p in probs), self.name)

    def slope(self, word: Word) -> FieldElement:
        r = self.field.one
        for j in word:
            r = r * self.maps[j].r
        return r

    def weight(self, word: Word) -> FieldElement:
        p = self.field.one
        for j in word:
            p = p * self.probs[j]
        return p

    def is_equicontractive(self) -> bool:
        r0 = self.maps[0].r
        return r0.sign() > 0 and all(m.r == r0 for m in self.maps)


def compose(ifs: IFS, word: Word) -> AffineMap:
    """``S_w = S_{w1} o S_{w2} o ... o S_{wn}``; the empty word gives the identity."""
    result = AffineMap(ifs.field.one, ifs.field.zero)
    for j in word:
        if not 0 <= j < len(ifs.maps):
            raise IFSError(f"letter {j} out of range 0..{ifs.k}")
        result = result.then(ifs.maps[j])
    return result


def generation_words(ifs: IFS, n: int) -> list[Word]:
    """Words of generation ``n``: ``|r_w| <= r_min**n < |r_{w^-}|``, lexicographic."""
    if n < 0:
        raise ValueError("generation must be >= 0")
    if n == 0:
        return [()]
    bound = ifs.r_min**n
    slopes = [abs(m.r) for m in ifs.maps]
    out: list[Word] = []

    def extend(word, size):
        for j, s in enumerate(slopes):
            w, sz = word + (j,), size * s
            if sz <= bound:
                out.append(w)
            else:
                extend(w, sz)

    extend((), ifs.field.one)
    return out


class NotCommensurable:
    """Result of a failed bounded search for commensurability exponents."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotCommensurable"

    def __bool__(self):
        return False


NOT_COMMENSURABLE = NotCommensurable()


def commensurability_exponents(ifs: IFS, search_bound: int = 64):
    """Rationals ``q_j = b/c`` with ``|r_j|**b == r_min**c`` (smallest ``c``).

    Returns :data:`NOT_COMMENSURABLE` when some map has no such relation
    with ``b, c <= search_bound``.
    """
    if search_bound < 1:
        raise ValueError("search_bound must be >= 1")
    r_min = ifs.r_min
    log_min = math.log(float(r_min))
    exps = []
    for m in ifs.maps:
        s = abs(m.r)
        if s == r_min:
            exps.append(Fraction(1))
            continue
        ratio = log_min / math.log(float(s))
        for c in range(1, search_bound + 1):
            guess = round(ratio * c)
            hit = None
            for b in (guess - 1, guess, guess + 1):
                if 1 <= b <= search_bound and s**b == r_min**c:
                    hit = b
                    break
            if hit is not None:
                exps.append(Fraction(hit, c))
                break
        else:
            return NOT_COMMENSURABLE
    return exps
