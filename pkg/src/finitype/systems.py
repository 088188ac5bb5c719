"""Ready-made iterated function systems used throughout the examples and tests."""

from __future__ import annotations

from fractions import Fraction

from .ifs import IFS, AffineMap
from .numberfield import QQ, NumberField

__all__ = [
    "golden_field",
    "golden_translates",
    "golden_reflected",
    "three_maps_half",
    "n_map",
    "thirds",
    "middle_thirds_cantor",
]


def golden_field() -> NumberField:
    """Q(r) with r**2 + r - 1 = 0, r ~ 0.618 (inverse of the golden mean)."""
    return NumberField([-1, 1, 1], (Fraction(3, 5), Fraction(2, 3)), name="r")


def _probs(field, probs):
    return tuple(field(p) for p in probs)


def golden_translates(p0=Fraction(2, 5), field: NumberField | None = None) -> IFS:
    """S0 = r x, S1 = r x + 1 - r (the biased golden Bernoulli convolution)."""
    K = field or golden_field()
    r = K.gen
    p0 = K(p0)
    maps = (AffineMap(r, K.zero), AffineMap(r, 1 - r))
    return IFS(K, maps, (p0, 1 - p0), name="golden-translates")


def golden_reflected(p0=Fraction(2, 5), field: NumberField | None = None) -> IFS:
    """S0 = r x, R1 = 1 - r x (second map orientation-reversing)."""
    K = field or golden_field()
    r = K.gen
    p0 = K(p0)
    maps = (AffineMap(r, K.zero), AffineMap(-r, K.one))
    return IFS(K, maps, (p0, 1 - p0), name="golden-reflected")


def three_maps_half(p=Fraction(2, 5)) -> IFS:
    """x/2, x/2 + 1/4, x/2 + 1/2 with probabilities (p, 1 - 2p, p)."""
    h = QQ(Fraction(1, 2))
    maps = (AffineMap(h, QQ(0)), AffineMap(h, QQ(Fraction(1, 4))), AffineMap(h, QQ(Fraction(1, 2))))
    p = QQ(p)
    return IFS(QQ, maps, (p, 1 - 2 * p, p), name="three-maps-half")


def n_map(N: int = 3, i0: int = 1, probs=None) -> IFS:
    """x/N + i/N for i < N, plus x/N**2 + i0/N; uniform probabilities by default."""
    if not 1 <= i0 <= N - 2:
        raise ValueError("i0 must lie in 1..N-2")
    s = QQ(Fraction(1, N))
    maps = [AffineMap(s, QQ(Fraction(i, N))) for i in range(N)]
    maps.append(AffineMap(QQ(Fraction(1, N * N)), QQ(Fraction(i0, N))))
    if probs is None:
        probs = [Fraction(1, N + 1)] * (N + 1)
    return IFS(QQ, tuple(maps), _probs(QQ, probs), name=f"n-map-{N}-{i0}")


def thirds(probs=(Fraction(2, 5), Fraction(1, 5), Fraction(2, 5))) -> IFS:
    """x/3 + i/3 for i = 0, 1, 2."""
    t = QQ(Fraction(1, 3))
    maps = tuple(AffineMap(t, QQ(Fraction(i, 3))) for i in range(3))
    return IFS(QQ, maps, _probs(QQ, probs), name="thirds")


def middle_thirds_cantor(p0=Fraction(1, 2)) -> IFS:
    """x/3 and x/3 + 2/3."""
    t = QQ(Fraction(1, 3))
    maps = (AffineMap(t, QQ(0)), AffineMap(t, QQ(Fraction(2, 3))))
    p0 = QQ(p0)
    return IFS(QQ, maps, (p0, 1 - p0), name="cantor")
