"""Generalized regularity: the extreme-map sufficient condition and finite diagnostics."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .dimension import Bound
from .ifs import IFS, compose
from .netstructure import VectorGraph
from .numberfield import FieldElement, field_to_float
from .transitions import path_matrix

__all__ = [
    "Verdict",
    "RegularityReport",
    "DiagnosticRow",
    "compare_ratios",
    "ratio_enclosure",
    "generalized_regular_sufficient",
    "edge_words",
    "gamma_max",
    "regularity_diagnostics",
]

_iv = type(mpmath.iv)()
_iv.prec = 96


class Verdict(enum.Enum):
    HOLDS = "SufficientConditionHolds"
    FAILS = "SufficientConditionFails"
    INAPPLICABLE = "Inapplicable"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class DiagnosticRow:
    """``gamma`` is exact; ``r_hat`` is an upper bound on ``R_n``, so ``b_hat`` is a lower bound on ``B(n)``."""

    n: int
    gamma: FieldElement
    r_hat: FieldElement
    b_hat: FieldElement

    def to_json(self):
        return {
            "n": self.n,
            "gamma_max": float(self.gamma),
            "r_hat": float(self.r_hat),
            "b_hat_lower_bound": float(self.b_hat),
        }


@dataclass(frozen=True)
class RegularityReport:
    verdict: Verdict
    case: int | None
    left_map: int | None
    right_map: int | None
    ratios: tuple[Bound, ...]
    notes: tuple[str, ...] = ()
    diagnostics: tuple[DiagnosticRow, ...] = field(default=())

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "case": self.case,
            "left_map": self.left_map,
            "right_map": self.right_map,
            "ratios": [[b.lo, b.hi] for b in self.ratios],
            "notes": list(self.notes),
            "diagnostics": [row.to_json() for row in self.diagnostics],
        }


_NOTE_SUFFICIENT = (
    "the condition is only sufficient: failing it does not show the measure is not generalized regular"
)


def _iv_of(x: FieldElement):
    enc = field_to_float(x, 128)
    lo = _iv.mpf(enc.lo.numerator) / enc.lo.denominator
    hi = _iv.mpf(enc.hi.numerator) / enc.hi.denominator
    return _iv.mpf([lo.a, hi.b])


def ratio_enclosure(ifs: IFS, j: int) -> Bound:
    """Enclosure of ``log p_j / log |r_j|``."""
    q = _iv.log(_iv_of(ifs.probs[j])) / _iv.log(_iv_of(abs(ifs.maps[j].r)))
    return Bound.from_iv(q)


def _exact_relation(ifs: IFS, i: int, j: int, bound: int = 64):
    """``(b, c)`` with ``|r_i|**b == |r_j|**c``, or None."""
    si, sj = abs(ifs.maps[i].r), abs(ifs.maps[j].r)
    if si == sj:
        return (1, 1)
    ratio = math.log(float(sj)) / math.log(float(si))
    for c in range(1, bound + 1):
        guess = round(ratio * c)
        for b in (guess - 1, guess, guess + 1):
            if 1 <= b <= bound and si**b == sj**c:
                return (b, c)
    return None


def compare_ratios(ifs: IFS, i: int, j: int) -> int | None:
    """Sign of ``rho_i - rho_j`` with ``rho = log p / log |r|``; None if undecided.

    When ``|r_i|**b == |r_j|**c`` the comparison is exact: ``rho_i > rho_j``
    iff ``p_i**b < p_j**c``.
    """
    rel = _exact_relation(ifs, i, j)
    if rel is not None:
        b, c = rel
        lhs, rhs = ifs.probs[i] ** b, ifs.probs[j] ** c
        return 0 if lhs == rhs else (1 if lhs < rhs else -1)
    x, y = ratio_enclosure(ifs, i), ratio_enclosure(ifs, j)
    if x.lo > y.hi:
        return 1
    if x.hi < y.lo:
        return -1
    return None


def _contains(m, x) -> bool:
    lo, hi = m.image()
    return lo <= x <= hi


def generalized_regular_sufficient(ifs: IFS) -> RegularityReport:
    """Check the extreme-map ratio condition for generalized regularity.

    Applicable when exactly one map covers 0, exactly one other map covers 1,
    and no further map covers either endpoint.  The case is set by the slope
    signs of those two maps: 1 (both positive), 2 (exactly one negative),
    3 (both negative).
    """
    ratios = tuple(ratio_enclosure(ifs, j) for j in range(len(ifs.maps)))
    left = [j for j, m in enumerate(ifs.maps) if _contains(m, 0)]
    right = [j for j, m in enumerate(ifs.maps) if _contains(m, 1)]
    if len(left) != 1 or len(right) != 1 or left == right:
        return RegularityReport(
            Verdict.INAPPLICABLE, None, None, None, ratios,
            ("each endpoint must be covered by exactly one map, and by different maps",),
        )
    lj, rj = left[0], right[0]
    pos_l, pos_r = ifs.maps[lj].r.sign() > 0, ifs.maps[rj].r.sign() > 0
    others = [j for j in range(len(ifs.maps)) if j not in (lj, rj)]
    checks: list[tuple[str, int | None, bool]] = []  # (label, comparison, need >= else ==)
    if pos_l == pos_r:
        case = 1 if pos_l else 3
        checks.append((f"rho_{lj} == rho_{rj}", compare_ratios(ifs, lj, rj), False))
        for j in others:
            checks.append((f"rho_{lj} >= rho_{j}", compare_ratios(ifs, lj, j), True))
    else:
        case = 2
        # the endpoint whose map keeps orientation carries the edge paths
        top = rj if pos_r else lj
        for j in range(len(ifs.maps)):
            if j != top:
                checks.append((f"rho_{top} >= rho_{j}", compare_ratios(ifs, top, j), True))
    notes = []
    verdict = Verdict.HOLDS
    for label, cmp, ge in checks:
        if cmp is None:
            notes.append(f"{label}: enclosures overlap")
            if verdict is Verdict.HOLDS:
                verdict = Verdict.UNDETERMINED
        elif (cmp < 0) if ge else (cmp != 0):
            notes.append(f"{label}: false")
            verdict = Verdict.FAILS
    if verdict is Verdict.FAILS:
        notes.append(_NOTE_SUFFICIENT)
    return RegularityReport(verdict, case, lj, rj, ratios, tuple(notes))


# --- diagnostics ----------------------------------------------------------------


def edge_words(ifs: IFS, cv, n: int) -> set[tuple]:
    """Generation-``n`` continuation words that keep an endpoint of a neighbour shared with the net interval.

    In normalized coordinates the net interval is ``[0, length]`` and
    neighbour ``(a, L)`` is the image of ``x -> L x - a``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    bound = ifs.r_min**n
    found: set[tuple] = set()
    for a, L in cv.neighbours:
        ends = sorted((-a, L - a))
        targets = []
        if ends[0] == 0:
            targets.append((0, ends[0]))
        if ends[1] == cv.length:
            targets.append((1, ends[1]))
        for side, point in targets:
            def walk(word, m):
                for j, s in enumerate(ifs.maps):
                    w = word + (j,)
                    mw = m.then(s)
                    lo, hi = sorted((L * mw.t - a, L * (mw.t + mw.r) - a))
                    if (lo if side == 0 else hi) != point:
                        continue
                    if abs(L * mw.r) <= bound:
                        found.add(w)
                    else:
                        walk(w, mw)

            walk((), compose(ifs, ()))
    return found


def gamma_max(graph: VectorGraph, n: int) -> FieldElement:
    """``max`` over vectors of the total weight of generation-``n`` edge words."""
    ifs = graph.ifs
    best = graph.field.zero
    seen = set()
    for cv in graph.vectors.values():
        key = cv.reduced
        if key in seen:
            continue
        seen.add(key)
        total = sum((ifs.weight(w) for w in edge_words(ifs, cv, n)), graph.field.zero)
        best = max(best, total)
    return best


def regularity_diagnostics(
    graph: VectorGraph, n_max: int, m_max: int, max_steps: int = 500_000
) -> list[DiagnosticRow]:
    """Rows ``(n, Gamma_max(n), R_hat_n, B_hat(n))`` for ``n = 1..n_max``.

    ``R_hat_n`` minimizes ``P_{m+n}(D') / P_m(D)`` over root paths ``D`` with
    ``1 <= m <= m_max`` and their generation-``m+n`` descendants ``D'``.  It
    is an upper bound on the true infimum, so ``B_hat = Gamma_max / R_hat``
    is a lower bound on ``B(n)``.  Raises ValueError once more than
    ``max_steps`` matrix products would be needed.
    """
    if n_max < 1 or m_max < 1:
        raise ValueError("n_max and m_max must be >= 1")
    r_hat: dict[int, FieldElement] = {}
    steps = [0]

    def tick():
        steps[0] += 1
        if steps[0] > max_steps:
            raise ValueError(f"path enumeration exceeds {max_steps} steps; lower n_max or m_max")

    def descend(v, q, pm, n):
        for e in graph.edges[v]:
            tick()
            q2 = q @ e.matrix
            ratio = q2.norm() / pm
            if n not in r_hat or ratio < r_hat[n]:
                r_hat[n] = ratio
            if n < n_max:
                descend(e.child, q2, pm, n + 1)

    def roots(v, q, m):
        for e in graph.edges[v]:
            tick()
            q2 = q @ e.matrix
            descend(e.child, q2, q2.norm(), 1)
            if m < m_max:
                roots(e.child, q2, m + 1)

    roots(graph.root, path_matrix(graph, (graph.root,)), 1)
    rows = []
    for n in range(1, n_max + 1):
        g = gamma_max(graph, n)
        rows.append(DiagnosticRow(n, g, r_hat[n], g / r_hat[n]))
    return rows
