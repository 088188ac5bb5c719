"""Local dimensions from transition matrices.

Numeric results are :class:`Bound` enclosures.  Spectral radii are
certified with Collatz-Wielandt quotients evaluated in exact rational
arithmetic, logarithms with outward-rounded interval arithmetic (mpmath).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import networkx as nx
import numpy as np

from .netstructure import VectorGraph, adjacent_path, instantiate_path
from .numberfield import FieldElement, RationalInterval, field_to_float
from .transitions import UNKNOWN, TransitionMatrix, is_positive_type, path_matrix

__all__ = [
    "Bound",
    "PeriodicPoint",
    "DimensionBracket",
    "NotPositiveTypeError",
    "default_precision_bits",
    "pn_of_path",
    "q_vector",
    "approx_local_dim",
    "spectral_radius",
    "log_quotient",
    "periodic_dim",
    "endpoint_point",
    "essential_bracket",
    "pseudo_norms",
    "DensityReport",
    "golden_density_cdf",
    "density_check_sr",
    "locate",
    "essential_points",
    "EndpointReport",
    "isolated",
    "endpoint_report",
]

# private interval context so the global mpmath precision is left alone
_iv = type(mpmath.iv)()
_iv.prec = 96


def default_precision_bits() -> int:
    return int(os.environ.get("FINITYPE_PRECISION_BITS", "128"))


class NotPositiveTypeError(ValueError):
    """The essential class has no positive witness path within the search bound."""


@dataclass(frozen=True)
class Bound:
    """Closed float interval guaranteed to contain the true value."""

    lo: float
    hi: float

    @classmethod
    def exact(cls, x: float) -> "Bound":
        return cls(x, x)

    @classmethod
    def from_iv(cls, x) -> "Bound":
        lo, hi = float(x.a), float(x.b)
        return cls(math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf))

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __float__(self):
        return self.mid

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self):
        return f"Bound({self.mid!r} +/- {self.width / 2:.2e})"


def _to_iv(x: Fraction):
    return _iv.mpf(x.numerator) / _iv.mpf(x.denominator)


def _iv_hull(r: RationalInterval):
    return _iv.mpf([_to_iv(r.lo).a, _to_iv(r.hi).b])


def _log_iv(interval: RationalInterval):
    return _iv.log(_iv_hull(interval))


def log_quotient(value: RationalInterval, scale: RationalInterval, beta: int) -> Bound:
    """Enclosure of ``log(value) / (beta * log(scale))`` for ``0 < scale < 1``."""
    if value.hi <= 0:
        return Bound(math.inf, math.inf)
    den = beta * _iv.log(_iv_hull(scale))
    if value.lo <= 0:
        q = _iv.log(_to_iv(value.hi)) / den
        return Bound(math.nextafter(float(q.a), -math.inf), math.inf)
    return Bound.from_iv(_iv.log(_iv_hull(value)) / den)


def _mpf_fraction(x) -> Fraction:
    man, exp = x.man, x.exp
    return Fraction(int(man)) * (Fraction(2) ** int(exp))


# --- P_n and Q_n --------------------------------------------------------------


def q_vector(graph: VectorGraph, path: Sequence[int]) -> tuple[FieldElement, ...]:
    """``Q_n`` of the net interval with symbolic representation ``path`` (from root)."""
    graph.check_path(path, from_root=True)
    return path_matrix(graph, path).entries[0]


def pn_of_path(graph: VectorGraph, path: Sequence[int]) -> FieldElement:
    """``P_n = ||T(g0, ..., gn)||``, the total weight of covering basic intervals."""
    graph.check_path(path, from_root=True)
    return path_matrix(graph, path).norm()


def approx_local_dim(graph: VectorGraph, path: Sequence[int]) -> tuple[float, float]:
    """Finite-``n`` local dimension quotients at the net interval ``path``.

    Returns ``(three_interval, single_interval)``: the first adds the
    ``P_n`` of the two adjacent generation-``n`` net intervals to the
    numerator, the second uses ``P_n`` of ``path`` alone.
    """
    n = len(path) - 1
    if n < 1:
        raise ValueError("need a path of generation >= 1")
    P = pn_of_path(graph, path)
    total = P
    for side in (-1, 1):
        adj = adjacent_path(graph, path, side)
        if adj is not None:
            total = total + pn_of_path(graph, adj)
    denom = n * math.log(float(graph.ifs.r_min))
    return math.log(float(total)) / denom, math.log(float(P)) / denom


# --- spectral radius ----------------------------------------------------------


def _entry_interval(x: FieldElement, bits: int) -> RationalInterval:
    return field_to_float(x, bits)


def _perron_vector(B: np.ndarray) -> np.ndarray:
    m = B.shape[0]
    vals, vecs = np.linalg.eig(B)
    k = int(np.argmax(vals.real))
    v = np.abs(vecs[:, k].real)
    if not np.all(v > 0):
        v = np.maximum(v, 1e-300) + np.ones(m) * 1e-12
    shifted = B + np.eye(m)
    for _ in range(50):
        w = shifted @ v
        v = w / w.max()
    return v


def _cw_bounds(block: list[list[RationalInterval]], v: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    lo_q, hi_q = None, None
    for i, row in enumerate(block):
        lo = sum((e.lo * vj for e, vj in zip(row, v)), Fraction(0)) / v[i]
        hi = sum((e.hi * vj for e, vj in zip(row, v)), Fraction(0)) / v[i]
        lo_q = lo if lo_q is None else min(lo_q, lo)
        hi_q = hi if hi_q is None else max(hi_q, hi)
    return lo_q, hi_q


def _irreducible_radius(block, tol: float) -> RationalInterval:
    mid = np.array([[float(e.mid) for e in row] for row in block])
    v = _perron_vector(mid)
    lo, hi = _cw_bounds(block, [Fraction(float(x)) for x in v])
    if hi == 0 or (hi - lo) <= Fraction(tol) * hi:
        return RationalInterval(max(lo, Fraction(0)), hi)
    # refine the Perron vector in extended precision
    with mpmath.workprec(256):
        M = mpmath.matrix([[mpmath.mpf(e.mid.numerator) / e.mid.denominator for e in row] for row in block])
        vec = mpmath.matrix([mpmath.mpf(float(x)) for x in v])
        shift = mpmath.eye(len(block))
        for _ in range(2000):
            w = (M + shift) * vec
            top = max(w)
            vec = w / top
            vf = [_mpf_fraction(mpmath.mpf(x)) for x in vec]
            lo, hi = _cw_bounds(block, vf)
            if hi - lo <= Fraction(tol) * hi:
                break
    return RationalInterval(max(lo, Fraction(0)), hi)


def spectral_radius(M: TransitionMatrix, tol: float = 1e-12, bits: int | None = None) -> RationalInterval:
    """Certified enclosure of the spectral radius of a nonnegative square matrix.

    The radius is the maximum over the irreducible diagonal blocks of the
    zero pattern.  A 1x1 block contributes its diagonal entry exactly; a
    larger block is bracketed by Collatz-Wielandt quotients at a numerically
    computed Perron vector, using rational enclosures of the entries.
    """
    if not M.is_square():
        raise ValueError("spectral radius needs a square matrix")
    bits = bits or default_precision_bits()
    n = M.rows
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    for i in range(n):
        for j in range(n):
            if not M.entries[i][j].is_zero():
                g.add_edge(i, j)
    best_lo, best_hi = Fraction(0), Fraction(0)
    for comp in nx.strongly_connected_components(g):
        idx = sorted(comp)
        if len(idx) == 1:
            i = idx[0]
            if M.entries[i][i].is_zero():
                continue
            iv = _entry_interval(M.entries[i][i], bits)
        else:
            block = [[_entry_interval(M.entries[i][j], bits) for j in idx] for i in idx]
            iv = _irreducible_radius(block, tol)
        best_lo, best_hi = max(best_lo, iv.lo), max(best_hi, iv.hi)
    return RationalInterval(best_lo, best_hi)


# --- periodic points ------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicPoint:
    """A point whose symbolic representation is ``prefix`` followed by ``cycle`` repeated.

    ``cycle`` lists its first vector again at the end.  ``prefix`` starts at
    the root and either ends at ``cycle[0]`` or has an edge into it.  Boundary
    points may carry a second representation (``prefix2``, ``cycle2``).
    """

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]
    prefix2: tuple[int, ...] | None = None
    cycle2: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if self.prefix2 is not None:
            object.__setattr__(self, "prefix2", tuple(self.prefix2))
            object.__setattr__(self, "cycle2", tuple(self.cycle2))
        for cyc in (self.cycle, self.cycle2):
            if cyc is None:
                continue
            if len(cyc) < 2 or cyc[0] != cyc[-1]:
                raise ValueError("cycle must start and end at the same vector")

    @property
    def beta(self) -> int:
        return len(self.cycle) - 1

    def representations(self):
        yield self.prefix, self.cycle
        if self.cycle2 is not None:
            yield self.prefix2, self.cycle2

    def point(self, graph: VectorGraph) -> FieldElement:
        """The exact location of the point (validated for every representation)."""
        xs = [_fixed_point(graph, p, c) for p, c in self.representations()]
        if any(x != xs[0] for x in xs[1:]):
            raise ValueError("the two representations describe different points")
        return xs[0]


def _lead_in(graph: VectorGraph, prefix, cycle) -> tuple[int, ...]:
    graph.check_path(prefix, from_root=True)
    graph.check_path(cycle)
    if prefix[-1] == cycle[0]:
        return tuple(prefix)
    graph.edge(prefix[-1], cycle[0])
    return tuple(prefix) + (cycle[0],)


def _fixed_point(graph: VectorGraph, prefix, cycle) -> FieldElement:
    lead = _lead_in(graph, prefix, cycle)
    i0 = instantiate_path(graph, lead)
    i1 = instantiate_path(graph, lead + tuple(cycle[1:]))
    k = (i1.b - i1.a) / (i0.b - i0.a)
    return (i1.a - k * i0.a) / (1 - k)


def periodic_dim(graph: VectorGraph, pt: PeriodicPoint, tol: float = 1e-12) -> Bound:
    """``log sp(T(cycle)) / (beta log r_min)``; with two representations, the smaller value."""
    rmin = field_to_float(graph.ifs.r_min, default_precision_bits())
    dims = []
    for prefix, cycle in pt.representations():
        _lead_in(graph, prefix, cycle)
        sp = spectral_radius(path_matrix(graph, cycle), tol=tol)
        dims.append(log_quotient(sp, rmin, len(cycle) - 1))
    if len(dims) == 2:
        pt.point(graph)
        return Bound(min(d.lo for d in dims), min(d.hi for d in dims))
    return dims[0]


def endpoint_point(graph: VectorGraph, side: int) -> PeriodicPoint:
    """Periodic representation of 0 (``side=-1``) or 1 (``side=+1``)."""
    path = [graph.root]
    while True:
        kids = graph.children(path[-1])
        nxt = kids[0] if side < 0 else kids[-1]
        if nxt in path:
            k = path.index(nxt)
            return PeriodicPoint(tuple(path[: k + 1]), tuple(path[k:]) + (nxt,))
        path.append(nxt)


# --- bracketing the essential interval -----------------------------------------


def pseudo_norms(T: TransitionMatrix) -> dict[str, FieldElement]:
    """Minimal and maximal row and column sums."""
    rs, cs = T.row_sums(), T.col_sums()
    return {"min_r": min(rs), "max_r": max(rs), "min_c": min(cs), "max_c": max(cs)}


@dataclass(frozen=True)
class DimensionBracket:
    """``a_lo <= a <= a_hi`` and ``b_lo <= b <= b_hi`` for the essential class.

    ``a``/``b`` are the least/greatest local dimensions at essential points.
    """

    a_lo: Bound
    a_hi: Bound
    b_lo: Bound
    b_hi: Bound
    a_hi_witness: tuple[int, ...]
    b_lo_witness: tuple[int, ...]
    cycle_length_used: int
    generators: tuple[tuple[int, ...], ...] = field(default=())
    cycles_sampled: int = 0

    @property
    def degenerate(self) -> bool:
        return not (self.a_lo.lo <= self.a_hi.hi and self.a_hi.lo <= self.b_lo.hi and self.b_lo.lo <= self.b_hi.hi)


def _class_edges(graph: VectorGraph, nodes):
    return {v: [e for e in graph.edges[v] if e.child in nodes] for v in nodes}


def _find_hub(graph: VectorGraph, nodes) -> int | None:
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    for v in nodes:
        for e in graph.edges[v]:
            if e.child in nodes:
                g.add_edge(v, e.child)
    for v in sorted(nodes):
        h = g.copy()
        h.remove_node(v)
        if nx.is_directed_acyclic_graph(h):
            return v
    return None


def _hub_loops(edges, hub: int, max_loops: int) -> list[tuple[int, ...]]:
    loops = []

    def walk(path):
        if len(loops) >= max_loops:
            return
        for e in edges[path[-1]]:
            if e.child == hub:
                loops.append(path + (hub,))
            elif e.child not in path:
                walk(path + (e.child,))

    walk((hub,))
    return loops


def _log_interval(x: FieldElement, bits: int):
    if x.is_zero():
        return None
    iv = field_to_float(x, bits)
    return _log_iv(iv)


def _max_cycle_mean(nodes, weighted_edges) -> float:
    """Karp's maximum mean cycle; ``weighted_edges`` is a list of (u, v, w)."""
    nodes = sorted(nodes)
    n = len(nodes)
    src = nodes[0]
    NEG = -math.inf
    D = [{v: NEG for v in nodes} for _ in range(n + 1)]
    D[0][src] = 0.0
    for k in range(1, n + 1):
        for u, v, w in weighted_edges:
            if D[k - 1][u] > NEG:
                cand = D[k - 1][u] + w
                if cand > D[k][v]:
                    D[k][v] = cand
    best = NEG
    for v in nodes:
        if D[n][v] == NEG:
            continue
        worst = math.inf
        for k in range(n):
            if D[k][v] > NEG:
                worst = min(worst, (D[n][v] - D[k][v]) / (n - k))
        best = max(best, worst)
    return best


def _norm_bound_from_means(mean_log: float, log_rmin: float, upper: bool) -> Bound:
    # mean_log is a per-step log norm; outward margin covers float accumulation
    if mean_log == -math.inf:
        return Bound(math.inf, math.inf)
    val = mean_log / log_rmin
    pad = 1e-12 * (1 + abs(val))
    return Bound(val - pad, val + pad) if upper else Bound(val - pad, val + pad)


def _closed_walks(edges, nodes, max_len: int, budget: int):
    """Closed walks of length <= max_len starting at their smallest vector."""
    found = []
    for s in sorted(nodes):
        stack = [(s,)]
        while stack and len(found) < budget:
            path = stack.pop()
            for e in edges[path[-1]]:
                c = e.child
                if c < s:
                    continue
                if c == s:
                    found.append(path + (s,))
                if len(path) < max_len:
                    stack.append(path + (c,))
    return found


def essential_bracket(
    graph: VectorGraph,
    max_cycle_len: int = 8,
    max_cycles: int = 200_000,
    positive_search_len: int | None = None,
    tol: float = 1e-12,
) -> DimensionBracket:
    """Bracket the extreme local dimensions ``a`` and ``b`` on the essential class.

    Outer bounds come from submultiplicative pseudo-norms: over first-return
    loops at a hub vector when every cycle of the class passes through one,
    and over single edges (via maximum / minimum cycle means) always; the
    tighter valid value is kept.  Inner bounds are the extreme periodic-point
    dimensions over closed walks of length at most ``max_cycle_len``.
    """
    if max_cycle_len < 1:
        raise ValueError("max_cycle_len must be >= 1")
    nodes = graph.essential
    search = positive_search_len or max(8, 4 * len(nodes))
    if is_positive_type(graph, nodes, search) is UNKNOWN:
        raise NotPositiveTypeError(
            "essential class has no positive transition product within the search bound; "
            "the local dimensions need not form an interval, so no bracket is given (raise the search length if you expect one)"
        )
    bits = default_precision_bits()
    log_r = math.log(float(graph.ifs.r_min))
    rmin_iv = field_to_float(graph.ifs.r_min, bits)
    edges = _class_edges(graph, nodes)

    # Outer bounds.  Each pseudo-norm variant (row or column sums) is
    # submultiplicative only on its own, so a variant is used consistently
    # along a product and the better of the resulting bounds is kept.
    def log_hi(x):
        return float(_log_interval(x, bits).b)

    def log_lo(x):
        return -math.inf if x.is_zero() else float(_log_interval(x, bits).a)

    norms = {(v, e.child): pseudo_norms(e.matrix) for v, es in edges.items() for e in es}
    a_lo_val, b_hi_val = -math.inf, math.inf
    for var in ("r", "c"):
        up = [(u, v, log_hi(pn["max_" + var])) for (u, v), pn in norms.items()]
        a_lo_val = max(a_lo_val, _max_cycle_mean(nodes, up) / log_r)
        low = [(u, v, log_lo(pn["min_" + var])) for (u, v), pn in norms.items()]
        if all(w > -math.inf for _, _, w in low):
            min_mean = -_max_cycle_mean(nodes, [(u, v, -w) for u, v, w in low])
            b_hi_val = min(b_hi_val, min_mean / log_r)

    generators: tuple = ()
    hub = _find_hub(graph, nodes)
    if hub is not None:
        loops = _hub_loops(edges, hub, max_cycles)
        generators = tuple(loops)
        loop_norms = [(pseudo_norms(path_matrix(graph, loop)), len(loop) - 1) for loop in loops]
        for var in ("r", "c"):
            up_best = max(log_hi(pn["max_" + var]) / beta for pn, beta in loop_norms)
            a_lo_val = max(a_lo_val, up_best / log_r)
            lo_worst = min(log_lo(pn["min_" + var]) / beta for pn, beta in loop_norms)
            if lo_worst > -math.inf:
                b_hi_val = min(b_hi_val, lo_worst / log_r)

    # pad outward to cover float rounding in the cycle-mean sums
    a_pad = a_lo_val - 1e-12 * (1 + abs(a_lo_val))
    a_lo = Bound(a_pad, a_pad)
    if b_hi_val == math.inf:
        b_hi = Bound(math.inf, math.inf)
    else:
        b_pad = b_hi_val + 1e-12 * (1 + abs(b_hi_val))
        b_hi = Bound(b_pad, b_pad)

    # inner bounds from sampled periodic points
    walks = _closed_walks(edges, nodes, max_cycle_len, max_cycles)
    fmats = {(v, e.child): np.array(e.matrix.to_float()) for v, es in edges.items() for e in es}
    best_min, best_max = (math.inf, None), (-math.inf, None)
    for w in walks:
        M = fmats[(w[0], w[1])]
        for a, b in zip(w[1:], w[2:]):
            M = M @ fmats[(a, b)]
        sp = max(abs(np.linalg.eigvals(M)))
        if sp <= 0:
            continue
        d = math.log(sp) / ((len(w) - 1) * log_r)
        if d < best_min[0]:
            best_min = (d, w)
        if d > best_max[0]:
            best_max = (d, w)
    if best_min[1] is None:
        raise NotPositiveTypeError("no closed walk with positive spectral radius found in the essential class")

    def exact_dim(cycle):
        sp = spectral_radius(path_matrix(graph, cycle), tol=tol)
        return log_quotient(sp, rmin_iv, len(cycle) - 1)

    return DimensionBracket(
        a_lo=a_lo,
        a_hi=exact_dim(best_min[1]),
        b_lo=exact_dim(best_max[1]),
        b_hi=b_hi,
        a_hi_witness=best_min[1],
        b_lo_witness=best_max[1],
        cycle_length_used=max_cycle_len,
        generators=generators,
        cycles_sampled=len(walks),
    )


# --- absolutely continuous golden example ----------------------------------------


@dataclass(frozen=True)
class DensityReport:
    """Comparison of ``P_n`` with the mass of the explicit density on each net interval."""

    generation: int
    count: int
    max_rel_dev: float
    total_abs_dev: float
    mass_identity_exact: bool


def _is_golden_reflected(ifs) -> bool:
    r = ifs.field.gen
    if r * r + r - 1 != 0 or r.sign() <= 0 or len(ifs.maps) != 2:
        return False
    m0, m1 = ifs.maps
    return (m0.r == r and m0.t.is_zero() and m1.r == -r and m1.t == 1
            and ifs.probs[0] == r * r)


def golden_density_cdf(x: FieldElement) -> FieldElement:
    """Antiderivative of ``2x/r`` on [0, r] and ``2(1-x)/r**2`` on [r, 1], zero at 0."""
    r = x.field.gen
    if x <= r:
        return x * x / r
    return r + (2 / (r * r)) * ((x - r) - (x * x - r * r) / 2)


def density_check_sr(graph: VectorGraph, n: int) -> DensityReport:
    """Compare ``P_n(D)`` with the exact density mass of every generation-``n`` net interval.

    ``P_n`` only bounds the measure up to a constant, so the deviations need
    not vanish.  ``mass_identity_exact`` records whether the density mass of
    every net interval equals the neighbour-weighted mass of its pull-backs,
    which holds exactly when the density is the invariant one.
    """
    if not _is_golden_reflected(graph.ifs):
        raise ValueError("density check needs S0 = r x, R1 = 1 - r x over the golden field with p0 = r**2")
    if n < 0:
        raise ValueError("generation must be >= 0")
    rmin = graph.ifs.r_min
    f = graph.field
    worst, total, count, identity = 0.0, 0.0, 0, True

    def walk(v, q, a, scale, depth):
        nonlocal worst, total, count, identity
        if depth == n:
            cv = graph.vectors[v]
            b = a + scale * cv.length
            mass = golden_density_cdf(b) - golden_density_cdf(a)
            # self-similarity: the net interval pulled back through each
            # neighbour, weighted by that neighbour's total mass
            pulled = f.zero
            for qi, (na, L) in zip(q.entries[0], cv.neighbours):
                lo, hi = sorted((na / L, (cv.length + na) / L))
                pulled = pulled + qi * (golden_density_cdf(hi) - golden_density_cdf(lo))
            identity = identity and pulled == mass
            dev = abs(q.norm() - mass)
            worst = max(worst, float(dev / mass))
            total += float(dev)
            count += 1
            return
        for e in graph.edges[v]:
            walk(e.child, q @ e.matrix, a + scale * e.offset, scale * rmin, depth + 1)

    walk(graph.root, path_matrix(graph, (graph.root,)), f.zero, f.one, 0)
    return DensityReport(n, count, worst, total, identity)


# --- endpoints and essential points ----------------------------------------------


def locate(graph: VectorGraph, x, n: int) -> tuple[int, ...]:
    """Path of the leftmost generation-``n`` net interval containing ``x``."""
    f = graph.field
    x = f(x) if not isinstance(x, FieldElement) else x
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    rmin = graph.ifs.r_min
    path, a, scale = [graph.root], f.zero, f.one
    for _ in range(n):
        for e in graph.edges[path[-1]]:
            lo = a + scale * e.offset
            hi = lo + scale * rmin * graph.vectors[e.child].length
            if lo <= x <= hi:
                path.append(e.child)
                a, scale = lo, scale * rmin
                break
        else:
            raise ValueError("x is not in the attractor")
    return tuple(path)


def _endpoint_ray_class(graph: VectorGraph, cls) -> bool:
    # a single vector returning to itself only through its extreme child
    if len(cls) != 1:
        return False
    (v,) = cls
    kids = graph.children(v)
    loops = [k for k, c in enumerate(kids) if c == v]
    return loops in ([0], [len(kids) - 1])


def essential_points(graph: VectorGraph) -> dict:
    """Which endpoints of [0, 1] are essential, and whether all interior points are.

    Interior points are all essential when every non-essential loop class is
    a single vector cycling through its extreme child, so that staying in it
    forever pins the point to an endpoint.
    """
    ess = graph.essential
    left = endpoint_point(graph, -1).cycle[0] in ess
    right = endpoint_point(graph, 1).cycle[0] in ess
    g = graph.loops
    interior = all(
        c == ess or _endpoint_ray_class(graph, c) or not any(
            e.child in c for v in c for e in graph.edges[v]
        )
        for c in g.classes
    )
    text = ("[" if left else "(") + "0,1" + ("]" if right else ")")
    return {"interval": text, "left_essential": left, "right_essential": right,
            "interior_essential": interior}


@dataclass(frozen=True)
class EndpointReport:
    dim0: Bound
    dim1: Bound
    isolated0: bool
    isolated1: bool


def isolated(dim: Bound, bracket: DimensionBracket) -> bool:
    """True only when ``dim`` provably lies outside ``[a_lo, b_hi]``."""
    return dim.lo > bracket.b_hi.hi or dim.hi < bracket.a_lo.lo


def endpoint_report(graph: VectorGraph, bracket: DimensionBracket, tol: float = 1e-12) -> EndpointReport:
    d0 = periodic_dim(graph, endpoint_point(graph, -1), tol)
    d1 = periodic_dim(graph, endpoint_point(graph, 1), tol)
    return EndpointReport(d0, d1, isolated(d0, bracket), isolated(d1, bracket))
