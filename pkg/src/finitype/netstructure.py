"""Net intervals, neighbour sets and characteristic vectors.

A net interval of generation ``n`` is described in *normalized* coordinates:
translate its left endpoint to 0 and divide by ``r_min**n``.  It then
occupies ``[0, length]`` and each covering basic interval of generation ``n``
is the image of [0, 1] under ``x -> L*x - a`` for a neighbour ``(a, L)``.
Children are computed entirely in these coordinates, so they depend only on
the reduced vector ``(length, neighbours)``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import networkx as nx

from .ifs import IFS, compose
from .numberfield import FieldElement, NumberField
from .transitions import (
    StructuralError,
    TransitionMatrix,
    _digraph,
    decompose,
    primitive_matrix,
)

__all__ = [
    "NotFiniteTypeError",
    "CharacteristicVector",
    "Child",
    "Edge",
    "VectorGraph",
    "NetIntervalInstance",
    "root_vector",
    "children",
    "build_vector_graph",
    "prune_to_attractor",
    "instantiate_path",
    "net_intervals",
    "adjacent_path",
    "DEFAULT_MAX_VECTORS",
]

DEFAULT_MAX_VECTORS = 10_000

Neighbour = tuple  # (a, L)


class NotFiniteTypeError(RuntimeError):
    """Closure exceeded ``max_vectors``; carries the partial graph."""

    def __init__(self, message: str, partial: "VectorGraph"):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class CharacteristicVector:
    length: FieldElement
    neighbours: tuple[Neighbour, ...]
    sibling_index: int = 1

    def __post_init__(self):
        if self.length.sign() <= 0:
            raise ValueError("normalized length must be positive")
        if not self.neighbours:
            raise ValueError("neighbour set must be nonempty")
        if self.sibling_index < 1:
            raise ValueError("sibling index must be >= 1")

    @property
    def reduced(self) -> tuple:
        return (self.length, self.neighbours)

    def describe(self) -> str:
        nb = ", ".join(f"({a}, {L})" for a, L in self.neighbours)
        return f"({self.length}, ({nb}), {self.sibling_index})"

    def to_json(self) -> dict:
        return {
            "length": self.length.to_json(),
            "neighbours": [[a.to_json(), L.to_json()] for a, L in self.neighbours],
            "sibling_index": self.sibling_index,
        }


def root_vector(field: NumberField) -> CharacteristicVector:
    """The characteristic vector ``(1, ((0, 1)), 1)`` of [0, 1]."""
    return CharacteristicVector(field.one, ((field.zero, field.one),), 1)


@dataclass(frozen=True)
class Child:
    """A child net interval in the parent's normalized coordinates.

    ``offset`` is the child's left endpoint inside ``[0, parent.length]``.
    ``raw`` maps (parent neighbour index, child neighbour index) to the tuple
    of extension words realizing that transition.
    """

    vector: CharacteristicVector
    offset: FieldElement
    raw: dict


def _extension_words(ifs: IFS, bound: FieldElement) -> list[tuple]:
    # words t with |r_t| <= bound < |r_{t^-}|; bound < 1 so t is nonempty
    slopes = [abs(m.r) for m in ifs.maps]
    out = []

    def extend(word, size):
        for j, s in enumerate(slopes):
            w, sz = word + (j,), size * s
            if sz <= bound:
                out.append(w)
            else:
                extend(w, sz)

    extend((), ifs.field.one)
    return out


def _child_pieces(ifs: IFS, neighbours):
    # every generation-(n+1) basic interval meeting the parent, as (i, word, M, c)
    # with map x -> M x + c in parent-normalized coordinates
    rmin = ifs.r_min
    cache: dict = {}
    pieces = []
    for i, (a, L) in enumerate(neighbours):
        key = abs(L)
        if key not in cache:
            cache[key] = [(w, compose(ifs, w)) for w in _extension_words(ifs, rmin / key)]
        for w, S in cache[key]:
            M = L * S.r
            c = L * S.t - a
            lo, hi = (c, c + M) if M.sign() > 0 else (c + M, c)
            pieces.append((i, w, M, c, lo, hi))
    return pieces


def children(ifs: IFS, cv: CharacteristicVector) -> list[Child]:
    """Children of a net interval with vector ``cv``, left to right.

    Subintervals not covered by any basic interval of the next generation
    are gaps of the attractor and are not returned.
    """
    rmin = ifs.r_min
    length = cv.length
    zero = ifs.field.zero
    pieces = _child_pieces(ifs, cv.neighbours)
    points = {zero, length}
    for _, _, _, _, lo, hi in pieces:
        for x in (lo, hi):
            if zero < x < length:
                points.add(x)
    cuts = sorted(points)
    reduced = []
    for u, v in zip(cuts, cuts[1:]):
        covering = [p for p in pieces if p[4] <= u and v <= p[5]]
        if not covering:
            continue
        nbs = {}
        for i, w, M, c, _, _ in covering:
            nb = ((u - c) / rmin, M / rmin)
            nbs.setdefault(nb, []).append((i, w))
        order = sorted(nbs)
        index = {nb: k for k, nb in enumerate(order)}
        raw: dict = {}
        for nb, realizers in nbs.items():
            for i, w in realizers:
                raw.setdefault((i, index[nb]), []).append(w)
        raw = {key: tuple(ws) for key, ws in raw.items()}
        reduced.append(((v - u) / rmin, tuple(order), u, raw))
    seen: Counter = Counter()
    out = []
    for ell, order, u, raw in reduced:
        seen[(ell, order)] += 1
        out.append(Child(CharacteristicVector(ell, order, seen[(ell, order)]), u, raw))
    return out


@dataclass(frozen=True)
class Edge:
    parent: int
    child: int
    order: int
    offset: FieldElement
    raw: dict
    matrix: TransitionMatrix


@dataclass
class VectorGraph:
    """Transition graph on characteristic vectors (ids start at 1, root is 1).

    ``edges[v]`` lists the children of ``v`` left to right.
    """

    ifs: IFS
    vectors: dict[int, CharacteristicVector]
    edges: dict[int, tuple[Edge, ...]]
    root: int = 1
    _edge_index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self._edge_index = {(e.parent, e.child): e for es in self.edges.values() for e in es}

    def __len__(self):
        return len(self.vectors)

    @property
    def field(self) -> NumberField:
        return self.ifs.field

    def children(self, v: int) -> list[int]:
        return [e.child for e in self.edges.get(v, ())]

    def edge(self, parent: int, child: int) -> Edge:
        try:
            return self._edge_index[(parent, child)]
        except KeyError:
            raise ValueError(f"non-admissible step {parent} -> {child}") from None

    def check_path(self, path: Sequence[int], from_root: bool = False) -> None:
        if not path:
            raise ValueError("empty path")
        if from_root and path[0] != self.root:
            raise ValueError("path must start at the root vector")
        for v in path:
            if v not in self.vectors:
                raise ValueError(f"unknown vector id {v}")
        for a, b in zip(path, path[1:]):
            self.edge(a, b)

    @cached_property
    def reduced_labels(self) -> dict[int, int]:
        """Map vector id -> reduced-vector label, numbered by first appearance."""
        labels: dict = {}
        out = {}
        for v in sorted(self.vectors):
            key = self.vectors[v].reduced
            labels.setdefault(key, len(labels) + 1)
            out[v] = labels[key]
        return out

    @property
    def num_reduced(self) -> int:
        return len(set(self.reduced_labels.values()))

    @cached_property
    def loops(self):
        return decompose(self)

    @property
    def essential(self) -> frozenset:
        return self.loops.essential

    def reweight(self, probs) -> "VectorGraph":
        """Same structure under new probabilities; matrices are rebuilt."""
        ifs = self.ifs.with_probs(probs)
        edges = {
            v: tuple(
                Edge(e.parent, e.child, e.order, e.offset, e.raw,
                     primitive_matrix(ifs, self.vectors[e.parent], self.vectors[e.child], e.raw))
                for e in es
            )
            for v, es in self.edges.items()
        }
        return VectorGraph(ifs, dict(self.vectors), edges, self.root)


def build_vector_graph(ifs: IFS, max_vectors: int = DEFAULT_MAX_VECTORS, prune: bool = True) -> VectorGraph:
    """Breadth-first closure of the characteristic vectors under ``children``."""
    if max_vectors < 1:
        raise ValueError("max_vectors must be >= 1")
    root = root_vector(ifs.field)
    ids = {root: 1}
    vectors = {1: root}
    edges: dict[int, tuple[Edge, ...]] = {}
    cache: dict = {}
    queue = deque([1])
    while queue:
        v = queue.popleft()
        cv = vectors[v]
        if cv.reduced not in cache:
            cache[cv.reduced] = children(ifs, cv)
        out = []
        for order, ch in enumerate(cache[cv.reduced]):
            if ch.vector not in ids:
                if len(ids) >= max_vectors:
                    edges[v] = tuple(out)
                    partial = VectorGraph(ifs, vectors, edges)
                    raise NotFiniteTypeError(
                        f"more than {max_vectors} characteristic vectors; the IFS may not be of finite type",
                        partial,
                    )
                ids[ch.vector] = len(ids) + 1
                vectors[ids[ch.vector]] = ch.vector
                queue.append(ids[ch.vector])
            c = ids[ch.vector]
            T = primitive_matrix(ifs, cv, ch.vector, ch.raw)
            out.append(Edge(v, c, order, ch.offset, ch.raw, T))
        edges[v] = tuple(out)
    graph = VectorGraph(ifs, vectors, edges)
    return prune_to_attractor(graph) if prune else graph


def prune_to_attractor(graph: VectorGraph) -> VectorGraph:
    """Drop vectors from which no cycle is reachable, then renumber breadth-first.

    A candidate net interval meets the attractor exactly when it has
    descendants in every generation; in a finite graph that means reaching
    a cycle.
    """
    succ = {v: graph.children(v) for v in graph.vectors}
    pred: dict = {v: set() for v in graph.vectors}
    for v, cs in succ.items():
        for c in cs:
            pred[c].add(v)
    # nodes on cycles: members of nontrivial SCCs or with self-loops
    g = _digraph(graph)
    alive = set()
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1 or any(v in succ[v] for v in comp):
            alive |= comp
    stack = list(alive)
    while stack:
        v = stack.pop()
        for p in pred[v]:
            if p not in alive:
                alive.add(p)
                stack.append(p)
    if graph.root not in alive:
        raise StructuralError("the root interval does not meet the attractor")
    # renumber breadth-first over surviving edges, keeping child order
    new_id = {graph.root: 1}
    queue = deque([graph.root])
    while queue:
        v = queue.popleft()
        for c in succ[v]:
            if c in alive and c not in new_id:
                new_id[c] = len(new_id) + 1
                queue.append(c)
    vectors = {new_id[v]: graph.vectors[v] for v in new_id}
    edges = {}
    for v in new_id:
        kept = [e for e in graph.edges[v] if e.child in alive]
        if not kept:
            raise StructuralError(f"vector {v} meets the attractor but has no children")
        edges[new_id[v]] = tuple(
            Edge(new_id[v], new_id[e.child], e.order, e.offset, e.raw, e.matrix) for e in kept
        )
    return VectorGraph(graph.ifs, vectors, edges)


@dataclass(frozen=True)
class NetIntervalInstance:
    generation: int
    a: FieldElement
    b: FieldElement
    vector: CharacteristicVector
    path: tuple[int, ...]


def instantiate_path(graph: VectorGraph, path: Sequence[int]) -> NetIntervalInstance:
    """Exact endpoints of the net interval with symbolic representation ``path``."""
    graph.check_path(path, from_root=True)
    f = graph.field
    rmin = graph.ifs.r_min
    a, scale = f.zero, f.one
    for p, c in zip(path, path[1:]):
        a = a + scale * graph.edge(p, c).offset
        scale = scale * rmin
    cv = graph.vectors[path[-1]]
    return NetIntervalInstance(len(path) - 1, a, a + scale * cv.length, cv, tuple(path))


def net_intervals(graph: VectorGraph, n: int) -> Iterator[NetIntervalInstance]:
    """All generation-``n`` net intervals, left to right."""
    rmin = graph.ifs.r_min
    f = graph.field

    def walk(path, a, scale):
        if len(path) - 1 == n:
            cv = graph.vectors[path[-1]]
            yield NetIntervalInstance(n, a, a + scale * cv.length, cv, path)
            return
        for e in graph.edges[path[-1]]:
            yield from walk(path + (e.child,), a + scale * e.offset, scale * rmin)

    yield from walk((graph.root,), f.zero, f.one)


def adjacent_path(graph: VectorGraph, path: Sequence[int], side: int) -> tuple[int, ...] | None:
    """Symbolic path of the same-generation net interval to the left (-1) or right (+1)."""
    path = tuple(path)
    for depth in range(len(path) - 1, 0, -1):
        sibs = graph.children(path[depth - 1])
        k = sibs.index(path[depth]) + side
        if 0 <= k < len(sibs):
            out = list(path[:depth]) + [sibs[k]]
            while len(out) < len(path):
                kids = graph.children(out[-1])
                out.append(kids[-1] if side < 0 else kids[0])
            return tuple(out)
    return None
