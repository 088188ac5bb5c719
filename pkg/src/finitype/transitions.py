"""Transition matrices, loop classes and the essential class.

Matrices follow the row-vector convention ``Q_n = Q_{n-1} T``: rows are
indexed by the parent's neighbours and columns by the child's.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .numberfield import FieldElement, NumberField

__all__ = [
    "StructuralError",
    "ModelViolation",
    "TransitionMatrix",
    "LoopDecomposition",
    "primitive_matrix",
    "path_matrix",
    "decompose",
    "is_positive_type",
    "PositiveType",
    "UNKNOWN",
]


class StructuralError(RuntimeError):
    """An internal invariant of the construction was violated."""


class ModelViolation(RuntimeError):
    """The transition graph contradicts a structural fact about finite type IFS."""


class TransitionMatrix:
    """Dense nonnegative matrix with exact :class:`FieldElement` entries."""

    __slots__ = ("entries", "rows", "cols", "field")

    def __init__(self, entries: Sequence[Sequence[FieldElement]], field: NumberField | None = None):
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged matrix")
        self.field = field if field is not None else self.entries[0][0].field

    @classmethod
    def identity(cls, field: NumberField, n: int) -> "TransitionMatrix":
        one, zero = field.one, field.zero
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], field)

    @classmethod
    def from_values(cls, field: NumberField, values) -> "TransitionMatrix":
        return cls([[field(v) for v in row] for row in values], field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        if self.cols != other.rows:
            raise StructuralError(f"dimension mismatch: {self.shape} @ {other.shape}")
        zero = self.field.zero
        out = []
        for row in self.entries:
            new = []
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(row):
                    if not a.is_zero():
                        b = other.entries[k][j]
                        if not b.is_zero():
                            acc = acc + a * b
                new.append(acc)
            out.append(new)
        return TransitionMatrix(out, self.field)

    def __pow__(self, n: int) -> "TransitionMatrix":
        if not self.is_square():
            raise StructuralError("only square matrices have powers")
        result = TransitionMatrix.identity(self.field, self.rows)
        for _ in range(n):
            result = result @ self
        return result

    def __eq__(self, other):
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def norm(self) -> FieldElement:
        """Entrywise 1-norm (all entries are nonnegative)."""
        return sum((x for row in self.entries for x in row), self.field.zero)

    def row_sums(self) -> list[FieldElement]:
        return [sum(row, self.field.zero) for row in self.entries]

    def col_sums(self) -> list[FieldElement]:
        return [sum((row[j] for row in self.entries), self.field.zero) for j in range(self.cols)]

    def pattern(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(not x.is_zero() for x in row) for row in self.entries)

    def is_positive(self) -> bool:
        return all(all(row) for row in self.pattern())

    def is_lower_triangular(self) -> bool:
        return all(self.entries[i][j].is_zero() for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_upper_triangular(self) -> bool:
        return all(self.entries[i][j].is_zero() for i in range(self.rows) for j in range(min(i, self.cols)))

    def to_float(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self.entries]

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.entries]

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"TransitionMatrix([{body}])"


def primitive_matrix(ifs, parent, child, raw: Mapping[tuple[int, int], Sequence[tuple]]) -> TransitionMatrix:
    """Primitive transition matrix from parent to child characteristic vector.

    ``raw`` maps (parent neighbour, child neighbour) to the extension words
    realizing that transition; the entry is the sum of their weights.
    """
    f = ifs.field
    rows, cols = len(parent.neighbours), len(child.neighbours)
    entries = [[f.zero] * cols for _ in range(rows)]
    for (i, j), words in raw.items():
        for w in words:
            entries[i][j] = entries[i][j] + ifs.weight(w)
    T = TransitionMatrix(entries, f)
    for j, s in enumerate(T.col_sums()):
        if s.is_zero():
            raise StructuralError(f"column {j} of a primitive transition matrix is zero")
    return T


def path_matrix(graph, path: Sequence[int]) -> TransitionMatrix:
    """``T(g0, g1) T(g1, g2) ... T(g_{n-1}, g_n)`` for an admissible path."""
    if not path:
        raise ValueError("empty path")
    T = TransitionMatrix.identity(graph.field, len(graph.vectors[path[0]].neighbours))
    for a, b in zip(path, path[1:]):
        T = T @ graph.edge(a, b).matrix
    return T


@dataclass(frozen=True)
class LoopDecomposition:
    """Strongly connected components, ordered by their smallest vector id."""

    classes: tuple[frozenset, ...]
    essential_index: int

    @property
    def essential(self) -> frozenset:
        return self.classes[self.essential_index]

    def class_of(self, node: int) -> frozenset:
        for c in self.classes:
            if node in c:
                return c
        raise KeyError(node)


def _digraph(graph) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(graph.vectors)
    for parent, edges in graph.edges.items():
        for e in edges:
            g.add_edge(parent, e.child)
    return g


def decompose(graph) -> LoopDecomposition:
    """Loop classes of the transition graph and its unique essential class."""
    g = _digraph(graph)
    classes = sorted((frozenset(c) for c in nx.strongly_connected_components(g)), key=min)
    terminal = [
        i for i, c in enumerate(classes) if all(s in c for v in c for s in g.successors(v))
    ]
    if len(terminal) != 1:
        raise ModelViolation(
            f"expected exactly one terminal loop class, found {len(terminal)}: "
            + ", ".join(str(sorted(classes[i])) for i in terminal)
        )
    return LoopDecomposition(tuple(classes), terminal[0])


@dataclass(frozen=True)
class PositiveType:
    """Witness path inside a loop class whose transition matrix is positive."""

    path: tuple[int, ...]

    def __bool__(self):
        return True


class _Unknown:
    def __repr__(self):
        return "UNKNOWN"

    def __bool__(self):
        return False


UNKNOWN = _Unknown()


def _bool_matmul(a, b):
    return tuple(
        tuple(any(a[i][k] and b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def is_positive_type(graph, nodes: Iterable[int], max_path_len: int):
    """Search for an admissible path in ``nodes`` with an entrywise positive matrix.

    Breadth-first over zero patterns, so the first witness found is shortest.
    Returns :class:`PositiveType` or :data:`UNKNOWN`.
    """
    nodes = frozenset(nodes)
    if max_path_len < 1:
        return UNKNOWN
    queue = deque()
    seen = set()
    for v in sorted(nodes):
        for e in graph.edges.get(v, ()):
            if e.child in nodes:
                pat = e.matrix.pattern()
                state = (v, e.child, pat)
                if state not in seen:
                    seen.add(state)
                    queue.append((state, (v, e.child)))
    while queue:
        (start, end, pat), path = queue.popleft()
        if all(all(row) for row in pat):
            return PositiveType(path)
        if len(path) - 1 >= max_path_len:
            continue
        for e in graph.edges.get(end, ()):
            if e.child in nodes:
                new = (start, e.child, _bool_matmul(pat, e.matrix.pattern()))
                if new not in seen:
                    seen.add(new)
                    queue.append((new, path + (e.child,)))
    return UNKNOWN
