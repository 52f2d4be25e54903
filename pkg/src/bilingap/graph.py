"""Signed weighted graphs on vertices 1..n with bitmask vertex subsets.

A graph is identified with the bilinear function b(x) = sum a_ij x_i x_j over
its weighted edges, so "graph" and "instance" are used interchangeably.
Subsets are stored as bitmasks (vertex v <-> bit v-1), which caps n at 63.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import CapacityError, InputError

MAX_VERTICES = 63


@dataclass(frozen=True, order=True)
class VertexSubset:
    """Immutable set of 1-based vertex indices backed by a bitmask."""

    mask: int = 0

    def __post_init__(self) -> None:
        if self.mask < 0:
            raise InputError("vertex subset mask must be non-negative")

    @classmethod
    def from_members(cls, members: Iterable[int]) -> "VertexSubset":
        m = 0
        for v in members:
            v = int(v)
            if v < 1:
                raise InputError(f"vertex indices are 1-based, got {v}")
            if v > MAX_VERTICES:
                raise CapacityError(f"vertex {v} exceeds the bitmask cap of {MAX_VERTICES}")
            m |= 1 << (v - 1)
        return cls(m)

    @classmethod
    def of(cls, *members: int) -> "VertexSubset":
        return cls.from_members(members)

    @classmethod
    def full(cls, n: int) -> "VertexSubset":
        if not 0 <= n <= MAX_VERTICES:
            raise CapacityError(f"full subset needs 0 <= n <= {MAX_VERTICES}, got {n}")
        return cls((1 << n) - 1)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(self)

    def __contains__(self, v: int) -> bool:
        return v >= 1 and bool(self.mask >> (v - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length()
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def issubset(self, other: "VertexSubset") -> bool:
        return self.mask & ~other.mask == 0

    def union(self, other: "VertexSubset") -> "VertexSubset":
        return VertexSubset(self.mask | other.mask)

    def intersection(self, other: "VertexSubset") -> "VertexSubset":
        return VertexSubset(self.mask & other.mask)

    def difference(self, other: "VertexSubset") -> "VertexSubset":
        return VertexSubset(self.mask & ~other.mask)


@dataclass(frozen=True)
class SignedWeightedGraph:
    """Simple undirected graph with nonzero real edge weights.

    Edges are stored canonically as (i, j, weight) with 1 <= i < j <= n, sorted
    lexicographically.  Construction validates the whole edge list; instances
    are immutable afterwards.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"vertex count must be a positive integer, got {self.n!r}")
        if self.n > MAX_VERTICES:
            raise CapacityError(
                f"vertex count {self.n} exceeds the bitmask cap of {MAX_VERTICES}"
            )
        canon = []
        seen = set()
        for e in self.edges:
            try:
                i, j, w = e
            except (TypeError, ValueError):
                raise InputError(f"edge {e!r} is not an (i, j, weight) triple") from None
            i, j, w = int(i), int(j), float(w)
            if not 1 <= i < j <= self.n:
                raise InputError(f"edge ({i}, {j}) must satisfy 1 <= i < j <= {self.n}")
            if w == 0.0:
                raise InputError(f"edge ({i}, {j}) has zero weight; omit absent edges")
            if not np.isfinite(w):
                raise InputError(f"edge ({i}, {j}) has non-finite weight {w!r}")
            if (i, j) in seen:
                raise InputError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            canon.append((i, j, w))
        canon.sort(key=lambda e: (e[0], e[1]))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def vertices(self) -> VertexSubset:
        return VertexSubset.full(self.n)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def total_abs_weight(self) -> float:
        return float(sum(abs(w) for _, _, w in self.edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        """adjacency[v] lists (neighbor, weight) pairs, neighbors ascending; index 0 unused."""
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n + 1)]
        for i, j, w in self.edges:
            adj[i].append((j, w))
            adj[j].append((i, w))
        for lst in adj:
            lst.sort()
        return tuple(tuple(lst) for lst in adj)

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        """Dense symmetric (n+1, n+1) weight matrix with zero diagonal; row/col 0 unused."""
        m = np.zeros((self.n + 1, self.n + 1))
        for i, j, w in self.edges:
            m[i, j] = w
            m[j, i] = w
        m.setflags(write=False)
        return m

    def weight(self, i: int, j: int) -> float:
        """Weight of edge {i, j}, or 0.0 if absent."""
        if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
            raise InputError(f"({i}, {j}) is not a vertex pair of a graph on {self.n} vertices")
        return float(self.weight_matrix[i, j])


@dataclass(frozen=True)
class Cut:
    """One side of a cut of the subgraph induced by ground_set."""

    ground_set: VertexSubset
    side: VertexSubset
    weight: float

    def __post_init__(self) -> None:
        if not self.side.issubset(self.ground_set):
            raise InputError("cut side must be a subset of the ground set")


def _check_subset(g: SignedWeightedGraph, x: VertexSubset) -> None:
    if not x.issubset(g.vertices):
        raise InputError(
            f"subset {sorted(x.members)} is not contained in the vertex set 1..{g.n}"
        )


def gamma_weight(g: SignedWeightedGraph, x: VertexSubset) -> float:
    """Total signed weight of edges with both endpoints in x."""
    _check_subset(g, x)
    m = x.mask
    return float(sum(w for i, j, w in g.edges if m >> (i - 1) & 1 and m >> (j - 1) & 1))


def gamma_abs_weight(g: SignedWeightedGraph, x: VertexSubset) -> float:
    """Total absolute weight of edges with both endpoints in x."""
    _check_subset(g, x)
    m = x.mask
    return float(sum(abs(w) for i, j, w in g.edges if m >> (i - 1) & 1 and m >> (j - 1) & 1))


def cut_weight(g: SignedWeightedGraph, x: VertexSubset, u: VertexSubset) -> float:
    """Signed weight of edges inside x crossing between u and x minus u."""
    _check_subset(g, x)
    if not u.issubset(x):
        raise InputError("cut side must be a subset of the ground set")
    xm, um = x.mask, u.mask
    total = 0.0
    for i, j, w in g.edges:
        bi, bj = i - 1, j - 1
        if xm >> bi & 1 and xm >> bj & 1 and (um >> bi & 1) != (um >> bj & 1):
            total += w
    return float(total)


def cross_weight(g: SignedWeightedGraph, a: VertexSubset, b: VertexSubset) -> float:
    """Signed weight of edges with one endpoint in a and the other in b (disjoint sets)."""
    _check_subset(g, a)
    _check_subset(g, b)
    if a.mask & b.mask:
        raise InputError("cross_weight requires disjoint subsets")
    am, bm = a.mask, b.mask
    total = 0.0
    for i, j, w in g.edges:
        bi, bj = 1 << (i - 1), 1 << (j - 1)
        if (am & bi and bm & bj) or (am & bj and bm & bi):
            total += w
    return float(total)


# ---------------------------------------------------------------------------
# Instance files.  JSON: {"n": int, "edges": [[i, j, weight], ...]}.
# Text: one "i j weight" line per edge, '#' comments and blank lines ignored,
# first non-comment line "n <count>".  Weights round-trip exactly in both
# formats (shortest-repr float serialization).
# ---------------------------------------------------------------------------


def to_json_dict(g: SignedWeightedGraph) -> dict:
    return {"n": g.n, "edges": [[i, j, w] for i, j, w in g.edges]}


def from_json_dict(data: dict) -> SignedWeightedGraph:
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise InputError('instance JSON must be an object with "n" and "edges"')
    n = data["n"]
    edges = data["edges"]
    if not isinstance(n, int):
        raise InputError(f'"n" must be an integer, got {n!r}')
    if not isinstance(edges, list):
        raise InputError('"edges" must be an array of [i, j, weight] triples')
    return SignedWeightedGraph(n, tuple(tuple(e) for e in edges))


def dumps_json(g: SignedWeightedGraph) -> str:
    return json.dumps(to_json_dict(g))


def loads_json(text: str) -> SignedWeightedGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid instance JSON: {exc}") from None
    return from_json_dict(data)


def dumps_text(g: SignedWeightedGraph) -> str:
    # The vertex count rides in a comment so the body stays pure edge triples;
    # it preserves trailing isolated vertices across a round trip.
    lines = [f"# n {g.n}"]
    lines += [f"{i} {j} {w!r}" for i, j, w in g.edges]
    return "\n".join(lines) + "\n"


def loads_text(text: str) -> SignedWeightedGraph:
    """Parse "i j weight" lines; '#' comments and blank lines are ignored.

    A "# n <count>" comment (or a bare "n <count>" line) pins the vertex
    count; otherwise it is inferred as the largest endpoint.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line, _, comment = raw.partition("#")
        cparts = comment.split()
        if n is None and len(cparts) == 2 and cparts[0] == "n":
            try:
                n = int(cparts[1])
            except ValueError:
                raise InputError(f"line {lineno}: bad vertex count {cparts[1]!r}") from None
        parts = line.split()
        if not parts:
            continue
        if n is None and len(parts) == 2 and parts[0] == "n" and not edges:
            try:
                n = int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            continue
        if len(parts) != 3:
            raise InputError(f'line {lineno}: expected "i j weight", got {raw!r}')
        try:
            edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
        except ValueError:
            raise InputError(f"line {lineno}: bad edge line {raw!r}") from None
    if n is None:
        if not edges:
            raise InputError("instance text has no edges and no vertex count marker")
        n = max(max(i, j) for i, j, _ in edges)
    return SignedWeightedGraph(n, tuple(edges))


def write_instance(g: SignedWeightedGraph, path: str | Path, fmt: str | None = None) -> None:
    """Write an instance file; fmt 'json' or 'text', default from the extension."""
    path = Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "text")
    if fmt == "json":
        path.write_text(dumps_json(g) + "\n")
    elif fmt == "text":
        path.write_text(dumps_text(g))
    else:
        raise InputError(f"unknown instance format {fmt!r} (expected 'json' or 'text')")


def read_instance(path: str | Path, fmt: str | None = None) -> SignedWeightedGraph:
    """Read an instance file, sniffing JSON vs text from extension then content."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read instance file {path}: {exc}") from None
    if fmt is None:
        fmt = "json" if path.suffix == ".json" or text.lstrip().startswith("{") else "text"
    if fmt == "json":
        return loads_json(text)
    if fmt == "text":
        return loads_text(text)
    raise InputError(f"unknown instance format {fmt!r} (expected 'json' or 'text')")
