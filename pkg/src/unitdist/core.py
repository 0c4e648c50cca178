"""Immutable bit-row graphs over dense vertex indices.

Every graph in this package is stored the same way: ``n`` vertices numbered
0..n-1 and one Python integer per vertex whose set bits are its neighbours.
Geometry (integer coordinates plus one squared adjacency distance) lives in a
separate PointCloud sidecar, so solver code never touches coordinates.
All arithmetic is exact integer arithmetic; there is no floating point
anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass


class DuplicatePointError(ValueError):
    """Raised when a point cloud contains the same point twice."""

    def __init__(self, first: int, second: int, point: tuple[int, ...]):
        self.indices = (first, second)
        self.point = point
        super().__init__(f"duplicate point at indices {first} and {second}: {point}")


def iter_bits(mask: int):
    """Yield the indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        mask ^= low
        yield low.bit_length() - 1


def mask_from_indices(indices) -> int:
    mask = 0
    for v in indices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class VertexSet:
    """A set of vertices of a fixed-width graph, stored as a bit mask."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative width")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bit mask out of range for width {self.n}")

    @classmethod
    def from_indices(cls, n: int, indices) -> "VertexSet":
        return cls(n, mask_from_indices(indices))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(n, 0)

    def indices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self.bits >> v) & 1 == 1

    def __iter__(self):
        return iter_bits(self.bits)


@dataclass(frozen=True)
class Graph:
    """Undirected loop-free graph with one adjacency bit row per vertex.

    Immutable after construction; construction validates symmetry and
    loop-freeness, so a Graph instance is always structurally sound.
    """

    n: int
    adj: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        if len(self.adj) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        limit = 1 << self.n
        transpose = [0] * self.n
        for v, row in enumerate(self.adj):
            if not 0 <= row < limit:
                raise ValueError(f"adjacency row {v} out of range")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in iter_bits(row):
                transpose[w] |= 1 << v
        if tuple(transpose) != tuple(self.adj):
            raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges, name: str = "") -> "Graph":
        adj = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range for n={n}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(n, tuple(adj), name)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return (self.adj[i] >> j) & 1 == 1

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self):
        """Yield each undirected edge once, as (i, j) with i < j, sorted."""
        for i in range(self.n):
            higher = self.adj[i] >> (i + 1)
            for off in iter_bits(higher):
                yield (i, i + 1 + off)

    def vertex_set(self, indices) -> VertexSet:
        return VertexSet.from_indices(self.n, indices)


@dataclass(frozen=True)
class PointCloud:
    """Integer points plus the single squared distance that defines adjacency.

    Whenever the squared adjacency distance is a perfect square k*k, dividing
    all coordinates by k turns the cloud into a genuine unit-distance
    realization with rational coordinates.
    """

    dim: int
    points: tuple[tuple[int, ...], ...]
    adjacency_sq_dist: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("negative dimension")
        if self.adjacency_sq_dist <= 0:
            raise ValueError("squared adjacency distance must be positive")
        seen: dict[tuple[int, ...], int] = {}
        for i, p in enumerate(self.points):
            if len(p) != self.dim:
                raise ValueError(f"point {i} has length {len(p)}, expected {self.dim}")
            for c in p:
                if not isinstance(c, int) or isinstance(c, bool):
                    raise ValueError(f"point {i} has non-integer coordinate {c!r}")
            if p in seen:
                raise DuplicatePointError(seen[p], i, p)
            seen[p] = i

    def __len__(self) -> int:
        return len(self.points)


def sq_dist(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    s = 0
    for x, y in zip(a, b):
        t = x - y
        s += t * t
    return s


def graph_from_points(cloud: PointCloud, name: str = "") -> Graph:
    """Graph on the cloud's points, i ~ j iff their squared distance equals
    the cloud's adjacency distance. Vertex order matches point order."""
    n = len(cloud.points)
    target = cloud.adjacency_sq_dist
    adj = [0] * n
    pts = cloud.points
    for i in range(n):
        pi = pts[i]
        for j in range(i + 1, n):
            if sq_dist(pi, pts[j]) == target:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, tuple(adj), name)


def induced_subgraph(g: Graph, keep: VertexSet) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on ``keep``, plus the old->new index map.

    New indices preserve the relative order of the kept old indices.
    """
    if keep.n != g.n:
        raise ValueError(f"vertex set width {keep.n} does not match graph n={g.n}")
    old = keep.indices()
    index_map = {v: i for i, v in enumerate(old)}
    bits = keep.bits
    adj = []
    for v in old:
        row = g.adj[v] & bits
        new_row = 0
        for w in iter_bits(row):
            new_row |= 1 << index_map[w]
        adj.append(new_row)
    sub = Graph(len(old), tuple(adj), name=f"{g.name}[{len(old)}]" if g.name else "")
    return sub, index_map


def degree_profile(g: Graph) -> tuple[int, int, bool]:
    """(min degree, max degree, is_regular); (0, 0, True) for the empty graph."""
    if g.n == 0:
        return (0, 0, True)
    degs = [row.bit_count() for row in g.adj]
    lo, hi = min(degs), max(degs)
    return (lo, hi, lo == hi)


def connected_components(g: Graph) -> list[VertexSet]:
    """Maximal connected classes, ordered by their smallest vertex index."""
    comps = []
    unseen = g.full_mask
    while unseen:
        low = unseen & -unseen
        comp = low
        frontier = low
        while frontier:
            grown = 0
            for v in iter_bits(frontier):
                grown |= g.adj[v]
            frontier = grown & ~comp
            comp |= frontier
        comps.append(VertexSet(g.n, comp))
        unseen &= ~comp
    return comps


def is_bipartite(g: Graph) -> tuple[bool, tuple[int, ...] | None]:
    """Whether g has no odd cycle; on success also a 2-coloring witness.

    Witness colors are 1 and 2 (isolated vertices get 1).
    """
    side = [0] * g.n  # 0 = unvisited
    unseen = g.full_mask
    while unseen:
        start = (unseen & -unseen).bit_length() - 1
        side[start] = 1
        frontier = 1 << start
        seen = frontier
        color = 1
        while frontier:
            grown = 0
            for v in iter_bits(frontier):
                grown |= g.adj[v]
            frontier = grown & ~seen
            seen |= frontier
            color = 3 - color
            for v in iter_bits(frontier):
                side[v] = color
        unseen &= ~seen
    # valid iff no edge joins two vertices of the same side
    mask1 = mask_from_indices(v for v in range(g.n) if side[v] == 1)
    mask2 = g.full_mask ^ mask1
    for v in range(g.n):
        same = mask1 if side[v] == 1 else mask2
        if g.adj[v] & same:
            return (False, None)
    return (True, tuple(side))


def ratio_lower_bound(n_vertices: int, alpha: int) -> int:
    """ceil(n/alpha): sets of pairwise non-adjacent vertices have size at most
    alpha, so any proper coloring needs at least this many classes."""
    if not isinstance(n_vertices, int) or not isinstance(alpha, int):
        raise ValueError("exact integer arguments required")
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    if n_vertices < 1:
        raise ValueError("vertex count must be at least 1")
    return -(-n_vertices // alpha)


@dataclass(frozen=True)
class BoundReport:
    """Summary of what is known about one graph's chromatic number."""

    graph_name: str
    n_vertices: int
    alpha: int | None = None
    chi_lower: int | None = None
    chi_exact: int | None = None
    witness_path: str | None = None

    def __post_init__(self):
        if self.alpha is not None:
            expect = ratio_lower_bound(self.n_vertices, self.alpha)
            if self.chi_lower != expect:
                raise ValueError(
                    f"chi_lower {self.chi_lower} inconsistent with "
                    f"ceil({self.n_vertices}/{self.alpha}) = {expect}"
                )
        if self.chi_exact is not None and self.chi_lower is not None:
            if self.chi_exact < self.chi_lower:
                raise ValueError(
                    f"chi_exact {self.chi_exact} below lower bound {self.chi_lower}"
                )
