"""Graph and digraph types plus the product / Mycielski constructors.

Vertices are always labeled 0..n-1.  Both `Graph` and `Digraph` are immutable
after construction: adjacency is stored as sorted neighbor tuples together
with one integer bitset per vertex, so membership tests are O(1) and values
can be shared freely across threads.

Product graphs use row-major vertex pairing, (f, g) -> f * |V(G)| + g, and
power graphs extend this to mixed-radix coordinates (leftmost coordinate most
significant).  `power_index` / `power_coords` / `PowerVertex` convert between
the flat and the structured view.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, SizeLimitError

DEFAULT_MAX_VERTICES = 4096


def max_vertices() -> int:
    """Vertex bound for all constructions; override via MYCTHETA_MAX_VERTICES."""
    raw = os.environ.get("MYCTHETA_MAX_VERTICES")
    if raw is None:
        return DEFAULT_MAX_VERTICES
    try:
        value = int(raw)
    except ValueError as exc:
        raise DomainError(f"MYCTHETA_MAX_VERTICES is not an integer: {raw!r}") from exc
    if value < 1:
        raise DomainError("MYCTHETA_MAX_VERTICES must be positive")
    return value


def _check_size(n: int, what: str = "graph") -> None:
    bound = max_vertices()
    if n > bound:
        raise SizeLimitError(f"{what} needs {n} vertices, exceeding the bound {bound}")


class Graph:
    """Simple undirected graph: no loops, symmetric adjacency."""

    __slots__ = ("n", "neighbors", "bits", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise DomainError("vertex count must be non-negative")
        _check_size(n)
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise DomainError(f"self-loop at vertex {u} not allowed")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.neighbors = tuple(tuple(sorted(s)) for s in adj)
        self.bits = tuple(sum(1 << v for v in s) for s in adj)
        self._edges = tuple(
            (u, v) for u in range(n) for v in self.neighbors[u] if u < v
        )

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.bits[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def complement(self) -> "Graph":
        return Graph(
            self.n,
            (
                (u, v)
                for u in range(self.n)
                for v in range(u + 1, self.n)
                if not self.has_edge(u, v)
            ),
        )

    def subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex i of the result is vertices[i]."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise DomainError("duplicate vertices in subgraph selection")
        edges = [
            (index[u], index[v])
            for u, v in self._edges
            if u in index and v in index
        ]
        return Graph(len(vertices), edges)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self._edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class Digraph:
    """Directed graph without loops; antiparallel arc pairs are allowed."""

    __slots__ = ("n", "out_neighbors", "in_neighbors", "out_bits", "in_bits", "_arcs")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise DomainError("vertex count must be non-negative")
        _check_size(n)
        out: list[set[int]] = [set() for _ in range(n)]
        inn: list[set[int]] = [set() for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise DomainError(f"self-loop at vertex {u} not allowed")
            out[u].add(v)
            inn[v].add(u)
        self.n = n
        self.out_neighbors = tuple(tuple(sorted(s)) for s in out)
        self.in_neighbors = tuple(tuple(sorted(s)) for s in inn)
        self.out_bits = tuple(sum(1 << v for v in s) for s in out)
        self.in_bits = tuple(sum(1 << v for v in s) for s in inn)
        self._arcs = tuple(
            (u, v) for u in range(n) for v in self.out_neighbors[u]
        )

    @property
    def m(self) -> int:
        return len(self._arcs)

    def arcs(self) -> tuple[tuple[int, int], ...]:
        return self._arcs

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_bits[u] >> v & 1)

    def out_degree(self, v: int) -> int:
        return len(self.out_neighbors[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbors[v])

    def reverse(self) -> "Digraph":
        return Digraph(self.n, ((v, u) for u, v in self._arcs))

    def underlying(self) -> Graph:
        return Graph(self.n, self._arcs)

    def bidirected_graph(self) -> Graph:
        """Graph on the same vertices whose edges are the 2-cycles of D."""
        return Graph(
            self.n,
            ((u, v) for u, v in self._arcs if u < v and self.has_arc(v, u)),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self._arcs == other._arcs
        )

    def __hash__(self):
        return hash((self.n, self._arcs))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"


GraphLike = Union[Graph, Digraph]


# ---------------------------------------------------------------------------
# vertex labels for Mycielskians and powers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexLabel:
    """Name of a vertex of M_r(G): a (vertex, level) pair or the apex."""

    vertex: Optional[int] = None
    level: Optional[int] = None

    @staticmethod
    def base(vertex: int, level: int) -> "VertexLabel":
        if level < 0:
            raise DomainError("level must be non-negative")
        return VertexLabel(vertex, level)

    @staticmethod
    def apex() -> "VertexLabel":
        return VertexLabel(None, None)

    @property
    def is_apex(self) -> bool:
        return self.vertex is None

    def __repr__(self):
        if self.is_apex:
            return "Apex"
        return f"({self.vertex},{self.level})"


def mycielski_index(n: int, label: VertexLabel, r: int = 2) -> int:
    """Flat index of a labeled M_r vertex; levels are stored level-major."""
    if label.is_apex:
        return r * n
    if not (0 <= label.vertex < n and 0 <= label.level < r):
        raise DomainError(f"label {label} invalid for n={n}, r={r}")
    return label.level * n + label.vertex


def mycielski_label(n: int, index: int, r: int = 2) -> VertexLabel:
    if index == r * n:
        return VertexLabel.apex()
    if not 0 <= index < r * n:
        raise DomainError(f"index {index} out of range for M_{r} over {n} vertices")
    return VertexLabel(index % n, index // n)


@dataclass(frozen=True)
class PowerVertex:
    """Structured view of a vertex of a t-th OR-power: one coordinate per factor."""

    coords: tuple[int, ...]

    def __len__(self):
        return len(self.coords)

    def labels(self, base_n: int, r: int = 2) -> tuple[VertexLabel, ...]:
        """Decode coordinates as M_r(G) labels (for powers of Mycielskians)."""
        return tuple(mycielski_label(base_n, c, r) for c in self.coords)


def power_index(coords: Sequence[int], base_size: int) -> int:
    idx = 0
    for c in coords:
        if not 0 <= c < base_size:
            raise DomainError(f"coordinate {c} out of range for base size {base_size}")
        idx = idx * base_size + c
    return idx


def power_coords(index: int, base_size: int, t: int) -> tuple[int, ...]:
    coords = []
    for _ in range(t):
        coords.append(index % base_size)
        index //= base_size
    if index:
        raise DomainError("index out of range for this power")
    return tuple(reversed(coords))


# ---------------------------------------------------------------------------
# standard families
# ---------------------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    _require_positive(n)
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def empty_graph(n: int) -> Graph:
    _require_positive(n)
    return Graph(n)


def cycle_graph(n: int) -> Graph:
    _require_positive(n)
    if n < 3:
        raise DomainError("cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    _require_positive(n)
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def transitive_tournament(n: int) -> Digraph:
    """T_n: arc (i, j) present exactly when i < j."""
    _require_positive(n)
    return Digraph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


_FAMILIES = {
    "complete": complete_graph,
    "empty": empty_graph,
    "cycle": cycle_graph,
    "path": path_graph,
    "tournament": transitive_tournament,
}


def generate(family: str, n: int) -> GraphLike:
    """Named graph family with canonical labeling; family names as in the CLI."""
    try:
        builder = _FAMILIES[family]
    except KeyError:
        raise DomainError(
            f"unknown family {family!r}; choose from {sorted(_FAMILIES)}"
        ) from None
    return builder(n)


def _require_positive(n: int) -> None:
    if n < 1:
        raise DomainError("family size must be at least 1")


# ---------------------------------------------------------------------------
# Mycielski constructions
# ---------------------------------------------------------------------------

def mycielskian(g: Graph, r: int = 2) -> Graph:
    """r-level generalized Mycielskian of an undirected graph.

    Vertex layout: (v, level) -> level * n + v for level in 0..r-1, apex last.
    r = 2 is the classical construction; r = 1 adds a single dominating vertex.
    """
    if r < 1:
        raise DomainError("Mycielskian needs r >= 1")
    n = g.n
    _check_size(r * n + 1, "Mycielskian")
    edges: list[tuple[int, int]] = []
    for u, v in g.edges():
        edges.append((u, v))
        for lvl in range(r - 1):
            edges.append((lvl * n + u, (lvl + 1) * n + v))
            edges.append((lvl * n + v, (lvl + 1) * n + u))
    apex = r * n
    edges.extend((apex, (r - 1) * n + v) for v in range(n))
    return Graph(r * n + 1, edges)


def mycielskian_digraph(d: Digraph, r: int = 2) -> Digraph:
    """r-level Mycielskian of a digraph.

    Inter-level arcs inherit the orientation of the original arcs; apex arcs
    point outward from the apex toward level r-1.  (Orienting them the other
    way is an equally valid convention and reverses no other structure.)
    """
    if r < 1:
        raise DomainError("Mycielskian needs r >= 1")
    n = d.n
    _check_size(r * n + 1, "Mycielskian")
    arcs: list[tuple[int, int]] = []
    for u, v in d.arcs():
        arcs.append((u, v))
        for lvl in range(r - 1):
            arcs.append((lvl * n + u, (lvl + 1) * n + v))
            arcs.append(((lvl + 1) * n + u, lvl * n + v))
    apex = r * n
    arcs.extend((apex, (r - 1) * n + v) for v in range(n))
    return Digraph(r * n + 1, arcs)


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def _graph_from_bool(a_bool: np.ndarray) -> Graph:
    n = a_bool.shape[0]
    iu, ju = np.nonzero(np.triu(a_bool, 1))
    return Graph(n, zip(iu.tolist(), ju.tolist()))


def _digraph_from_bool(a_bool: np.ndarray) -> Digraph:
    n = a_bool.shape[0]
    iu, ju = np.nonzero(a_bool)
    return Digraph(n, zip(iu.tolist(), ju.tolist()))


def _nonadjacency(g: GraphLike) -> np.ndarray:
    """Boolean matrix of 'not adjacent or equal' pairs (arcs for digraphs)."""
    n = g.n
    b = np.ones((n, n), dtype=bool)
    if isinstance(g, Graph):
        for u, v in g.edges():
            b[u, v] = b[v, u] = False
    else:
        for u, v in g.arcs():
            b[u, v] = False
    return b


def or_product(f: GraphLike, g: GraphLike) -> GraphLike:
    """OR-product: a pair is adjacent iff it is adjacent in >= 1 coordinate."""
    if isinstance(f, Graph) != isinstance(g, Graph):
        raise DomainError("cannot mix graphs and digraphs in a product")
    _check_size(f.n * g.n, "OR-product")
    adj = ~np.kron(_nonadjacency(f), _nonadjacency(g))
    np.fill_diagonal(adj, False)
    if isinstance(f, Graph):
        return _graph_from_bool(adj)
    return _digraph_from_bool(adj)


def or_power(g: GraphLike, t: int) -> GraphLike:
    if t < 1:
        raise DomainError("OR-power needs t >= 1")
    _check_size(g.n ** t, "OR-power")
    result = g
    for _ in range(t - 1):
        result = or_product(result, g)
    return result


def categorical_product(f: Graph, g: Graph) -> Graph:
    """Categorical (tensor) product: adjacent iff adjacent in both coordinates."""
    _check_size(f.n * g.n, "categorical product")
    adj = np.kron(f.adjacency_matrix() > 0, g.adjacency_matrix() > 0)
    return _graph_from_bool(adj)


def complete_join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of g and h plus all edges between the two parts."""
    _check_size(g.n + h.n, "complete join")
    edges = list(g.edges())
    edges.extend((g.n + u, g.n + v) for u, v in h.edges())
    edges.extend((u, g.n + v) for u in range(g.n) for v in range(h.n))
    return Graph(g.n + h.n, edges)


# ---------------------------------------------------------------------------
# the Mycielskian-of-a-power embedding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerEmbedding:
    """Injective map of M(G^t) into [M(G)]^t.

    (v1...vt, h) is sent to the sequence (v1,h)...(vt,h) and the apex of
    M(G^t) to the all-apex sequence.  `mapping[i]` is the image of vertex i.
    """

    mapping: tuple[int, ...]
    domain: GraphLike      # M(G^t)
    codomain: GraphLike    # [M(G)]^t

    def is_induced_isomorphism(self) -> bool:
        """Check the map is injective and preserves both edges and non-edges."""
        if len(set(self.mapping)) != len(self.mapping):
            return False
        dom, cod = self.domain, self.codomain
        directed = isinstance(dom, Digraph)
        for u in range(dom.n):
            for v in range(dom.n):
                if u == v:
                    continue
                if directed:
                    if dom.has_arc(u, v) != cod.has_arc(self.mapping[u], self.mapping[v]):
                        return False
                else:
                    if u < v and dom.has_edge(u, v) != cod.has_edge(
                        self.mapping[u], self.mapping[v]
                    ):
                        return False
        return True


def embed_mycielski_power(g: GraphLike, t: int) -> PowerEmbedding:
    if t < 1:
        raise DomainError("power embedding needs t >= 1")
    n = g.n
    _check_size((2 * n + 1) ** t, "power of the Mycielskian")
    power = or_power(g, t)
    if isinstance(g, Graph):
        domain = mycielskian(power, 2)
        base_m = mycielskian(g, 2)
        codomain = or_power(base_m, t)
    else:
        domain = mycielskian_digraph(power, 2)
        base_m = mycielskian_digraph(g, 2)
        codomain = or_power(base_m, t)
    np_ = n ** t
    big = 2 * n + 1
    mapping = []
    for idx in range(domain.n):
        if idx == 2 * np_:  # apex of M(G^t) -> all-apex sequence
            coords = (2 * n,) * t
        else:
            h, flat = divmod(idx, np_)
            coords = tuple(h * n + v for v in power_coords(flat, n, t))
        mapping.append(power_index(coords, big))
    return PowerEmbedding(tuple(mapping), domain, codomain)


# ---------------------------------------------------------------------------
# edge-list text format: first line "n m [directed]", then one "u v" per line
# ---------------------------------------------------------------------------

def format_edgelist(g: GraphLike) -> str:
    directed = isinstance(g, Digraph)
    pairs = g.arcs() if directed else g.edges()
    head = f"{g.n} {len(pairs)}" + (" directed" if directed else "")
    return "\n".join([head] + [f"{u} {v}" for u, v in pairs]) + "\n"


def parse_edgelist(text: str) -> GraphLike:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise DomainError("empty edge-list input")
    head = lines[0].split()
    directed = False
    if len(head) == 3 and head[2] == "directed":
        directed = True
    elif len(head) != 2:
        raise DomainError("header must be 'n m' or 'n m directed'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise DomainError(f"bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise DomainError(f"expected {m} edge lines, found {len(lines) - 1}")
    pairs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise DomainError(f"bad edge line {ln!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise DomainError(f"bad edge line {ln!r}") from exc
    return Digraph(n, pairs) if directed else Graph(n, pairs)


# ---------------------------------------------------------------------------
# isomorphism testing (test support only)
# ---------------------------------------------------------------------------

def _refine_colors(g: Graph) -> tuple[int, ...]:
    colors = tuple(g.degree(v) for v in range(g.n))
    for _ in range(g.n):
        signatures = tuple(
            (colors[v], tuple(sorted(colors[u] for u in g.neighbors[v])))
            for v in range(g.n)
        )
        palette = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        new = tuple(palette[sig] for sig in signatures)
        if new == colors:
            break
        colors = new
    return colors


def find_isomorphism(g: Graph, h: Graph) -> Optional[list[int]]:
    """Vertex bijection g -> h preserving adjacency both ways, or None.

    Backtracking over vertices guided by iterated neighbor-degree refinement;
    exact at any size, intended for desk-scale use in tests.
    """
    if g.n != h.n or g.m != h.m:
        return None
    cg, ch = _refine_colors(g), _refine_colors(h)
    if sorted(cg) != sorted(ch):
        return None
    by_color: dict[int, list[int]] = {}
    for v in range(h.n):
        by_color.setdefault(ch[v], []).append(v)
    order = sorted(range(g.n), key=lambda v: (len(by_color[cg[v]]), v))
    mapping: list[Optional[int]] = [None] * g.n
    used = [False] * h.n

    def backtrack(pos: int) -> bool:
        if pos == g.n:
            return True
        v = order[pos]
        for w in by_color.get(cg[v], ()):
            if used[w]:
                continue
            ok = True
            for u in g.neighbors[v]:
                mu = mapping[u]
                if mu is not None and not h.has_edge(w, mu):
                    ok = False
                    break
            if ok:
                # non-edges of mapped vertices must stay non-edges
                for u in order[:pos]:
                    if not g.has_edge(v, u) and h.has_edge(w, mapping[u]):
                        ok = False
                        break
            if ok:
                mapping[v] = w
                used[w] = True
                if backtrack(pos + 1):
                    return True
                mapping[v] = None
                used[w] = False
        return False

    if backtrack(0):
        return [mapping[v] for v in range(g.n)]
    return None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None
