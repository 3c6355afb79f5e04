"""Exact combinatorial invariants: clique numbers, chromatic number, and
finite-power capacity lower bounds.

All searches are deterministic: vertices are ordered by degeneracy with ties
broken by index, and budgets are node counts, not wall time.  A truncated
search reports exhausted=False and the best witness found; it never claims a
wrong optimum.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

from .errors import DomainError
from .graphs import Digraph, Graph, or_power

GraphLike = Union[Graph, Digraph]


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[int, ...]
    exhausted: bool
    nodes: int

    def root(self, k: int) -> float:
        return self.size ** (1.0 / k)


class _Budget:
    __slots__ = ("limit", "nodes")

    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.nodes = 0

    def tick(self) -> bool:
        """Count one search node; False once the budget is spent."""
        self.nodes += 1
        return self.limit is None or self.nodes <= self.limit

    @property
    def within_limit(self) -> bool:
        return self.limit is None or self.nodes <= self.limit


def _degeneracy_order(g: Graph) -> list[int]:
    """Smallest-last ordering; ties broken by vertex index."""
    deg = [g.degree(v) for v in range(g.n)]
    removed = [False] * g.n
    order = []
    for _ in range(g.n):
        v = min(
            (u for u in range(g.n) if not removed[u]),
            key=lambda u: (deg[u], u),
        )
        order.append(v)
        removed[v] = True
        for u in g.neighbors[v]:
            if not removed[u]:
                deg[u] -= 1
    order.reverse()  # largest core first
    return order


def _greedy_color_order(bits: tuple[int, ...], cand: int) -> tuple[list[int], list[int]]:
    """Greedy coloring of the candidate set; returns vertices sorted so that
    color bounds are non-decreasing, together with the bound per position."""
    classes: list[int] = []  # bitmask per color class
    order: list[list[int]] = []
    m = cand
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        for ci, cmask in enumerate(classes):
            if not (bits[v] & cmask):
                classes[ci] |= 1 << v
                order[ci].append(v)
                break
        else:
            classes.append(1 << v)
            order.append([v])
    flat: list[int] = []
    bounds: list[int] = []
    for ci, members in enumerate(order):
        for v in members:
            flat.append(v)
            bounds.append(ci + 1)
    return flat, bounds


def _max_clique_bits(bits: tuple[int, ...], start_mask: int, budget: _Budget,
                     initial_best: tuple[int, tuple[int, ...]],
                     prefix: Optional[list[int]] = None) -> tuple[int, tuple[int, ...]]:
    best_size, best_witness = initial_best

    def expand(mask: int, current: list[int]) -> None:
        nonlocal best_size, best_witness
        if not budget.tick():
            return
        order, bounds = _greedy_color_order(bits, mask)
        for i in range(len(order) - 1, -1, -1):
            if budget.limit is not None and budget.nodes > budget.limit:
                return
            v = order[i]
            if len(current) + bounds[i] <= best_size:
                return
            current.append(v)
            if len(current) > best_size:
                best_size = len(current)
                best_witness = tuple(sorted(current))
            sub = mask & bits[v]
            if sub:
                expand(sub, current)
            current.pop()
            mask &= ~(1 << v)

    start = list(prefix) if prefix else []
    if start and len(start) > best_size:
        best_size = len(start)
        best_witness = tuple(sorted(start))
    expand(start_mask, start)
    return best_size, best_witness


def _greedy_clique(g: Graph, order: list[int]) -> tuple[int, ...]:
    clique: list[int] = []
    for v in order:
        if all(g.has_edge(v, u) for u in clique):
            clique.append(v)
    return tuple(sorted(clique))


def verify_clique(g: Graph, witness: tuple[int, ...]) -> bool:
    return all(
        g.has_edge(u, v) for i, u in enumerate(witness) for v in witness[i + 1:]
    )


def clique_number(g: Graph, node_budget: Optional[int] = None,
                  threads: int = 1) -> CliqueResult:
    """Branch-and-bound maximum clique with greedy-coloring upper bounds."""
    if g.n == 0:
        raise DomainError("clique number needs a nonempty vertex set")
    order = _degeneracy_order(g)
    # remap vertices to the degeneracy order so bit tricks scan it cheaply
    pos = {v: i for i, v in enumerate(order)}
    bits = tuple(
        sum(1 << pos[u] for u in g.neighbors[order[i]]) for i in range(g.n)
    )
    seed = tuple(sorted(pos[v] for v in _greedy_clique(g, order)))
    budget = _Budget(node_budget)
    full = (1 << g.n) - 1
    if threads > 1:
        # root split: branch i fixes vertex i and explores later vertices only;
        # workers do not share state, so the merge is order-independent
        roots = [(v, bits[v] & (full & ~((1 << (v + 1)) - 1))) for v in range(g.n)]
        share = node_budget // len(roots) if node_budget else None
        budgets = [_Budget(share) for _ in roots]

        def run_root(arg):
            (v, sub), b = arg
            best = (len(seed), seed)
            if 1 > best[0]:
                best = (1, (v,))
            if sub:
                best = _max_clique_bits(bits, sub, b, best, prefix=[v])
            return best

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_root, zip(roots, budgets)))
        size, witness = _merge_best(results + [(len(seed), seed)])
        budget.nodes = sum(b.nodes for b in budgets)
        exhausted = all(b.within_limit for b in budgets)
    else:
        size, witness = _max_clique_bits(bits, full, budget, (len(seed), seed))
        exhausted = budget.within_limit
    original = tuple(sorted(order[i] for i in witness))
    if not verify_clique(g, original):
        raise MycthetaInternal("clique witness failed re-verification")
    return CliqueResult(size, original, exhausted, budget.nodes)


def _merge_best(results: list[tuple[int, tuple[int, ...]]]) -> tuple[int, tuple[int, ...]]:
    """Max by size; ties resolved toward the lexicographically smallest witness."""
    best_size = max(s for s, _ in results)
    return best_size, min(w for s, w in results if s == best_size)


class MycthetaInternal(AssertionError):
    pass


def symmetric_clique_number(d: Digraph, node_budget: Optional[int] = None,
                            threads: int = 1) -> CliqueResult:
    """Largest set of pairwise bidirected vertices."""
    if d.n == 0:
        raise DomainError("clique number needs a nonempty vertex set")
    return clique_number(d.bidirected_graph(), node_budget, threads)


def transitive_clique_number(d: Digraph, node_budget: Optional[int] = None) -> CliqueResult:
    """Largest vertex set orderable so that every forward pair is an arc.

    The witness is returned in that order.  A transitive order is built left
    to right; the achievable depth from a candidate set depends only on that
    set, so results are memoized per candidate mask.  Values computed after
    the budget runs out are realizable lower bounds, never overestimates.
    """
    if d.n == 0:
        raise DomainError("clique number needs a nonempty vertex set")
    budget = _Budget(node_budget)
    out_bits = d.out_bits
    memo: dict[int, tuple[int, tuple[int, ...]]] = {}

    def chain(cand: int) -> tuple[int, tuple[int, ...]]:
        if cand == 0:
            return 0, ()
        hit = memo.get(cand)
        if hit is not None:
            return hit
        if not budget.tick():
            return 0, ()
        best, best_chain = 0, ()
        m = cand
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            sub = cand & out_bits[v]
            if 1 + sub.bit_count() <= best:
                continue
            r, tail = chain(sub)
            if 1 + r > best:
                best, best_chain = 1 + r, (v,) + tail
        result = (best, best_chain)
        if budget.within_limit:
            memo[cand] = result
        return result

    size, witness = chain((1 << d.n) - 1)
    for i, u in enumerate(witness):
        for v in witness[i + 1:]:
            if not d.has_arc(u, v):
                raise MycthetaInternal("transitive witness failed re-verification")
    return CliqueResult(size, witness, budget.within_limit, budget.nodes)


# ---------------------------------------------------------------------------
# chromatic number
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChromaticResult:
    lo: int
    hi: int
    exhausted: bool
    coloring: tuple[int, ...]
    nodes: int

    @property
    def value(self) -> int:
        if not self.exhausted:
            raise DomainError(
                f"chromatic number not settled; bracket is [{self.lo}, {self.hi}]"
            )
        return self.lo


def greedy_coloring(g: Graph) -> tuple[int, ...]:
    """DSATUR greedy coloring; deterministic tie-break by vertex index."""
    n = g.n
    colors = [-1] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (len(sat[u]), g.degree(u), -u),
        )
        c = 0
        while c in sat[v]:
            c += 1
        colors[v] = c
        for u in g.neighbors[v]:
            sat[u].add(c)
    return tuple(colors)


def _k_colorable(g: Graph, k: int, budget: _Budget) -> Optional[tuple[int, ...]]:
    """Exact k-coloring by DSATUR branching; None when budget runs out."""
    n = g.n
    colors = [-1] * n
    sat: list[set[int]] = [set() for _ in range(n)]

    out: Optional[tuple[int, ...]] = None

    def assign(depth: int, used: int) -> bool:
        nonlocal out
        if not budget.tick():
            return False
        if depth == n:
            out = tuple(colors)
            return True
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (len(sat[u]), g.degree(u), -u),
        )
        if len(sat[v]) >= k:
            return False
        limit = min(k - 1, used)  # first unused color is canonical
        for c in range(limit + 1):
            if c in sat[v]:
                continue
            colors[v] = c
            touched = [u for u in g.neighbors[v] if colors[u] < 0 and c not in sat[u]]
            for u in touched:
                sat[u].add(c)
            if assign(depth + 1, max(used, c + 1)):
                return True
            for u in touched:
                sat[u].discard(c)
            colors[v] = -1
            if budget.limit is not None and budget.nodes > budget.limit:
                return False
        return False

    found = assign(0, 0)
    return out if found else None


def chromatic_number(g: Graph, node_budget: Optional[int] = None) -> ChromaticResult:
    """Exact chromatic number by iterative deepening between a clique lower
    bound and a DSATUR upper bound; reports a bracket when the budget runs out.
    """
    if g.n == 0:
        raise DomainError("chromatic number needs a nonempty vertex set")
    greedy = greedy_coloring(g)
    hi = max(greedy) + 1
    clique_share = node_budget // 4 if node_budget else None
    omega = clique_number(g, clique_share)
    lo = omega.size if omega.exhausted else 1
    budget = _Budget(node_budget)
    budget.nodes = omega.nodes
    coloring = greedy
    k = lo
    while k < hi:
        attempt = _k_colorable(g, k, budget)
        if attempt is not None:
            hi = k
            coloring = attempt
            break
        if not budget.within_limit:
            return ChromaticResult(k, hi, False, coloring, budget.nodes)
        k += 1
    return ChromaticResult(hi, hi, True, coloring, budget.nodes)


def verify_coloring(g: Graph, coloring: tuple[int, ...]) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges())


# ---------------------------------------------------------------------------
# finite-power capacity lower bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CapacityBound:
    value: float
    k: int
    clique: CliqueResult
    directed: bool

    @property
    def exhausted(self) -> bool:
        return self.clique.exhausted


def capacity_lower_bound(g: GraphLike, k: int,
                         node_budget: Optional[int] = None,
                         threads: int = 1) -> CapacityBound:
    """k-th root of the clique number of the k-th OR-power.

    Uses the transitive clique number for digraphs; flags whether the inner
    search was exhaustive.  The value is a valid capacity lower bound either
    way because any witness clique suffices.
    """
    if k < 1:
        raise DomainError("capacity lower bound needs k >= 1")
    power = or_power(g, k)  # SizeLimitError when n**k exceeds the bound
    if isinstance(g, Digraph):
        res = transitive_clique_number(power, node_budget)
    else:
        res = clique_number(power, node_budget, threads)
    return CapacityBound(res.size ** (1.0 / k), k, res, isinstance(g, Digraph))
