"""Explicit clique constructions in OR-powers of Mycielskians, the
small-scale nonexistence check for deeper level structures, and the
per-graph capacity report.

The n^n clique lives in [M(K_n) minus apex]^n: a base sequence
x in {0..n-1}^n with digit sum congruent to j mod n is lifted at coordinate
j+1 (1-based) to level 1; two members of the same residue class differ in at
least two base coordinates, members of different classes keep an adjacency
untouched by the lift, so the set is a clique.  Every member has a level-1
coordinate, hence the all-apex sequence extends it to size n^n + 1.  The
directed variant over M(T_n) orders the same vertex set by digit sum, then
lexicographically on the base coordinates away from the lifted position, and
every forward pair is an arc.  Constructions verify themselves pairwise
before returning: they are proofs, not hopes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError, InconclusiveError, SizeLimitError
from .fractional import fractional_chromatic
from .graphs import (
    Digraph,
    Graph,
    PowerVertex,
    complete_graph,
    max_vertices,
    mycielskian,
    mycielskian_digraph,
    or_power,
    power_coords,
    transitive_tournament,
)
from .invariants import (
    CapacityBound,
    ChromaticResult,
    CliqueResult,
    capacity_lower_bound,
    chromatic_number,
    clique_number,
    symmetric_clique_number,
    transitive_clique_number,
)
from . import theta as theta_mod

GraphLike = Union[Graph, Digraph]


@dataclass(frozen=True)
class LiftedCliqueSet:
    """A verified clique of power vertices over M(K_n) or M(T_n).

    `vertices` hold flat M-labels, coordinate position i+1 (1-based) at index
    i; `residue_classes[k]` is the digit-sum class of vertex k (None for the
    apex sequence).  For the directed variant the vertex order itself is the
    transitive order.
    """

    n: int
    directed: bool
    vertices: tuple[tuple[int, ...], ...]
    residue_classes: tuple[Optional[int], ...]
    includes_apex: bool
    bound: Optional[float]
    verified: bool

    def power_vertices(self) -> tuple[PowerVertex, ...]:
        return tuple(PowerVertex(v) for v in self.vertices)

    def to_json(self) -> str:
        labels = [
            [repr(lbl) for lbl in PowerVertex(v).labels(self.n)]
            for v in self.vertices
        ]
        return json.dumps(
            {
                "n": self.n,
                "directed": self.directed,
                "size": len(self.vertices),
                "includes_apex": self.includes_apex,
                "bound": self.bound,
                "verified": self.verified,
                "vertices": [list(v) for v in self.vertices],
                "labels": labels,
                "residue_classes": list(self.residue_classes),
            },
            indent=2,
        )


def _base_clique_vertices(n: int) -> tuple[list[tuple[int, ...]], list[int]]:
    """All lifted sequences: class j lifts coordinate j (0-based) to level 1."""
    vertices = []
    classes = []
    for x in itertools.product(range(n), repeat=n):
        j = sum(x) % n
        coords = tuple(
            (n + x[i]) if i == j else x[i] for i in range(n)
        )
        vertices.append(coords)
        classes.append(j)
    return vertices, classes


def _or_adjacent(host: Graph, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return any(host.has_edge(u, v) for u, v in zip(a, b))


def _or_arc(host: Digraph, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return any(host.has_arc(u, v) for u, v in zip(a, b))


def _check_construction_size(n: int) -> None:
    size = n ** n + 1
    if size > max_vertices():
        raise SizeLimitError(
            f"lifted clique of size {size} exceeds the vertex bound"
        )


def lifted_clique(n: int) -> LiftedCliqueSet:
    """The n^n clique in [M(K_n) minus apex]^n, verified pairwise."""
    if n < 2:
        raise DomainError("lifted clique needs n >= 2")
    _check_construction_size(n)
    host = mycielskian(complete_graph(n), 2)
    vertices, classes = _base_clique_vertices(n)
    for i, a in enumerate(vertices):
        for b in vertices[i + 1:]:
            if not _or_adjacent(host, a, b):
                raise DomainError(f"construction broke: {a} !~ {b}")
    return LiftedCliqueSet(
        n=n,
        directed=False,
        vertices=tuple(vertices),
        residue_classes=tuple(classes),
        includes_apex=False,
        bound=None,
        verified=True,
    )


def extended_clique(n: int) -> LiftedCliqueSet:
    """lifted_clique(n) plus the all-apex sequence: n^n + 1 vertices.

    Reports the capacity bound (n^n + 1)^(1/n), which exceeds n.
    """
    base = lifted_clique(n)
    host = mycielskian(complete_graph(n), 2)
    apex_seq = (2 * n,) * n
    for a in base.vertices:
        if not _or_adjacent(host, apex_seq, a):
            raise DomainError("apex sequence not adjacent to the clique")
    size = n ** n + 1
    return LiftedCliqueSet(
        n=n,
        directed=False,
        vertices=base.vertices + (apex_seq,),
        residue_classes=base.residue_classes + (None,),
        includes_apex=True,
        bound=size ** (1.0 / n),
        verified=True,
    )


def lifted_transitive_clique(n: int) -> LiftedCliqueSet:
    """Transitive clique of size n^n + 1 in [M(T_n)]^n, apex first.

    Ordering: the apex sequence, then ascending digit sum, ties broken
    lexicographically on the base coordinates excluding the lifted position.
    Every ordered pair is verified to be an arc.
    """
    if n < 2:
        raise DomainError("lifted clique needs n >= 2")
    _check_construction_size(n)
    host = mycielskian_digraph(transitive_tournament(n), 2)
    vertices, classes = _base_clique_vertices(n)

    def base_of(coords: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(c - n if c >= n else c for c in coords)

    def key(item):
        coords, j = item
        x = base_of(coords)
        return (sum(x), tuple(x[i] for i in range(n) if i != j))

    ordered = sorted(zip(vertices, classes), key=key)
    apex_seq = (2 * n,) * n
    all_vertices = [apex_seq] + [c for c, _ in ordered]
    all_classes: list[Optional[int]] = [None] + [j for _, j in ordered]
    for i, a in enumerate(all_vertices):
        for b in all_vertices[i + 1:]:
            if not _or_arc(host, a, b):
                raise DomainError(f"transitive construction broke: {a} -> {b}")
    size = n ** n + 1
    return LiftedCliqueSet(
        n=n,
        directed=True,
        vertices=tuple(all_vertices),
        residue_classes=tuple(all_classes),
        includes_apex=True,
        bound=size ** (1.0 / n),
        verified=True,
    )


# ---------------------------------------------------------------------------
# nonexistence of the analogous clique for r, n >= 3
# ---------------------------------------------------------------------------

def no_lifted_clique_check(n: int, r: int, t: int,
                           node_budget: int = 10 ** 7) -> bool:
    """Exhaustively confirm there is no clique of size n^t in
    [M_r(K_n) minus apex]^t whose members all carry a level-(r-1) coordinate.

    Two power vertices with the same base projection are never adjacent
    (equal letters are non-adjacent in every coordinate of M_r(K_n)), so a
    clique of size n^t must use every base projection exactly once; the
    search assigns one level vector per projection and backtracks.  Returns
    True when no assignment survives; raises InconclusiveError if the node
    budget runs out first.
    """
    if n < 3 or r < 3:
        raise DomainError("the nonexistence statement needs n >= 3 and r >= 3")
    if t < 1:
        raise DomainError("power exponent must be at least 1")
    if n ** t > max_vertices():
        raise SizeLimitError("clique size n**t exceeds the vertex bound")
    host = mycielskian(complete_graph(n), r)
    apex = r * n
    projections = list(itertools.product(range(n), repeat=t))
    level_choices = [
        lv for lv in itertools.product(range(r), repeat=t) if (r - 1) in lv
    ]
    nodes = 0

    def coords_of(proj, levels) -> tuple[int, ...]:
        return tuple(lv * n + p for p, lv in zip(proj, levels))

    chosen: list[tuple[int, ...]] = []

    def assign(idx: int) -> bool:
        """True if a full clique assignment exists from this point."""
        nonlocal nodes
        if idx == len(projections):
            return True
        for levels in level_choices:
            nodes += 1
            if nodes > node_budget:
                raise InconclusiveError(
                    f"nonexistence search for (n={n}, r={r}, t={t}) exceeded "
                    f"{node_budget} nodes"
                )
            cand = coords_of(projections[idx], levels)
            if apex in cand:
                continue
            if all(_or_adjacent(host, cand, prev) for prev in chosen):
                chosen.append(cand)
                if assign(idx + 1):
                    return True
                chosen.pop()
        return False

    return not assign(0)


# ---------------------------------------------------------------------------
# superadditive chaining: an (N^N + 1)-clique in [M(G)]^(k N)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainedClique:
    k: int
    N: int
    vertices: tuple[tuple[int, ...], ...]  # coordinates over M(G), length k*N
    bound: float                           # (N^N + 1)^(1/(k N))
    verified: bool


def chained_power_clique(g: Graph, k: int = 1,
                         node_budget: Optional[int] = None) -> ChainedClique:
    """Explicit (N^N + 1)-clique in [M(G)]^(k N), where N = omega(G^k).

    Chains a clique witness K_N inside G^k with the extended lifted clique in
    [M(K_N)]^N: each M(K_N) coordinate (q, level) expands to the k-tuple of
    M(G) labels (q_1, level) ... (q_k, level), apex to k apexes.  Pairwise
    adjacency over M(G) is re-verified coordinate-wise.
    """
    if k < 1:
        raise DomainError("chaining needs k >= 1")
    power = or_power(g, k)
    witness = clique_number(power, node_budget)
    if not witness.exhausted:
        raise InconclusiveError("clique search for omega(G^k) ran out of budget")
    cap = witness.size
    if cap < 2:
        raise DomainError("chaining needs omega(G^k) >= 2")
    _check_construction_size(cap)
    ext = extended_clique(cap)
    host = mycielskian(g, 2)
    n = g.n
    # M(K_N) label -> k-tuple of M(G) labels
    def expand(label: int) -> tuple[int, ...]:
        if label == 2 * cap:
            return (2 * n,) * k
        level, q = divmod(label, cap)
        return tuple(level * n + v for v in power_coords(witness.witness[q], n, k))

    vertices = tuple(
        tuple(c for lbl in seq for c in expand(lbl)) for seq in ext.vertices
    )
    for i, a in enumerate(vertices):
        for b in vertices[i + 1:]:
            if not _or_adjacent(host, a, b):
                raise DomainError("chained construction broke")
    return ChainedClique(
        k=k, N=cap, vertices=vertices,
        bound=(cap ** cap + 1) ** (1.0 / (k * cap)),
        verified=True,
    )


# ---------------------------------------------------------------------------
# capacity report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReportOptions:
    max_power: int = 1
    theta_tol: float = 1e-6
    clique_budget: Optional[int] = None
    chromatic_budget: Optional[int] = 2_000_000
    include_theta: bool = True
    include_fractional: bool = True
    include_chromatic: bool = True
    mycielski_complete: Optional[int] = None    # attach extended_clique(n)
    mycielski_tournament: Optional[int] = None  # attach lifted_transitive_clique(n)
    threads: int = 1


@dataclass
class CapacityReport:
    n: int
    m: int
    directed: bool
    omega: Optional[CliqueResult] = None
    omega_s: Optional[CliqueResult] = None
    omega_tr: Optional[CliqueResult] = None
    lower_bounds: tuple[CapacityBound, ...] = ()
    theta: Optional[float] = None
    theta_tolerance: Optional[float] = None
    chi_f: Optional[Fraction] = None
    chi: Optional[ChromaticResult] = None
    construction: Optional[LiftedCliqueSet] = None
    errors: dict = field(default_factory=dict)

    def best_lower_bound(self) -> Optional[float]:
        values = [b.value for b in self.lower_bounds]
        if self.construction is not None and self.construction.bound:
            values.append(self.construction.bound)
        if self.omega is not None:
            values.append(float(self.omega.size))
        if self.omega_tr is not None:
            values.append(float(self.omega_tr.size))
        return max(values) if values else None

    def to_dict(self) -> dict:
        def clique_doc(c: Optional[CliqueResult]):
            if c is None:
                return None
            return {
                "size": c.size,
                "witness": list(c.witness),
                "exhausted": c.exhausted,
                "nodes": c.nodes,
            }

        doc = {
            "n": self.n,
            "m": self.m,
            "directed": self.directed,
            "omega": clique_doc(self.omega),
            "omega_s": clique_doc(self.omega_s),
            "omega_tr": clique_doc(self.omega_tr),
            "lower_bounds": [
                {
                    "k": b.k,
                    "value": b.value,
                    "exhausted": b.exhausted,
                    "clique_size": b.clique.size,
                }
                for b in self.lower_bounds
            ],
            "theta": self.theta,
            "theta_tolerance": self.theta_tolerance,
            "chi_f": None if self.chi_f is None else f"{self.chi_f.numerator}/{self.chi_f.denominator}",
            "chi": None
            if self.chi is None
            else {"lo": self.chi.lo, "hi": self.chi.hi, "exhausted": self.chi.exhausted},
            "construction": None
            if self.construction is None
            else json.loads(self.construction.to_json()),
            "best_lower_bound": self.best_lower_bound(),
            "errors": self.errors,
        }
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        d = self.to_dict()
        omega = d["omega"]["size"] if d["omega"] else (
            d["omega_tr"]["size"] if d["omega_tr"] else ""
        )
        chi = d["chi"]["hi"] if d["chi"] else ""
        rows = [
            "n,m,directed,omega,theta,chi_f,chi,best_lower_bound",
            f"{self.n},{self.m},{self.directed},{omega},"
            f"{'' if self.theta is None else format(self.theta, '.12g')},"
            f"{'' if self.chi_f is None else str(self.chi_f)},"
            f"{chi},{'' if self.best_lower_bound() is None else format(self.best_lower_bound(), '.12g')}",
        ]
        return "\n".join(rows) + "\n"


def capacity_report(g: GraphLike, options: ReportOptions = ReportOptions()) -> CapacityReport:
    """Bundle of invariants and bounds; per-field failures land in `errors`."""
    directed = isinstance(g, Digraph)
    report = CapacityReport(n=g.n, m=g.m, directed=directed)

    def attempt(name, fn):
        try:
            return fn()
        except Exception as exc:  # recorded, not fatal
            report.errors[name] = f"{type(exc).__name__}: {exc}"
            return None

    if directed:
        report.omega_s = attempt(
            "omega_s", lambda: symmetric_clique_number(g, options.clique_budget)
        )
        report.omega_tr = attempt(
            "omega_tr", lambda: transitive_clique_number(g, options.clique_budget)
        )
    else:
        report.omega = attempt(
            "omega",
            lambda: clique_number(g, options.clique_budget, options.threads),
        )
    bounds = []
    for k in range(1, options.max_power + 1):
        bound = attempt(
            f"lower_bound_k{k}",
            lambda k=k: capacity_lower_bound(
                g, k, options.clique_budget, options.threads
            ),
        )
        if bound is not None:
            bounds.append(bound)
    report.lower_bounds = tuple(bounds)
    if not directed:
        if options.include_theta:
            sol = attempt(
                "theta", lambda: theta_mod.theta_bar(g, options.theta_tol)
            )
            if sol is not None:
                report.theta = sol.value
                report.theta_tolerance = sol.tol_requested
        if options.include_fractional:
            chi_f = attempt("chi_f", lambda: fractional_chromatic(g))
            if chi_f is not None:
                report.chi_f = chi_f.value
        if options.include_chromatic:
            report.chi = attempt(
                "chi", lambda: chromatic_number(g, options.chromatic_budget)
            )
        if options.mycielski_complete is not None:
            report.construction = attempt(
                "construction",
                lambda: extended_clique(options.mycielski_complete),
            )
    if directed and options.mycielski_tournament is not None:
        report.construction = attempt(
            "construction",
            lambda: lifted_transitive_clique(options.mycielski_tournament),
        )
    return report
