"""Vertex bipartization (minimum odd cycle transversal).

The exact route reduces "can k removals make g bipartite" to CNF: vertex i
(0-based) gets side variables i+1 and n+i+1 and a removal variable 2n+i+1;
every vertex must take a role, adjacent vertices may not share a side, and
a sequential counter bounds the removal variables by k.  Growing k from
zero gives the minimum.  Greedy, annealing and genetic heuristics trade
optimality for speed; each one repairs its answer to validity and peels it
to inclusion-minimality, which the drawing engine relies on.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import TooLarge
from .graphs import (SimpleGraph, conflict_edge_count, forced_coloring,
                     is_bipartite_without, odd_cycle_census)
from .sat import Backend, CnfInstance, Model, sinz_at_most_k, solve_cnf


@dataclass(frozen=True)
class OctResult:
    """A vertex set whose removal leaves the graph bipartite."""

    removed: frozenset[int]
    method: str
    optimal: bool
    stats: dict = field(default_factory=dict, compare=False)


def _checked(g: SimpleGraph, removed: frozenset[int], method: str,
             optimal: bool, stats: dict) -> OctResult:
    assert is_bipartite_without(g, removed), f"{method} produced a non-solution"
    return OctResult(removed, method, optimal, stats)


def encode_oct(g: SimpleGraph, k: int) -> CnfInstance:
    """CNF satisfiable iff removing at most k vertices makes g bipartite.

    Sizes for n >= 2, k >= 1 are exactly (n-1)(k+3)+3 variables and
    2m + 2nk + 2n - 3k - 1 clauses.  With k = 0 the counter is replaced by
    one negating unit per removal variable, keeping the semantics exact.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    n = g.n
    side1 = lambda i: i + 1
    side2 = lambda i: n + i + 1
    gone = lambda i: 2 * n + i + 1
    clauses: list[tuple[int, ...]] = []
    for i in range(n):
        clauses.append((side1(i), side2(i), gone(i)))
    for u, v in g.edges:
        clauses.append((-side1(u), -side1(v)))
        clauses.append((-side2(u), -side2(v)))
    counter = sinz_at_most_k([gone(i) for i in range(n)], k, 3 * n + 1)
    clauses.extend(tuple(cl) for cl in counter)
    num_aux = (n - 1) * k if (k >= 1 and n >= 2) else 0
    var_map: dict = {}
    for i in range(n):
        var_map[("side1", i)] = side1(i)
        var_map[("side2", i)] = side2(i)
        var_map[("removed", i)] = gone(i)
    for i in range(1, n):
        for j in range(1, k + 1):
            var_map[("counter", i, j)] = 3 * n + (i - 1) * k + j
    return CnfInstance(3 * n + num_aux, tuple(clauses), var_map)


def decode_removed(n: int, model: Model) -> frozenset[int]:
    """Vertices whose removal variable (2n+i+1) is true in the model."""
    true = set(model)
    return frozenset(i for i in range(n) if 2 * n + i + 1 in true)


def decode_partition(n: int, model: Model) \
        -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Disjoint (side1, side2, removed) covering all vertices."""
    true = set(model)
    removed = decode_removed(n, model)
    p1 = frozenset(i for i in range(n) if i not in removed and i + 1 in true)
    p2 = frozenset(i for i in range(n) if i not in removed and i not in p1)
    return p1, p2, removed


def min_oct_exact(g: SimpleGraph, search: str = "linear",
                  backend: Backend | None = None) -> OctResult:
    """Minimum odd cycle transversal via the CNF reduction.

    `search` is "linear" (k = 1, 2, ... until satisfiable) or "binary"
    (bisect below a greedy upper bound).  A bipartite input short-circuits
    with the empty set and no solver call.
    """
    if search not in ("linear", "binary"):
        raise ValueError(f"unknown search mode {search!r}")
    if is_bipartite_without(g):
        return OctResult(frozenset(), "sat", True, {"k": 0, "solver_calls": 0})
    calls = 0

    def sat_at(k: int) -> Model | None:
        nonlocal calls
        calls += 1
        return solve_cnf(encode_oct(g, k), backend)

    if search == "linear":
        k = 1
        model = sat_at(k)
        while model is None:
            k += 1
            model = sat_at(k)
    else:
        hi = len(oct_greedy(g).removed)  # any valid removal bounds the optimum
        lo, model = 1, None
        while lo < hi:
            mid = (lo + hi) // 2
            attempt = sat_at(mid)
            if attempt is None:
                lo = mid + 1
            else:
                hi, model = mid, attempt
        k = hi
        if model is None:
            model = sat_at(k)
            assert model is not None, "greedy upper bound was not satisfiable"
    removed = decode_removed(g.n, model)
    assert len(removed) == k, "decoded removal disagrees with the search"
    return _checked(g, removed, "sat", True, {"k": k, "solver_calls": calls})


def brute_force_oct(g: SimpleGraph, max_vertices: int = 20) -> OctResult:
    """Smallest removal set by subset enumeration (oracle for tests)."""
    if g.n > max_vertices:
        raise TooLarge(f"{g.n} vertices exceeds the brute-force bound {max_vertices}")
    tested = 0
    for size in range(g.n + 1):
        for subset in combinations(range(g.n), size):
            tested += 1
            if is_bipartite_without(g, subset):
                return OctResult(frozenset(subset), "brute", True,
                                 {"subsets_tested": tested})
    raise AssertionError("unreachable: removing every vertex is bipartite")


def peel_to_minimal(g: SimpleGraph, removed: frozenset[int]) -> frozenset[int]:
    """Drop vertices from a valid removal set until it is inclusion-minimal."""
    cur = set(removed)
    changed = True
    while changed:
        changed = False
        for v in sorted(cur):
            rest = cur - {v}
            if is_bipartite_without(g, rest):
                cur = rest
                changed = True
    return frozenset(cur)


def _repair(g: SimpleGraph, removed: set[int]) -> set[int]:
    """Grow a removal set until the rest of the graph is bipartite."""
    while True:
        census = odd_cycle_census(g, removed)
        if census is None:
            return removed
        # most-hit vertex, lowest id on ties
        pick = min(census, key=lambda v: (-census[v], v))
        removed.add(pick)


def oct_greedy(g: SimpleGraph, seed: int = 0) -> OctResult:
    """Repeatedly remove the vertex on the most odd-cycle witnesses."""
    removed = _repair(g, set())
    iterations = len(removed)
    final = peel_to_minimal(g, frozenset(removed))
    return _checked(g, final, "greedy", False, {"iterations": iterations})


@dataclass(frozen=True)
class AnnealParams:
    t0: float = 1.0
    alpha: float = 0.995
    steps: int = 10_000


def oct_anneal(g: SimpleGraph, seed: int = 0,
               params: AnnealParams | None = None) -> OctResult:
    """Simulated annealing over (side, side, removed) vertex labelings.

    Energy counts removals plus a heavy penalty per monochromatic edge, so
    low energy means a clean two-coloring with few removals.  The final
    state is repaired and peeled, so the result is always valid and
    inclusion-minimal, just not necessarily optimal.
    """
    p = params or AnnealParams()
    rng = random.Random(seed)
    n = g.n
    if n == 0 or is_bipartite_without(g):
        return OctResult(frozenset(), "anneal", g.m == 0, {"steps": 0})
    weight = n + 1
    labels = [rng.randrange(3) for _ in range(n)]  # 0/1 sides, 2 removed

    def vertex_cost(v: int, lab: int) -> int:
        if lab == 2:
            return 0
        return sum(1 for w in g.neighbors(v) if labels[w] == lab)

    temp = p.t0
    accepted = 0
    for _ in range(p.steps):
        v = rng.randrange(n)
        old = labels[v]
        new = rng.choice([l for l in (0, 1, 2) if l != old])
        delta = weight * (vertex_cost(v, new) - vertex_cost(v, old))
        delta += (1 if new == 2 else 0) - (1 if old == 2 else 0)
        if delta <= 0 or (temp > 1e-12 and rng.random() < math.exp(-delta / temp)):
            labels[v] = new
            accepted += 1
        temp *= p.alpha
    removed = _repair(g, {v for v in range(n) if labels[v] == 2})
    final = peel_to_minimal(g, frozenset(removed))
    return _checked(g, final, "anneal", False,
                    {"steps": p.steps, "accepted": accepted})


@dataclass(frozen=True)
class GeneticParams:
    population: int = 50
    mutation_rate: float = 0.05
    generations: int = 200


def oct_genetic(g: SimpleGraph, seed: int = 0,
                params: GeneticParams | None = None) -> OctResult:
    """Evolve removal bitstrings; fitness favors bipartite survivors.

    Tournament selection with two elites, uniform crossover, per-gene
    mutation.  The best individual is repaired and peeled before returning.
    """
    p = params or GeneticParams()
    rng = random.Random(seed)
    n = g.n
    if n == 0 or is_bipartite_without(g):
        return OctResult(frozenset(), "genetic", g.m == 0, {"generations": 0})
    weight = n + 1

    def fitness(genes: tuple[bool, ...]) -> int:
        gone = {i for i in range(n) if genes[i]}
        colors, _, _ = forced_coloring(g, gone)
        return weight * conflict_edge_count(g, colors) + len(gone)

    pop = [tuple(rng.random() < 0.3 for _ in range(n)) for _ in range(p.population)]
    scores = [fitness(ind) for ind in pop]

    def tournament() -> tuple[bool, ...]:
        picks = [rng.randrange(len(pop)) for _ in range(3)]
        return pop[min(picks, key=lambda i: scores[i])]

    for _ in range(p.generations):
        ranked = sorted(range(len(pop)), key=lambda i: (scores[i], i))
        nxt = [pop[ranked[0]], pop[ranked[1]]]  # elitism
        while len(nxt) < p.population:
            mother, father = tournament(), tournament()
            child = tuple(
                (mother[i] if rng.random() < 0.5 else father[i]) != (rng.random() < p.mutation_rate)
                for i in range(n))
            nxt.append(child)
        pop = nxt
        scores = [fitness(ind) for ind in pop]

    best = pop[min(range(len(pop)), key=lambda i: (scores[i], i))]
    removed = _repair(g, {i for i in range(n) if best[i]})
    final = peel_to_minimal(g, frozenset(removed))
    return _checked(g, final, "genetic", False, {"generations": p.generations})
