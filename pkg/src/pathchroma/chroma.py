"""Exact k-colourability and chromatic numbers, with DIMACS CNF export.

The decision procedure is a complete backtracking search under the
saturation-first vertex order, with a greedy clique precoloured for
symmetry breaking.  UNSAT answers certify graph-colouring lemmas, so the
search never prunes unsoundly: colour symmetry is broken only by clique
precolouring (sound up to colour permutation) and by capping fresh colours
at one above the number used so far.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded
from .graphs import UGraph

DEFAULT_NODE_LIMIT = 20_000_000


@dataclass(frozen=True)
class ColouringCertificate:
    """Outcome of a complete k-colourability search.

    ``assignment`` maps vertex labels to colours in [k] when satisfiable;
    ``nodes`` counts search nodes expanded, so UNSAT runs are auditable.
    """

    k: int
    satisfiable: bool
    assignment: dict | None
    nodes: int

    def to_text(self) -> str:
        if not self.satisfiable:
            return f"UNSAT nodes={self.nodes}\n"
        lines = [f"v {vertex} {colour}" for vertex, colour in self.assignment.items()]
        return "\n".join(lines) + "\n"


def _greedy_clique(adj: list[set[int]], degrees: list[int]) -> list[int]:
    order = sorted(range(len(adj)), key=lambda v: (-degrees[v], v))
    clique: list[int] = []
    for v in order:
        if all(u in adj[v] for u in clique):
            clique.append(v)
    return clique


def greedy_colouring(graph: UGraph) -> tuple[dict, int]:
    """Saturation-first greedy colouring; returns (assignment, colours used)."""
    adj = [set(a) for a in graph.adjacency()]
    n = graph.vertex_count
    degrees = [len(a) for a in adj]
    colour = [0] * n
    forbidden = [0] * n
    remaining = set(range(n))
    used = 0
    while remaining:
        v = max(remaining, key=lambda u: (forbidden[u].bit_count(), degrees[u], -u))
        remaining.discard(v)
        avail = ~forbidden[v]
        c = (avail & -avail).bit_length()
        colour[v] = c
        used = max(used, c)
        bit = 1 << (c - 1)
        for u in adj[v]:
            forbidden[u] |= bit
    return {graph.labels[v]: colour[v] for v in range(n)}, used


def is_proper_colouring(graph: UGraph, assignment: dict) -> bool:
    labels = graph.labels
    return all(assignment[labels[i]] != assignment[labels[j]] for i, j in graph.edges)


def k_colourable(
    graph: UGraph, k: int, *, node_limit: int | None = None
) -> ColouringCertificate:
    """Complete search for a proper k-colouring.

    SAT certificates are verified before being returned; UNSAT is reported
    only once the (symmetry-reduced) search space is exhausted.  Raises
    :class:`BudgetExceeded` when the node limit is hit, which is an
    indeterminate outcome rather than UNSAT.
    """
    if k < 1:
        raise ValueError("k must be positive")
    node_limit = DEFAULT_NODE_LIMIT if node_limit is None else node_limit
    n = graph.vertex_count
    if n == 0:
        return ColouringCertificate(k, True, {}, 0)

    adj_sets = [set(a) for a in graph.adjacency()]
    degrees = [len(a) for a in adj_sets]
    adj = [tuple(a) for a in adj_sets]
    colour = [0] * n
    forbidden = [0] * n
    uncoloured = set(range(n))
    full = (1 << k) - 1

    clique = _greedy_clique(adj_sets, degrees)
    # Precolouring a clique is sound up to permuting colours; if the clique
    # is larger than k the leftover members simply have empty domains.
    base = 0
    for i, v in enumerate(clique[:k], start=1):
        colour[v] = i
        uncoloured.discard(v)
        bit = 1 << (i - 1)
        for u in adj[v]:
            if colour[u] == 0:
                forbidden[u] |= bit
        base = i

    nodes = 0
    frames: list[tuple[int, int, int, list[int], int]] = []
    max_used = base

    while uncoloured:
        best_v = -1
        best_key = (-1, -1, 0)
        for v in uncoloured:
            key = (forbidden[v].bit_count(), degrees[v], -v)
            if key > best_key:
                best_key = key
                best_v = v
        v = best_v
        cap = min(k, max_used + 1)  # a fresh colour beyond max_used+1 is symmetric
        avail = ~forbidden[v] & ((1 << cap) - 1)

        while True:
            if avail:
                nodes += 1
                if nodes > node_limit:
                    raise BudgetExceeded(f"node limit {node_limit} hit after {nodes - 1} nodes")
                bit = avail & -avail
                avail ^= bit
                c = bit.bit_length()
                colour[v] = c
                uncoloured.discard(v)
                changed = []
                for u in adj[v]:
                    if colour[u] == 0 and not forbidden[u] & bit:
                        forbidden[u] |= bit
                        changed.append(u)
                frames.append((v, avail, c, changed, max_used))
                max_used = max(max_used, c)
                break
            if not frames:
                return ColouringCertificate(k, False, None, nodes)
            v, avail, c, changed, max_used = frames.pop()
            bit = 1 << (c - 1)
            for u in changed:
                forbidden[u] ^= bit
            colour[v] = 0
            uncoloured.add(v)

    assignment = {graph.labels[v]: colour[v] for v in range(n)}
    assert is_proper_colouring(graph, assignment)
    certificate = ColouringCertificate(k, True, assignment, nodes)
    return certificate


def chromatic_number(graph: UGraph, *, node_limit: int | None = None) -> int:
    """Least k admitting a proper colouring, bracketed by clique and greedy bounds."""
    if graph.vertex_count == 0:
        return 0
    adj = [set(a) for a in graph.adjacency()]
    degrees = [len(a) for a in adj]
    lower = max(1, len(_greedy_clique(adj, degrees)))
    _, upper = greedy_colouring(graph)
    for k in range(lower, upper):
        if k_colourable(graph, k, node_limit=node_limit).satisfiable:
            return k
    return upper


def export_cnf(graph: UGraph, k: int) -> str:
    """Direct CNF encoding of k-colourability in DIMACS format.

    One variable per vertex/colour, an at-least-one clause per vertex, and
    a binary conflict clause per edge and colour.  No at-most-one clauses:
    any model projects to a colouring by taking each vertex's least true
    colour.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = graph.vertex_count
    clauses: list[str] = []
    for v in range(n):
        clauses.append(" ".join(str(v * k + c + 1) for c in range(k)) + " 0")
    for i, j in sorted(graph.edges):
        for c in range(k):
            clauses.append(f"-{i * k + c + 1} -{j * k + c + 1} 0")
    header = f"p cnf {n * k} {len(clauses)}"
    comments = [f"c vertex v colour c -> variable (v-1)*{k} + c, 1-based"]
    return "\n".join(comments + [header] + clauses) + "\n"
