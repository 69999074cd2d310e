"""Brute-force reference implementations for tiny inputs, used only by tests.

Everything here trades speed for literalness: walks are enumerated one edge
at a time, support subgraphs by explicit subset enumeration plus backtracking
monomorphism search, similarity by exhaustive matching search. Hard input
caps keep runtimes sane; none of this is reachable from the CLI.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .graph_store import GraphStore, Tuple
from .patterns import LocalizedPattern, extract_pattern

MAX_WALK_VERTICES = 12
MAX_WALK_RADIUS = 3
MAX_SUPPORT_GRAPH = 12
MAX_SIM_VERTICES = 10


@dataclass(frozen=True)
class MatchWitness:
    """A label- and adjacency-preserving vertex bijection between two subgraphs."""
    mapping: dict
    pairs: int


def _pattern_adjacency(p: LocalizedPattern):
    banned = frozenset((p.center.head, p.center.tail))
    adj = {v: [] for v in p.vertices}
    for e in sorted(p.edges):
        if frozenset((e.head, e.tail)) == banned:
            continue
        adj[e.head].append((e, e.tail))
        if e.tail != e.head:
            adj[e.tail].append((e, e.head))
    return adj


def enumerate_central_walks(p: LocalizedPattern, l: int, mode: str = "sorted") -> dict:
    """Exhaustively enumerate walk pairs through the center; returns the multiset.

    Ground truth for traverse_r: same exclusion rule, same canonicalization,
    one count per distinct (head walk, tail walk) pair.
    """
    if len(p.vertices) > MAX_WALK_VERTICES:
        raise ValueError(f"oracle caps patterns at {MAX_WALK_VERTICES} vertices")
    if not 1 <= l <= MAX_WALK_RADIUS:
        raise ValueError(f"oracle caps l at {MAX_WALK_RADIUS}")
    if l > p.radius:
        raise ValueError("l must not exceed the pattern radius")
    adj = _pattern_adjacency(p)

    def all_walks(v: str, steps: int):
        # a walk is the exact sequence of traversed edges
        if steps == 0:
            yield ((), ())
            return
        for edge, other in adj[v]:
            for labels, edges in all_walks(other, steps - 1):
                yield ((edge.relation,) + labels, (edge,) + edges)

    center = p.center.relation
    counts: Counter = Counter()
    for a in range(l + 1):
        head_walks = list(all_walks(p.center.head, a))
        tail_walks = list(all_walks(p.center.tail, l - a))
        for head_labels, _ in head_walks:
            for tail_labels, _ in tail_walks:
                if mode == "sorted":
                    key = tuple(sorted((center,) + head_labels + tail_labels))
                else:
                    key = tuple(reversed(head_labels)) + (center,) + tail_labels
                counts[key] += 1
    return dict(counts)


def _edge_induced_vertices(edges) -> set[str]:
    verts = set()
    for e in edges:
        verts.add(e.head)
        verts.add(e.tail)
    return verts


def _monomorphism_exists(edges, pattern: LocalizedPattern, pinned: dict) -> bool:
    """Is there an injective vertex map sending every edge onto a pattern edge?

    Label and direction must be preserved; `pinned` fixes the center
    correspondence up front.
    """
    edge_list = sorted(edges)
    pattern_edges = pattern.edges
    pattern_vertices = sorted(pattern.vertices)

    def extend(i: int, mapping: dict) -> bool:
        if i == len(edge_list):
            return True
        e = edge_list[i]
        head_candidates = [mapping[e.head]] if e.head in mapping else pattern_vertices
        for hv in head_candidates:
            if e.head not in mapping and hv in mapping.values():
                continue
            m1 = dict(mapping)
            m1[e.head] = hv
            if e.tail in m1:
                tail_candidates = [m1[e.tail]]
            else:
                tail_candidates = [v for v in pattern_vertices if v not in m1.values()]
            for tv in tail_candidates:
                if Tuple(hv, e.relation, tv) not in pattern_edges:
                    continue
                m2 = dict(m1)
                m2[e.tail] = tv
                if extend(i + 1, m2):
                    return True
        return False

    return extend(0, dict(pinned))


def exact_support(
    g: GraphStore,
    pattern: LocalizedPattern,
    size_cap: int,
    exclude: Tuple | None = None,
) -> list[frozenset]:
    """All support subgraphs of g for the given pattern, as edge sets.

    A support subgraph lives inside the localized pattern of some other
    occurrence s' of the center label, contains s', has at most size_cap
    edges, and maps into `pattern` by a label-preserving monomorphism that
    sends s' to the pattern's center.
    """
    if g.degree_stats()[1] > MAX_SUPPORT_GRAPH:
        raise ValueError(f"oracle caps graphs at {MAX_SUPPORT_GRAPH} vertices")
    if size_cap < 1:
        raise ValueError("size_cap must be >= 1")
    found: set[frozenset] = set()
    for occurrence in g.tuples_with_relation(pattern.center.relation):
        if occurrence == pattern.center or occurrence == exclude:
            continue
        loop_occurrence = occurrence.head == occurrence.tail
        loop_center = pattern.center.head == pattern.center.tail
        if loop_occurrence != loop_center:
            continue    # endpoints cannot correspond injectively
        occ_pattern = extract_pattern(g, occurrence, pattern.radius)
        side_edges = sorted(occ_pattern.edges - {occurrence})
        pinned = {
            occurrence.head: pattern.center.head,
            occurrence.tail: pattern.center.tail,
        }
        for size in range(0, min(size_cap - 1, len(side_edges)) + 1):
            for extra in combinations(side_edges, size):
                candidate = frozenset((occurrence,) + extra)
                if candidate in found:
                    continue
                if _monomorphism_exists(candidate, pattern, pinned):
                    found.add(candidate)
    return sorted(found, key=lambda fs: sorted(fs))


def _common_edges(p1: LocalizedPattern, p2: LocalizedPattern, mapping: dict) -> set[Tuple]:
    common = set()
    for e in p1.edges:
        if e.head in mapping and e.tail in mapping:
            if Tuple(mapping[e.head], e.relation, mapping[e.tail]) in p2.edges:
                common.add(e)
    return common


def _prune_uncovered(mapping: dict, p1: LocalizedPattern, p2: LocalizedPattern) -> dict:
    """Drop matched vertices not touched by any common edge, to a fixpoint."""
    current = dict(mapping)
    while True:
        common = _common_edges(p1, p2, current)
        covered = _edge_induced_vertices(common)
        keep = {u: v for u, v in current.items() if u in covered}
        if len(keep) == len(current):
            return current
        current = keep


def best_common_match(p1: LocalizedPattern, p2: LocalizedPattern) -> MatchWitness:
    """Largest center-pinned matching between subgraphs of the two patterns.

    Exhaustive search over partial injective vertex maps; a map is valid once
    every matched vertex is covered by a common edge, so the witness pair of
    subgraphs is edge-induced on both sides.
    """
    if len(p1.vertices) > MAX_SIM_VERTICES or len(p2.vertices) > MAX_SIM_VERTICES:
        raise ValueError(f"oracle caps patterns at {MAX_SIM_VERTICES} vertices")
    if p1.center.relation != p2.center.relation:
        raise ValueError("center labels differ")
    pinned = {p1.center.head: p2.center.head, p1.center.tail: p2.center.tail}
    if len(set(pinned.values())) != len(pinned):
        # degenerate loop centers; only meaningful when both centers are loops
        if p1.center.head != p1.center.tail:
            return MatchWitness(mapping={}, pairs=0)
    free1 = sorted(p1.vertices - set(pinned))
    free2 = sorted(p2.vertices - set(pinned.values()))
    best = {"witness": MatchWitness(mapping={}, pairs=0)}

    def consider(mapping: dict) -> None:
        pruned = _prune_uncovered(mapping, p1, p2)
        if p1.center.head not in pruned or p1.center.tail not in pruned:
            return      # the center edge itself failed to match
        if len(pruned) > best["witness"].pairs:
            best["witness"] = MatchWitness(mapping=pruned, pairs=len(pruned))

    def search(i: int, mapping: dict) -> None:
        if len(mapping) + (len(free1) - i) <= best["witness"].pairs:
            return      # cannot beat the incumbent
        if i == len(free1):
            consider(mapping)
            return
        u = free1[i]
        for v in free2:
            if v not in mapping.values():
                m = dict(mapping)
                m[u] = v
                search(i + 1, m)
        search(i + 1, mapping)

    search(0, dict(pinned))
    return best["witness"]


def exact_sim(p1: LocalizedPattern, p2: LocalizedPattern) -> float:
    """Matched-pair count of the best center-pinned matching over min pattern size."""
    witness = best_common_match(p1, p2)
    return witness.pairs / min(len(p1.vertices), len(p2.vertices))
