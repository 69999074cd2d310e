"""Central-relation-focused path embedding of a localized pattern.

The embedding of a pattern is the multiset of canonicalized relation-label
sequences read off walk pairs through the center edge: a walk of `a` edges
starting at the head and a walk of `b` edges starting at the tail, a + b = l.
Walks ignore edge direction, may revisit vertices, and never use an edge
whose endpoint set is the center's endpoint pair (parallels of the center
would otherwise be counted from both sides). Each sequence carries the center
label plus the l side labels; the count is the number of distinct walk pairs
producing it.

Two canonicalizations: "sorted" (default, lexicographic sort of the whole
sequence) and "positional" (head walk reversed, then center, then tail walk,
which preserves the actual walk layout for witness checks). Embeddings of
different modes never compare.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .patterns import LocalizedPattern

MODES = ("sorted", "positional")


@dataclass(frozen=True)
class PathEmbedding:
    center_label: str
    radius: int
    mode: str
    counts: dict  # canonical label sequence (tuple of str) -> walk-pair count

    @property
    def size(self) -> int:
        """Total multiset size, the sum of all counts."""
        return sum(self.counts.values())

    def is_empty(self) -> bool:
        return not self.counts


def _side_adjacency(p: LocalizedPattern) -> dict[str, list[tuple[str, str]]]:
    """Undirected adjacency over pattern edges, minus center-endpoint parallels."""
    banned = frozenset((p.center.head, p.center.tail))
    adj: dict[str, list[tuple[str, str]]] = {v: [] for v in p.vertices}
    for e in sorted(p.edges):
        if frozenset((e.head, e.tail)) == banned:
            continue
        adj[e.head].append((e.relation, e.tail))
        if e.tail != e.head:
            adj[e.tail].append((e.relation, e.head))
    return adj


def traverse_r(p: LocalizedPattern, l: int, mode: str = "sorted") -> PathEmbedding:
    """Compute the path embedding of pattern p at walk budget l.

    Requires 1 <= l <= p.radius so every enumerated walk stays inside the
    pattern. A pattern holding only its center edge embeds to the empty
    multiset.
    """
    if not 1 <= l <= p.radius:
        raise ValueError(f"need 1 <= l <= pattern radius, got l={l}, radius={p.radius}")
    if mode not in MODES:
        raise ValueError(f"unknown canonicalization mode {mode!r}")
    adj = _side_adjacency(p)

    @lru_cache(maxsize=None)
    def walks(v: str, steps: int) -> tuple[tuple[tuple[str, ...], int], ...]:
        # label sequence -> number of distinct walks from v realizing it
        if steps == 0:
            return (((), 1),)
        acc: Counter = Counter()
        for label, other in adj[v]:
            for seq, n in walks(other, steps - 1):
                acc[(label,) + seq] += n
        return tuple(sorted(acc.items()))

    center = p.center.relation
    counts: Counter = Counter()
    for a in range(l + 1):
        for head_seq, hn in walks(p.center.head, a):
            for tail_seq, tn in walks(p.center.tail, l - a):
                if mode == "sorted":
                    key = tuple(sorted((center,) + head_seq + tail_seq))
                else:
                    key = tuple(reversed(head_seq)) + (center,) + tail_seq
                counts[key] += hn * tn
    walks.cache_clear()
    return PathEmbedding(center_label=center, radius=l, mode=mode, counts=dict(counts))


def _check_comparable(m1: PathEmbedding, m2: PathEmbedding) -> None:
    if m1.center_label != m2.center_label:
        raise ValueError(f"center labels differ: {m1.center_label!r} vs {m2.center_label!r}")
    if m1.radius != m2.radius:
        raise ValueError(f"radii differ: {m1.radius} vs {m2.radius}")
    if m1.mode != m2.mode:
        raise ValueError(f"canonicalization modes differ: {m1.mode!r} vs {m2.mode!r}")


def _edit_distance(a: tuple[str, ...], b: tuple[str, ...], limit: int) -> int:
    """Token-level Levenshtein distance, early exit above limit."""
    if abs(len(a) - len(b)) > limit:
        return limit + 1
    prev = list(range(len(b) + 1))
    for i, ta in enumerate(a, start=1):
        cur = [i]
        best = i
        for j, tb in enumerate(b, start=1):
            cost = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ta != tb))
            cur.append(cost)
            best = min(best, cost)
        if best > limit:
            return limit + 1
        prev = cur
    return prev[-1]


def multiset_intersection_size(m1: PathEmbedding, m2: PathEmbedding, edit_tolerance: int = 0) -> int:
    """Size of the multiset intersection, the common-path count.

    With edit_tolerance > 0, sequences within that token edit distance are
    merged greedily in canonical order; every occurrence count is consumed at
    most once.
    """
    _check_comparable(m1, m2)
    if edit_tolerance < 0:
        raise ValueError("edit_tolerance must be >= 0")
    if edit_tolerance == 0:
        return sum(min(n, m2.counts.get(seq, 0)) for seq, n in m1.counts.items())
    left = dict(sorted(m1.counts.items()))
    right = dict(sorted(m2.counts.items()))
    total = 0
    for seq1, n1 in left.items():
        remaining = n1
        for seq2, n2 in right.items():
            if remaining == 0:
                break
            if n2 == 0:
                continue
            if _edit_distance(seq1, seq2, edit_tolerance) <= edit_tolerance:
                take = min(remaining, n2)
                total += take
                remaining -= take
                right[seq2] = n2 - take
    return total


def sim(m1: PathEmbedding, m2: PathEmbedding, edit_tolerance: int = 0) -> float:
    """Common-path count over the smaller multiset size, in [0, 1].

    Zero when either embedding is empty (the cold-start convention: no side
    paths means no evidence).
    """
    _check_comparable(m1, m2)
    if m1.is_empty() or m2.is_empty():
        return 0.0
    inter = multiset_intersection_size(m1, m2, edit_tolerance)
    return inter / min(m1.size, m2.size)


def format_embedding(m: PathEmbedding) -> str:
    """One line per sequence, `label1,label2,...<TAB>count`, sorted."""
    lines = [f"{','.join(seq)}\t{n}" for seq, n in sorted(m.counts.items())]
    return "".join(line + "\n" for line in lines)
