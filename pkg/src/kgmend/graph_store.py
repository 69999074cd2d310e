"""Indexed directed multigraph of RDF tuples.

The store keeps out/in adjacency, a relation-occurrence index and a cached
maximum total degree. Set semantics: the same tuple is never stored twice,
but parallel edges with different labels between the same endpoints are fine.
The reserved label NA ("no relation") is never stored; deletion of a fact is
physical removal.
"""

from __future__ import annotations

import sys
from bisect import bisect_left
from contextlib import contextmanager
from typing import Iterable, Iterator, NamedTuple

NA = "NA"


class Tuple(NamedTuple):
    head: str
    relation: str
    tail: str


class NALabelError(ValueError):
    """Raised when a caller tries to store a tuple labeled NA."""


class GraphFormatError(ValueError):
    """Raised when a graph/candidate file does not parse."""


class GraphStore:
    """Directed labeled multigraph with the indexes validation needs.

    Single writer, many readers: mutation is only legal between read phases
    (the stream runner enforces the barrier). Reads never mutate state except
    the lazily rebuilt caches, which are deterministic.
    """

    def __init__(self) -> None:
        self._out: dict[str, set[tuple[str, str]]] = {}   # head -> {(relation, tail)}
        self._in: dict[str, set[tuple[str, str]]] = {}    # tail -> {(relation, head)}
        self._by_relation: dict[str, set[Tuple]] = {}
        self._degree: dict[str, int] = {}                 # in-degree + out-degree
        self._edge_count = 0
        self._d_max = 0
        self._d_max_valid = True
        self.version = 0
        # relation -> occurrences sorted by (head, tail); rebuilt on demand
        self._relation_order: dict[str, list[Tuple]] = {}
        # (center, l, mode, neighborhood) -> PathEmbedding of stored witnesses
        self.embedding_cache: dict = {}
        self.aux_source: "GraphStore | None" = None

    # -- mutation ----------------------------------------------------------

    def add_tuple(self, s: Tuple) -> bool:
        """Insert s; return True if inserted, False if already present."""
        if s.relation == NA:
            raise NALabelError(f"refusing to store NA-labeled tuple {s.head} -> {s.tail}")
        if s in self._by_relation.get(s.relation, ()):
            return False
        self._out.setdefault(s.head, set()).add((s.relation, s.tail))
        self._in.setdefault(s.tail, set()).add((s.relation, s.head))
        self._by_relation.setdefault(s.relation, set()).add(s)
        self._edge_count += 1
        for v in (s.head, s.tail):
            d = self._degree.get(v, 0) + 1
            self._degree[v] = d
            if d > self._d_max:
                self._d_max = d
        self._touch(s.relation)
        return True

    def remove_tuple(self, s: Tuple) -> bool:
        """Remove s; return True if it was present (absence is not an error)."""
        if s not in self._by_relation.get(s.relation, ()):
            return False
        self._out[s.head].discard((s.relation, s.tail))
        self._in[s.tail].discard((s.relation, s.head))
        self._by_relation[s.relation].discard(s)
        if not self._by_relation[s.relation]:
            del self._by_relation[s.relation]
        self._edge_count -= 1
        for v in (s.head, s.tail):
            d = self._degree[v] - 1
            if d == 0:
                del self._degree[v]
                if not self._out.get(v) and v in self._out:
                    del self._out[v]
                if not self._in.get(v) and v in self._in:
                    del self._in[v]
            else:
                self._degree[v] = d
            if d + 1 == self._d_max:
                self._d_max_valid = False
        self._touch(s.relation)
        return True

    def _touch(self, relation: str) -> None:
        self._relation_order.pop(relation, None)
        if self.embedding_cache:
            self.embedding_cache.clear()

    def bump_version(self) -> int:
        self.version += 1
        return self.version

    @contextmanager
    def overlay(self, tuples: Iterable[Tuple]):
        """Temporarily add tuples (a g-union-instance snapshot), then restore.

        The caller must not mutate the store inside the block; concurrent
        reads are safe because all mutation happens before the block starts.
        """
        inserted = [s for s in tuples if self.add_tuple(s)]
        self.bump_version()
        try:
            yield self
        finally:
            for s in reversed(inserted):
                self.remove_tuple(s)
            self.bump_version()

    # -- queries -----------------------------------------------------------

    def __contains__(self, s: Tuple) -> bool:
        return s in self._by_relation.get(s.relation, ())

    def __len__(self) -> int:
        return self._edge_count

    def tuples_with_relation(self, r: str) -> list[Tuple]:
        """All tuples labeled r, sorted by head string then tail string."""
        order = self._relation_order.get(r)
        if order is None:
            order = sorted(self._by_relation.get(r, ()), key=lambda s: (s.head, s.tail))
            self._relation_order[r] = order
        return order

    def occurrence_index(self, r: str, exclude: Tuple | None = None) -> tuple[list[Tuple], int]:
        """Sorted occurrence list for r and the count with exclude removed.

        Returns (sorted list, logical length); use `occurrence_at` to read
        positions so the excluded tuple is skipped without copying.
        """
        order = self.tuples_with_relation(r)
        if exclude is not None and self._find(order, exclude) is not None:
            return order, len(order) - 1
        return order, len(order)

    def occurrence_at(self, order: list[Tuple], i: int, exclude: Tuple | None) -> Tuple:
        if exclude is None:
            return order[i]
        pos = self._find(order, exclude)
        if pos is None or i < pos:
            return order[i]
        return order[i + 1]

    @staticmethod
    def _find(order: list[Tuple], s: Tuple) -> int | None:
        i = bisect_left(order, (s.head, s.tail), key=lambda o: (o.head, o.tail))
        while i < len(order) and order[i].head == s.head and order[i].tail == s.tail:
            if order[i] == s:
                return i
            i += 1
        return None

    def relations(self) -> list[str]:
        return sorted(self._by_relation)

    def all_tuples(self) -> Iterator[Tuple]:
        for bucket in self._by_relation.values():
            yield from bucket

    def out_edges(self, v: str) -> Iterator[Tuple]:
        for relation, tail in self._out.get(v, ()):
            yield Tuple(v, relation, tail)

    def in_edges(self, v: str) -> Iterator[Tuple]:
        for relation, head in self._in.get(v, ()):
            yield Tuple(head, relation, v)

    def incident(self, v: str) -> Iterator[Tuple]:
        yield from self.out_edges(v)
        for s in self.in_edges(v):
            if s.head != s.tail:        # self loops already came out of _out
                yield s

    def has_incident(self, v: str, skipping: frozenset[Tuple] = frozenset()) -> bool:
        return any(s not in skipping for s in self.incident(v))

    def edges_between(self, u: str, v: str) -> set[Tuple]:
        """Edges with endpoint set {u, v}, either orientation (and loops if u == v)."""
        found = {Tuple(u, r, t) for r, t in self._out.get(u, ()) if t == v}
        if u != v:
            found |= {Tuple(v, r, t) for r, t in self._out.get(v, ()) if t == u}
        return found

    def has_vertex(self, v: str) -> bool:
        return v in self._degree

    def vertices(self) -> Iterator[str]:
        yield from self._degree

    def degree(self, v: str) -> int:
        return self._degree.get(v, 0)

    def degree_stats(self) -> tuple[int, int, int]:
        """(max total degree, vertex count, edge count)."""
        if not self._d_max_valid:
            self._d_max = max(self._degree.values(), default=0)
            self._d_max_valid = True
        return self._d_max, len(self._degree), self._edge_count

    def d_max(self) -> int:
        return self.degree_stats()[0]

    def attach_aux(self, aux: "GraphStore | None") -> None:
        self.aux_source = aux


# -- flat-file format --------------------------------------------------------

def parse_tuple_line(line: str, lineno: int) -> Tuple:
    parts = line.split("\t")
    if len(parts) != 3:
        raise GraphFormatError(f"line {lineno}: expected head<TAB>relation<TAB>tail, got {len(parts)} fields")
    head, relation, tail = (sys.intern(p.strip()) for p in parts)
    if not head or not relation or not tail:
        raise GraphFormatError(f"line {lineno}: empty field")
    if relation == NA:
        raise GraphFormatError(f"line {lineno}: relation label NA is not storable")
    return Tuple(head, relation, tail)


def read_tuples(path) -> list[Tuple]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            out.append(parse_tuple_line(line, lineno))
    return out


def load_graph(path) -> GraphStore:
    g = GraphStore()
    for s in read_tuples(path):
        g.add_tuple(s)
    return g


def save_graph(g: GraphStore, path) -> None:
    """Write the canonical sorted order (head, relation, tail)."""
    with open(path, "w", encoding="utf-8") as fh:
        for s in sorted(g.all_tuples()):
            fh.write(f"{s.head}\t{s.relation}\t{s.tail}\n")
