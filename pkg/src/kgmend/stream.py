"""Slice-driven enhancement loop: validate/repair, commit, retry held records.

The runner is the single writer. Within a slice every record is repaired
against a frozen snapshot of graph plus provisional instance; the commit
between slices is the only mutation point. Records held for entity cold
start are retried at each later slice boundary until their counter expires.
Constraint discovery is deliberately a no-op: support sets are recomputed
from the enhanced graph, there are no mined rules to maintain.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field

from .graph_store import GraphFormatError, GraphStore, NA, Tuple, read_tuples
from .repair import (
    ACCEPTED,
    HELD,
    REJECTED,
    REPAIRED,
    PredictionFormatError,
    PredictionRecord,
    RepairConfig,
    RepairDecision,
    repair_instance,
)

logger = logging.getLogger(__name__)


@dataclass
class SliceResult:
    index: int
    counts: dict
    committed: int
    per_tuple_seconds: float
    version: int
    malformed: int = 0

    def to_json(self) -> str:
        return json.dumps({
            "slice": self.index,
            "counts": self.counts,
            "committed": self.committed,
            "per_tuple_seconds": self.per_tuple_seconds,
            "version": self.version,
            "malformed": self.malformed,
        })


@dataclass
class HeldRecord:
    record: PredictionRecord
    decision: RepairDecision
    attempts: int


@dataclass
class HoldBuffer:
    max_hold_iterations: int
    entries: list = field(default_factory=list)

    def push(self, rec: PredictionRecord, decision: RepairDecision, attempts: int) -> bool:
        """Buffer for retry; returns False when the retry budget is spent."""
        if attempts > self.max_hold_iterations:
            decision.terminal = True
            return False
        self.entries.append(HeldRecord(rec, decision, attempts))
        return True

    def drain(self) -> list[HeldRecord]:
        out, self.entries = self.entries, []
        return out


def load_label_map(path) -> dict[str, str]:
    """TSV `aux_label<TAB>target_label`; mapping to NA is the same as absent."""
    mapping: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise GraphFormatError(f"line {lineno}: expected aux<TAB>target")
            aux, target = parts[0].strip(), parts[1].strip()
            if not aux or not target:
                raise GraphFormatError(f"line {lineno}: empty label")
            if target == NA:
                continue
            mapping[aux] = target
    return mapping


def integrate_aux(g: GraphStore, aux_graph_path, label_map: dict[str, str]) -> GraphStore:
    """Register a relabeled auxiliary graph as a sampling top-up source.

    Unmapped labels are dropped; auxiliary entities stay in their own store
    and are never merged into g.
    """
    aux = GraphStore()
    for s in read_tuples(aux_graph_path):
        target = label_map.get(s.relation)
        if target is None:
            continue
        aux.add_tuple(Tuple(s.head, target, s.tail))
    g.attach_aux(aux)
    return aux


def commit(g: GraphStore, decisions: list[RepairDecision]) -> int:
    """Insert every Accepted/Repaired final and advance the snapshot version."""
    for dec in decisions:
        if dec.status in (ACCEPTED, REPAIRED):
            g.add_tuple(Tuple(dec.head, dec.final, dec.tail))
    return g.bump_version()


def _chunks(stream, size: int):
    chunk = []
    for item in stream:
        chunk.append(item)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def run(
    g: GraphStore,
    prediction_stream,
    cfg: RepairConfig,
    slice_size: int = 1000,
    workers: int = 1,
) -> tuple[list[RepairDecision], list[SliceResult]]:
    """Drive the acquisition / validate-repair / enhance loop over slices.

    `prediction_stream` yields PredictionRecord values; PredictionFormatError
    values are counted as malformed and skipped. Returns the resolved
    decision log (one entry per record, in resolution order) and one
    SliceResult per slice. The graph is enhanced in place.
    """
    if slice_size < 1:
        raise ValueError("slice_size must be >= 1")
    hold = HoldBuffer(cfg.max_hold_iterations)
    log: list[RepairDecision] = []
    results: list[SliceResult] = []

    for index, raw_slice in enumerate(_chunks(prediction_stream, slice_size)):
        malformed = sum(1 for item in raw_slice if isinstance(item, PredictionFormatError))
        fresh = [item for item in raw_slice if isinstance(item, PredictionRecord)]
        retries = hold.drain()
        batch = [(h.record, h.attempts) for h in retries] + [(rec, 0) for rec in fresh]
        records = [rec for rec, _ in batch]

        start = time.perf_counter()
        decisions = repair_instance(g, records, cfg, workers)
        elapsed = time.perf_counter() - start

        counts = {ACCEPTED: 0, REPAIRED: 0, REJECTED: 0, HELD: 0}
        for (rec, attempts), dec in zip(batch, decisions):
            counts[dec.status] += 1
            if dec.status == HELD:
                if not hold.push(rec, dec, attempts + 1):
                    log.append(dec)
            else:
                log.append(dec)
        committed_before = len(g)
        version = commit(g, decisions)
        logger.info("slice %d: constraint discovery skipped, support sets are implicit", index)
        results.append(SliceResult(
            index=index,
            counts=counts,
            committed=len(g) - committed_before,
            per_tuple_seconds=elapsed / len(records) if records else 0.0,
            version=version,
            malformed=malformed,
        ))

    for entry in hold.drain():
        entry.decision.terminal = True      # the stream ended before more context arrived
        log.append(entry.decision)
    return log, results
