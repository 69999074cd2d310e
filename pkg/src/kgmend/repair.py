"""Optimize-validate repair of knowledge-acquisition candidates.

Each prediction record carries Top-k relation labels with probabilities. The
initial guess is the Top-1 label; when it fails validation, the alternatives
are retried in descending joint score, the product of the acquisition
probability and a structural linkage prediction. Nothing passing means NA.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .graph_store import GraphStore, NA, Tuple
from .validation import (
    INVALID,
    UNKNOWN,
    VALID,
    Evidence,
    ValidationConfig,
    _decide_status,
    gather_evidence,
    support_from_evidence,
)

ACCEPTED = "Accepted"
REPAIRED = "Repaired"
REJECTED = "Rejected"
HELD = "Held"

UNKNOWN_POLICIES = ("accept", "hold", "reject")


class PredictionFormatError(ValueError):
    """Raised when a prediction record does not parse."""


@dataclass(frozen=True)
class PredictionRecord:
    id: str
    head: str
    tail: str
    candidates: tuple    # ((relation, probability), ...) descending by probability


@dataclass
class RepairConfig:
    k: int = 5
    p_th: float = 0.0
    unknown_policy: str = "hold"
    max_hold_iterations: int = 3
    validation: ValidationConfig = field(default_factory=ValidationConfig)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0 <= self.p_th <= 1:
            raise ValueError("p_th must be in [0, 1]")
        if self.unknown_policy not in UNKNOWN_POLICIES:
            raise ValueError(f"unknown_policy must be one of {UNKNOWN_POLICIES}")


@dataclass
class RepairDecision:
    id: str
    head: str
    tail: str
    initial: str
    final: str
    status: str
    joint: float
    support: int
    terminal: bool = False
    checks: int = 0      # evidence evaluations spent, at most k + 1

    def to_json(self) -> str:
        payload = {
            "id": self.id,
            "head": self.head,
            "tail": self.tail,
            "initial": self.initial,
            "final": self.final,
            "status": self.status,
            "joint": self.joint,
            "support": self.support,
        }
        if self.status == HELD and self.terminal:
            payload["terminal"] = True
        return json.dumps(payload)


def parse_record(obj: dict) -> PredictionRecord:
    try:
        rid, head, tail = obj["id"], obj["head"], obj["tail"]
        raw = obj["candidates"]
    except (KeyError, TypeError) as exc:
        raise PredictionFormatError(f"record missing field: {exc}") from exc
    if not isinstance(raw, list) or not raw:
        raise PredictionFormatError(f"record {rid!r}: candidates must be a nonempty list")
    candidates = []
    previous = None
    for entry in raw:
        try:
            relation, p = entry["relation"], float(entry["p"])
        except (KeyError, TypeError, ValueError) as exc:
            raise PredictionFormatError(f"record {rid!r}: bad candidate {entry!r}") from exc
        if not 0.0 <= p <= 1.0:
            raise PredictionFormatError(f"record {rid!r}: probability {p} outside [0, 1]")
        if previous is not None and p > previous + 1e-12:
            raise PredictionFormatError(f"record {rid!r}: candidates not sorted by descending p")
        previous = p
        candidates.append((str(relation), p))
    return PredictionRecord(id=str(rid), head=str(head), tail=str(tail),
                            candidates=tuple(candidates))


def initial_instance(records: list[PredictionRecord], p_th: float) -> list[Tuple]:
    """Top-1 tuples of the qualifying records, in record order."""
    instance = []
    for rec in records:
        label, p = rec.candidates[0]
        if label != NA and p >= p_th:
            instance.append(Tuple(rec.head, label, rec.tail))
    return instance


def predict_link(g: GraphStore, h: str, t: str, r: str, cfg: ValidationConfig) -> float:
    """Mean embedding similarity against the sampled same-label patterns.

    Zero on an empty sample (relation-label cold start) and for candidates
    whose own pattern has no side paths.
    """
    if r == NA:
        raise ValueError("NA is not a predictable relation")
    ev = gather_evidence(g, Tuple(h, r, t), cfg)
    if not ev.sims:
        return 0.0
    return sum(ev.sims) / len(ev.sims)


def _link_from_evidence(ev: Evidence) -> float:
    if not ev.sims:
        return 0.0
    return sum(ev.sims) / len(ev.sims)


def _top_k_labels(rec: PredictionRecord, k: int) -> list[tuple[str, float]]:
    picked = []
    seen = set()
    for label, p in rec.candidates:
        if label == NA or label in seen:
            continue
        picked.append((label, p))
        seen.add(label)
        if len(picked) == k:
            break
    return picked


def joint_scores(g: GraphStore, rec: PredictionRecord, cfg: RepairConfig,
                 link_fn=None) -> list[tuple[str, float]]:
    """Acquisition probability times linkage prediction for the Top-k labels.

    Sorted descending, ties broken by acquisition probability then label
    string. `link_fn(g, h, t, r, cfg.validation)` may replace the built-in
    predictor, e.g. to study a different linkage model.
    """
    link = link_fn or predict_link
    scored = []
    for label, p in _top_k_labels(rec, cfg.k):
        scored.append((label, p, p * link(g, rec.head, rec.tail, label, cfg.validation)))
    scored.sort(key=lambda row: (-row[2], -row[1], row[0]))
    return [(label, joint) for label, _, joint in scored]


def repair_tuple(g: GraphStore, rec: PredictionRecord, cfg: RepairConfig,
                 context_ignore: frozenset = frozenset()) -> RepairDecision:
    """Validate the Top-1 label, then walk the joint-ranked alternatives.

    Unknown classifications follow cfg.unknown_policy: accept passes them,
    hold defers the whole record, reject treats them as failures. At most
    k + 1 evidence evaluations are spent per record. `context_ignore` names
    provisional tuples sharing the snapshot that must not count as committed
    evidence; the record's own Top-1 tuple is always ignored.
    """
    top_label, top_p = rec.candidates[0]
    if top_label == NA or top_p < cfg.p_th:
        return RepairDecision(rec.id, rec.head, rec.tail, initial=NA, final=NA,
                              status=REJECTED, joint=0.0, support=0)
    vcfg = cfg.validation
    initial = Tuple(rec.head, top_label, rec.tail)
    ignore = context_ignore | {initial}
    checks = 0

    def evaluate(label: str):
        nonlocal checks
        checks += 1
        s = Tuple(rec.head, label, rec.tail)
        ev = gather_evidence(g, s, vcfg, ignore)
        report = support_from_evidence(g, s, vcfg, ev, ignore)
        return s, ev, _decide_status(g, s, vcfg, report, ignore)

    _, ev0, report0 = evaluate(top_label)
    joint0 = top_p * _link_from_evidence(ev0)
    if report0.status == VALID or (report0.status == UNKNOWN and cfg.unknown_policy == "accept"):
        return RepairDecision(rec.id, rec.head, rec.tail, initial=top_label,
                              final=top_label, status=ACCEPTED, joint=joint0,
                              support=report0.support_count, checks=checks)
    unknown_seen = report0.status == UNKNOWN

    ranked = []
    for label, p in _top_k_labels(rec, cfg.k):
        if label == top_label:
            continue
        s, ev, report = evaluate(label)
        joint = p * _link_from_evidence(ev)
        ranked.append((label, p, joint, report))
    ranked.sort(key=lambda row: (-row[2], -row[1], row[0]))

    for label, _, joint, report in ranked:
        if report.status == VALID or (report.status == UNKNOWN and cfg.unknown_policy == "accept"):
            return RepairDecision(rec.id, rec.head, rec.tail, initial=top_label,
                                  final=label, status=REPAIRED, joint=joint,
                                  support=report.support_count, checks=checks)
        if report.status == UNKNOWN:
            unknown_seen = True

    if unknown_seen and cfg.unknown_policy == "hold":
        status = HELD
    else:
        status = REJECTED
    return RepairDecision(rec.id, rec.head, rec.tail, initial=top_label, final=NA,
                          status=status, joint=0.0, support=report0.support_count,
                          checks=checks)


def repair_instance(g: GraphStore, records: list[PredictionRecord], cfg: RepairConfig,
                    workers: int = 1) -> list[RepairDecision]:
    """Repair every record against the frozen g-union-instance snapshot.

    Decisions come back in input order and are identical for any worker
    count; there is no cross-record combinatorial search.
    """
    instance = initial_instance(records, cfg.p_th)
    context = frozenset(instance)
    with g.overlay(instance):
        if workers <= 1:
            return [repair_tuple(g, rec, cfg, context) for rec in records]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda rec: repair_tuple(g, rec, cfg, context), records))


# -- prediction and decision files -------------------------------------------

def iter_prediction_lines(path):
    """Yield parsed records, or PredictionFormatError for lines that fail."""
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                yield parse_record(json.loads(line))
            except (json.JSONDecodeError, PredictionFormatError) as exc:
                yield PredictionFormatError(f"line {lineno}: {exc}")


def read_predictions(path, strict: bool = True) -> list[PredictionRecord]:
    records = []
    for item in iter_prediction_lines(path):
        if isinstance(item, PredictionFormatError):
            if strict:
                raise item
            continue
        records.append(item)
    return records


def write_predictions(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps({
                "id": rec.id,
                "head": rec.head,
                "tail": rec.tail,
                "candidates": [{"relation": r, "p": p} for r, p in rec.candidates],
            }) + "\n")


def write_decisions(decisions, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for dec in decisions:
            fh.write(dec.to_json() + "\n")
