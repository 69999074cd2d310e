"""Tri-state classification of candidate tuples via sampled pattern support.

A candidate is Valid when enough sampled same-label patterns look similar to
its own localized pattern (the support set is the implicit constraint: no
mined rules, just structural precedent). With no support, committed edges
around the candidate's endpoints decide between Invalid and Unknown.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field, replace

from .embedding import MODES, PathEmbedding, sim, traverse_r
from .graph_store import GraphStore, NA, Tuple
from .patterns import LocalizedPattern, NEIGHBORHOODS, extract_pattern

VALID = "Valid"
INVALID = "Invalid"
UNKNOWN = "Unknown"


@dataclass
class ValidationConfig:
    l: int = 2
    theta: float = 0.0          # strict: a witness needs sim > theta
    delta: int = 1              # witnesses required for Valid
    sample_size: int = 10
    seed: int = 0
    escalate_full_scan: bool = True
    scan_cap: int = 200
    edit_tolerance: int = 0
    mode: str = "sorted"
    neighborhood: str = "union"

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("l must be >= 1")
        if not 0 <= self.theta < 1:
            raise ValueError("theta must be in [0, 1)")
        if self.delta < 1:
            raise ValueError("delta must be >= 1")
        if self.sample_size < 1:
            raise ValueError("sample_size must be >= 1")
        if self.scan_cap < 0 or self.edit_tolerance < 0:
            raise ValueError("scan_cap and edit_tolerance must be >= 0")
        if self.mode not in MODES:
            raise ValueError(f"unknown canonicalization mode {self.mode!r}")
        if self.neighborhood not in NEIGHBORHOODS:
            raise ValueError(f"unknown neighborhood semantics {self.neighborhood!r}")


@dataclass
class SupportReport:
    tuple: Tuple
    support_count: int
    status: str | None
    witnesses: list = field(default_factory=list)   # (center tuple, from_aux)
    escalated: bool = False
    heuristic: bool = False


def _draw_rng(cfg: ValidationConfig, r: str, exclude: Tuple | None, version: int, realm: str) -> random.Random:
    # sampling must depend only on these inputs, never on thread scheduling
    material = repr((cfg.seed, r, exclude, version, realm)).encode()
    digest = hashlib.blake2b(material, digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def sample_centers(
    g: GraphStore, r: str, cfg: ValidationConfig, exclude: Tuple | None = None
) -> list[tuple[Tuple, bool]]:
    """Deterministic uniform sample of occurrence centers, without replacement.

    Everything available is returned when the index holds fewer than
    sample_size occurrences; a registered auxiliary source then tops the
    sample up with relabeled occurrences (tagged True).
    """
    order, available = g.occurrence_index(r, exclude)
    if available >= cfg.sample_size:
        rng = _draw_rng(cfg, r, exclude, g.version, "native")
        picks = rng.sample(range(available), cfg.sample_size)
        return [(g.occurrence_at(order, i, exclude), False) for i in picks]
    chosen = [(g.occurrence_at(order, i, exclude), False) for i in range(available)]
    aux = g.aux_source
    if aux is not None and len(chosen) < cfg.sample_size:
        aux_order, aux_available = aux.occurrence_index(r, None)
        need = min(cfg.sample_size - len(chosen), aux_available)
        if need > 0:
            rng = _draw_rng(cfg, r, exclude, aux.version, "aux")
            picks = rng.sample(range(aux_available), need)
            chosen.extend((aux_order[i], True) for i in picks)
    return chosen


def sample_patterns(
    g: GraphStore, r: str, cfg: ValidationConfig, exclude: Tuple | None = None
) -> list[LocalizedPattern]:
    patterns = []
    for center, from_aux in sample_centers(g, r, cfg, exclude):
        source = g.aux_source if from_aux else g
        patterns.append(extract_pattern(source, center, cfg.l, cfg.neighborhood, from_aux=from_aux))
    return patterns


def candidate_embedding(g: GraphStore, s: Tuple, cfg: ValidationConfig) -> PathEmbedding:
    """Embedding of the candidate's own pattern, built over g plus the candidate."""
    pattern = extract_pattern(g, s, cfg.l, cfg.neighborhood)
    return traverse_r(pattern, cfg.l, cfg.mode)


def witness_embedding(source: GraphStore, center: Tuple, cfg: ValidationConfig) -> PathEmbedding:
    """Embedding of a stored occurrence, cached on its store until a commit."""
    key = (center, cfg.l, cfg.mode, cfg.neighborhood)
    cached = source.embedding_cache.get(key)
    if cached is None:
        pattern = extract_pattern(source, center, cfg.l, cfg.neighborhood)
        cached = traverse_r(pattern, cfg.l, cfg.mode)
        source.embedding_cache[key] = cached
    return cached


@dataclass
class Evidence:
    """Sampled similarity scores for one (candidate tuple, label) pair."""
    candidate: PathEmbedding
    centers: list            # (center tuple, from_aux), sample order
    sims: list


def gather_evidence(g: GraphStore, s: Tuple, cfg: ValidationConfig,
                    ignore: frozenset = frozenset()) -> Evidence:
    # provisional instance tuples shape patterns but may not testify as witnesses
    cand = candidate_embedding(g, s, cfg)
    centers = [pair for pair in sample_centers(g, s.relation, cfg, exclude=s)
               if pair[0] not in ignore]
    sims = []
    for center, from_aux in centers:
        source = g.aux_source if from_aux else g
        sims.append(sim(cand, witness_embedding(source, center, cfg), cfg.edit_tolerance))
    return Evidence(candidate=cand, centers=centers, sims=sims)


def support_from_evidence(g: GraphStore, s: Tuple, cfg: ValidationConfig, ev: Evidence,
                          ignore: frozenset = frozenset()) -> SupportReport:
    witnesses = [ev.centers[i] for i, v in enumerate(ev.sims) if v > cfg.theta]
    count = len(witnesses)
    escalated = False
    if count < cfg.delta and cfg.escalate_full_scan:
        sampled = {c for c, _ in ev.centers}
        order, _ = g.occurrence_index(s.relation, exclude=None)
        scanned = 0
        for center in order:
            if count >= cfg.delta or scanned >= cfg.scan_cap:
                break
            if center == s or center in sampled or center in ignore:
                continue
            escalated = True
            scanned += 1
            if sim(ev.candidate, witness_embedding(g, center, cfg), cfg.edit_tolerance) > cfg.theta:
                witnesses.append((center, False))
                count += 1
    return SupportReport(tuple=s, support_count=count, status=None,
                         witnesses=witnesses, escalated=escalated)


def support(g: GraphStore, s: Tuple, cfg: ValidationConfig,
            ignore: frozenset = frozenset()) -> SupportReport:
    """Count sampled witnesses with sim above theta, escalating when short."""
    if s.relation == NA:
        raise ValueError("NA tuples are never validated")
    return support_from_evidence(g, s, cfg, gather_evidence(g, s, cfg, ignore), ignore)


def _decide_status(g: GraphStore, s: Tuple, cfg: ValidationConfig,
                   report: SupportReport, ignore: frozenset) -> SupportReport:
    if report.support_count >= cfg.delta:
        report.status = VALID
        return report
    skip = ignore | {s}
    between = g.edges_between(s.head, s.tail) - skip
    if any(e.relation != s.relation for e in between):
        report.status = INVALID            # a differently labeled fact already links the endpoints
    elif not between and (g.has_incident(s.head, skip) or g.has_incident(s.tail, skip)):
        report.status = INVALID            # the endpoints are known but nothing supports this link
    else:
        report.status = UNKNOWN
    if report.status == INVALID and cfg.l > 1:
        report.heuristic = True            # the invalidity argument is only proven at l = 1
    return report


def classify(g: GraphStore, s: Tuple, cfg: ValidationConfig,
             ignore: frozenset = frozenset()) -> SupportReport:
    """Classify s as Valid, Invalid or Unknown against the current snapshot.

    `ignore` lists candidate tuples that may sit in the snapshot as context
    but must not count as committed evidence, neither as support witnesses
    nor for the Invalid conditions (a record's own provisional fact never
    testifies for or against its alternatives).
    """
    report = support(g, s, cfg, ignore)
    return _decide_status(g, s, cfg, report, ignore)


def validate_instance(
    g: GraphStore, instance: list[Tuple], cfg: ValidationConfig
) -> tuple[list[SupportReport], bool]:
    """Classify every instance tuple against g plus the whole instance.

    Legality only requires the absence of Invalid tuples; Unknown is fine.
    """
    if len(set(instance)) != len(instance):
        raise ValueError("instance tuples must be pairwise distinct")
    ignore = frozenset(instance)
    with g.overlay(instance):
        reports = [classify(g, s, cfg, ignore=ignore) for s in instance]
    legal = all(r.status != INVALID for r in reports)
    return reports, legal


def config_with(cfg: ValidationConfig, **changes) -> ValidationConfig:
    return replace(cfg, **changes)
