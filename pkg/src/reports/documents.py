"""Emitted documents: pydantic schemas plus their JSON and CSV renderings."""
from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone
from typing import Any, Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel

from src.checks import DirectionReport, SensitivityReport
from src.game.io import GameFile, dump_game
from src.game.model import FrequencyVector, Game, MixedStrategy
from src.game.numbers import Number, format_rational
from src.oracle import OracleVerdict
from src.robust import DefectionWitness, RobustActionSet, RobustnessCertificate
from src.search import PureProfileCandidate, ScanReport, SearchReport

Verdict = Literal["robust", "not-robust"]


class ConfigArgmax(BaseModel):
    config: List[int]
    argmax: List[str]
    value: str


class Evidence(BaseModel):
    player: int
    actions: List[str]
    per_config: List[ConfigArgmax]


class Witness(BaseModel):
    player: int
    config: List[int]
    deviation: str
    gain: str
    dropped: List[str]
    removed: Optional[List[int]] = None


class OracleDocument(BaseModel):
    verdict: Verdict
    method: Literal["exhaustive-pure", "sampled-mixed"]
    samples: int
    seed: int
    pure_verdict: Verdict
    mixed_contradictions: int
    agrees: bool


class CertificateDocument(BaseModel):
    verdict: Verdict
    alpha: int
    tolerance_qualified: bool = False
    witness: Optional[Witness] = None
    evidence: Optional[List[Evidence]] = None
    oracle: Optional[OracleDocument] = None


class IndexDocument(BaseModel):
    n_players: int
    nash: bool
    defection_index: int
    defection_index_d: int
    chain: List[CertificateDocument]
    oracle_index: Optional[int] = None
    expected_index: Optional[int] = None
    discrepancy: Optional[bool] = None


class PureCandidateDocument(BaseModel):
    assignment: List[int]
    certificate: CertificateDocument


class DynamicsDocument(BaseModel):
    outcome: Literal["converged", "rejected", "failed", "max-iters"]
    iterations: int
    selection_rule: str
    final_strategy: Optional[List[str]] = None
    certificate: Optional[CertificateDocument] = None


class SearchDocument(BaseModel):
    alpha: int
    status: Literal["exhaustive", "heuristic"]
    candidates_examined: int
    found: bool
    robust_profiles: List[PureCandidateDocument]
    dynamics: Optional[DynamicsDocument] = None


class SensitivityDocument(BaseModel):
    base_config: List[int]
    c: List[str]
    delta_c: List[str]
    delta_c_up: List[str]
    y: str
    bound: List[str]
    holds: bool
    holds_literal: bool
    anchor: Optional[str] = None
    convention: str


class ConfigVector(BaseModel):
    config: List[int]
    payoffs: List[str]


class DirectionDocument(BaseModel):
    invariant: bool
    tolerance: str
    norm: str
    differing_config: Optional[List[int]] = None
    vectors: List[ConfigVector]


class SufficiencyDocument(BaseModel):
    alpha: int
    robust_actions: List[str]
    certified: bool
    consistent: bool
    sensitivity: SensitivityDocument
    direction: DirectionDocument


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _values(values: Sequence[Number]) -> List[str]:
    return [format_rational(v) for v in values]


def _verdict(robust: bool) -> Verdict:
    return "robust" if robust else "not-robust"


def strategy_values(strategy: MixedStrategy) -> List[str]:
    return _values(strategy.probs)


def witness_document(game: Game, witness: DefectionWitness) -> Witness:
    return Witness(
        player=witness.player,
        config=witness.config.as_list(),
        deviation=game.label(witness.deviation),
        gain=format_rational(witness.gain),
        dropped=game.labels_of(witness.dropped),
        removed=witness.removed.as_list() if witness.removed is not None else None,
    )


def evidence_document(game: Game, player: int, robust_set: RobustActionSet) -> Evidence:
    return Evidence(
        player=player,
        actions=game.labels_of(robust_set.actions),
        per_config=[
            ConfigArgmax(
                config=config.as_list(),
                argmax=game.labels_of(br.actions),
                value=format_rational(br.value),
            )
            for config, br in robust_set.per_config_argmax
        ],
    )


def certificate_document(game: Game, certificate: RobustnessCertificate) -> CertificateDocument:
    witness = witness_document(game, certificate.witness) if certificate.witness else None
    evidence = None
    if certificate.robust:
        evidence = [evidence_document(game, player, rs) for player, rs in certificate.evidence]
    return CertificateDocument(
        verdict=_verdict(certificate.robust),
        alpha=certificate.alpha,
        tolerance_qualified=certificate.tolerance_qualified,
        witness=witness,
        evidence=evidence,
    )


def oracle_document(verdict: OracleVerdict, agrees: bool) -> OracleDocument:
    return OracleDocument(
        verdict=_verdict(verdict.verdict),
        method=verdict.method,
        samples=verdict.samples,
        seed=verdict.seed,
        pure_verdict=_verdict(verdict.pure_verdict),
        mixed_contradictions=verdict.mixed_contradictions,
        agrees=agrees,
    )


def index_document(
    game: Game,
    index: int,
    chain: Sequence[RobustnessCertificate],
    expected: Optional[int] = None,
    oracle_index: Optional[int] = None,
) -> IndexDocument:
    return IndexDocument(
        n_players=game.n_players,
        nash=index >= 0,
        defection_index=index,
        defection_index_d=max(index, -1) + 1,
        chain=[certificate_document(game, c) for c in chain],
        oracle_index=oracle_index,
        expected_index=expected,
        discrepancy=None if expected is None else index != expected,
    )


def search_document(
    game: Game,
    report: SearchReport,
    dynamics: Optional[SearchReport] = None,
    selection_rule: str = "uniform",
) -> SearchDocument:
    profiles = [
        PureCandidateDocument(
            assignment=candidate.assignment.as_list(),
            certificate=certificate_document(game, certificate),
        )
        for candidate, certificate in report.robust_profiles
        if isinstance(candidate, PureProfileCandidate)
    ]
    dynamics_doc = None
    if dynamics is not None:
        certificate = dynamics.robust_profiles[0][1] if dynamics.robust_profiles else None
        dynamics_doc = DynamicsDocument(
            outcome=dynamics.outcome,
            iterations=dynamics.iterations,
            selection_rule=selection_rule,
            final_strategy=strategy_values(dynamics.final_strategy) if dynamics.final_strategy else None,
            certificate=certificate_document(game, certificate) if certificate else None,
        )
    return SearchDocument(
        alpha=report.alpha,
        status="exhaustive",
        candidates_examined=report.candidates_examined,
        found=report.found or bool(dynamics and dynamics.found),
        robust_profiles=profiles,
        dynamics=dynamics_doc,
    )


def sufficiency_document(
    game: Game,
    alpha: int,
    robust_set: RobustActionSet,
    sensitivity: SensitivityReport,
    direction: DirectionReport,
) -> SufficiencyDocument:
    certified = sensitivity.holds or direction.invariant
    consistent = True
    if sensitivity.holds and sensitivity.anchor not in robust_set.actions:
        consistent = False
    if direction.invariant:
        first = robust_set.per_config_argmax[0][1].actions
        consistent = consistent and first == robust_set.actions
    return SufficiencyDocument(
        alpha=alpha,
        robust_actions=game.labels_of(robust_set.actions),
        certified=certified,
        consistent=consistent,
        sensitivity=SensitivityDocument(
            base_config=sensitivity.base_config.as_list(),
            c=_values(sensitivity.c),
            delta_c=_values(sensitivity.delta_c),
            delta_c_up=_values(sensitivity.delta_c_up),
            y=format_rational(sensitivity.y),
            bound=_values(sensitivity.bound),
            holds=sensitivity.holds,
            holds_literal=sensitivity.holds_literal,
            anchor=game.label(sensitivity.anchor) if sensitivity.anchor is not None else None,
            convention=sensitivity.convention,
        ),
        direction=DirectionDocument(
            invariant=direction.invariant,
            tolerance=format_rational(direction.tolerance),
            norm=direction.norm,
            differing_config=_config(direction.differing_config),
            vectors=[
                ConfigVector(config=config.as_list(), payoffs=_values(vector))
                for config, vector in direction.vectors
            ],
        ),
    )


def _config(config: Optional[FrequencyVector]) -> Optional[List[int]]:
    return config.as_list() if config is not None else None


def game_document(game: Game, as_table: bool = False) -> GameFile:
    return GameFile.model_validate(dump_game(game, as_table=as_table))


def scan_columns(game: Game) -> List[str]:
    return [f"p_{label}" for label in game.actions.labels] + ["t_size", "members"]


def scan_rows(game: Game, report: ScanReport) -> List[Dict[str, str]]:
    rows: List[Dict[str, str]] = []
    for point in report.points:
        row = {f"p_{label}": format_rational(p) for label, p in zip(game.actions.labels, point.strategy.probs)}
        row["t_size"] = str(len(point.actions))
        row["members"] = "|".join(game.labels_of(point.actions))
        rows.append(row)
    return rows


def render_csv(game: Game, report: ScanReport) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=scan_columns(game), lineterminator="\n")
    writer.writeheader()
    writer.writerows(scan_rows(game, report))
    return buffer.getvalue()


def render_json(
    document: BaseModel,
    canonical: bool = True,
    audit_log: Optional[List[Dict[str, Any]]] = None,
) -> str:
    payload = document.model_dump(mode="json", exclude_none=True)
    if not canonical:
        payload["generated_at"] = _utc_now()
        payload["audit_log"] = list(audit_log or [])
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
