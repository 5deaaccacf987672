from __future__ import annotations

import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Union

from src.checks import direction_invariance_check, lemma2_check
from src.core.config import Settings, SolverSettings
from src.core.request import CommandRequest
from src.core.state import LogEntry, RunState
from src.errors import InvalidGameError, InvalidStrategyError, MalformedInputError
from src.game import (
    FrequencyVector,
    Game,
    Profile,
    load_game,
    make_independent_game,
    make_matching_game,
    make_random_game,
    parse_profile_spec,
    parse_rational,
    validate_game,
)
from src.oracle import oracle_defection_index, oracle_is_robust
from src.reports import (
    certificate_document,
    game_document,
    index_document,
    oracle_document,
    render_csv,
    render_json,
    search_document,
    sufficiency_document,
)
from src.robust import defection_index_chain, is_alpha_robust, robust_action_set
from src.search import br_dynamics, find_pure_robust, t_nonempty_scan

logger = logging.getLogger(__name__)


@dataclass
class NodeDeps:
    settings: Settings
    solver: SolverSettings
    limit: int


def _append_log(
    logs_or_state: Union[RunState, List[LogEntry]],
    stage: str,
    action: str,
    detail: Dict[str, Any],
) -> List[LogEntry]:
    if isinstance(logs_or_state, dict):
        logs = list(logs_or_state.get("logs", []))
    else:
        logs = list(logs_or_state)
    logs.append({"stage": stage, "action": action, "detail": detail})
    return logs


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _request(state: RunState) -> CommandRequest:
    return CommandRequest.model_validate(state.get("request", {}))


def _shape(game: Game) -> Dict[str, Any]:
    return {"n_players": game.n_players, "actions": list(game.actions.labels), "numeric": game.numeric}


def _verify_profile(game: Game, profile: Profile, alpha: int) -> Profile:
    # asymmetric profiles may list all N players; the last alpha defect
    if not profile.symmetric and profile.size == game.n_players:
        return profile.restrict(game.n_players - alpha)
    return profile


def _normal_profile(game: Game, profile: Profile, alpha: int) -> Profile:
    target = game.n_players - alpha - 1
    if not profile.symmetric and (profile.size or 0) > target:
        return profile.restrict(target)
    return profile


class SolverNodes:
    def __init__(self, deps: NodeDeps) -> None:
        self.deps = deps

    def generate(self, state: RunState) -> RunState:
        req = _request(state)
        limit = self.deps.limit
        if req.builtin == "matching":
            game = make_matching_game(
                req.players,
                req.actions,
                tie_rule=req.tie,
                labels=req.labels,
                numeric=req.numeric,
                limit=limit,
                epsilon=self.deps.solver.epsilon,
            )
        elif req.builtin == "independent":
            game = make_independent_game(
                req.players,
                req.values or [],
                labels=req.labels,
                numeric=req.numeric,
                limit=limit,
                epsilon=self.deps.solver.epsilon,
            )
        else:
            seed = self.deps.solver.seed if req.seed is None else req.seed
            game = make_random_game(
                req.players, req.actions, seed, denominator=req.denominator, labels=req.labels, limit=limit
            )
        logs = _append_log(state, "GENERATE", "builtin", {"builtin": req.builtin, **_shape(game)})
        return {"game": game, "status": "GENERATED", "logs": logs}

    def load_game(self, state: RunState) -> RunState:
        req = _request(state)
        try:
            game = load_game(
                req.game, numeric=req.numeric, limit=self.deps.limit, epsilon=self.deps.solver.epsilon
            )
        except InvalidGameError as exc:
            logs = _append_log(state, "LOAD_GAME", "rejected", {"path": req.game})
            return {
                "validation": {"valid": False, "violations": list(exc.violations)},
                "status": "INVALID",
                "logs": logs,
            }
        logs = _append_log(state, "LOAD_GAME", "parsed", {"path": req.game, **_shape(game)})
        return {"game": game, "status": "LOADED", "logs": logs}

    def validate_game(self, state: RunState) -> RunState:
        game = state.get("game")
        if game is None:
            validation = state.get("validation") or {"valid": False, "violations": ["no game loaded"]}
            return {"validation": validation, "status": "INVALID"}
        report = validate_game(game, self.deps.limit)
        logs = _append_log(
            state,
            "VALIDATE_GAME",
            "validate",
            {"valid": report.valid, "violations": len(report.violations), "table_size": report.table_size},
        )
        return {
            "validation": report.as_dict(),
            "status": "VALIDATED" if report.valid else "INVALID",
            "logs": logs,
        }

    def load_profile(self, state: RunState) -> RunState:
        req = _request(state)
        game = state["game"]
        profile = parse_profile_spec(req.profile, game, self.deps.solver.simplex_tolerance)
        detail = {"spec": req.profile, "symmetric": profile.symmetric, "size": profile.size}
        logs = _append_log(state, "LOAD_PROFILE", "parsed", detail)
        return {"profile": profile, "logs": logs}

    def certify(self, state: RunState) -> RunState:
        req = _request(state)
        game = state["game"]
        profile = _verify_profile(game, state["profile"], req.alpha)
        certificate = is_alpha_robust(game, profile, req.alpha, self.deps.limit)
        logs = _append_log(
            state,
            "CERTIFY",
            "is_alpha_robust",
            {"alpha": req.alpha, "verdict": certificate.verdict},
        )
        return {
            "profile": profile,
            "result": {"certificate": certificate},
            "outcome": "ok" if certificate.robust else "negative",
            "status": "CERTIFIED",
            "logs": logs,
        }

    def oracle_crosscheck(self, state: RunState) -> RunState:
        req = _request(state)
        game = state["game"]
        solver = self.deps.solver
        samples = solver.oracle_samples if req.samples is None else req.samples
        seed = solver.seed if req.seed is None else req.seed
        certificate = state["result"]["certificate"]
        verdict = oracle_is_robust(
            game,
            state["profile"],
            req.alpha,
            mixed_samples=samples,
            seed=seed,
            limit=solver.oracle_max_profiles,
            sample_denominator=solver.sample_denominator,
        )
        agrees = verdict.verdict == certificate.robust
        logs = _append_log(
            state,
            "ORACLE_CROSSCHECK",
            "oracle_is_robust",
            {"method": verdict.method, "samples": samples, "seed": seed, "agrees": agrees},
        )
        if not agrees:
            logger.error("oracle disagrees: main path %s, oracle %s", certificate.verdict, verdict.verdict)
        return {
            "oracle": {"verdict": verdict, "agrees": agrees},
            "outcome": state.get("outcome", "ok") if agrees else "error",
            "logs": logs,
        }

    def index(self, state: RunState) -> RunState:
        req = _request(state)
        game = state["game"]
        index, chain = defection_index_chain(game, state["profile"], self.deps.limit)
        oracle: Dict[str, Any] = {}
        outcome = "ok" if index >= 0 else "negative"
        if req.oracle:
            oracle_index = oracle_defection_index(game, state["profile"], self.deps.solver.oracle_max_profiles)
            oracle = {"index": oracle_index, "agrees": oracle_index == index}
            if oracle_index != index:
                logger.error("oracle index %d differs from %d", oracle_index, index)
                outcome = "error"
        if req.expect is not None and req.expect != index:
            logger.warning("defection index %d differs from the expected %d", index, req.expect)
        logs = _append_log(state, "INDEX", "defection_index", {"index": index, "chain": len(chain)})
        return {
            "result": {"index": index, "chain": chain},
            "oracle": oracle,
            "outcome": outcome,
            "status": "INDEXED",
            "logs": logs,
        }

    def pure_search(self, state: RunState) -> RunState:
        req = _request(state)
        report = find_pure_robust(state["game"], req.alpha, self.deps.limit)
        logs = _append_log(
            state,
            "PURE_SEARCH",
            "find_pure_robust",
            {"examined": report.candidates_examined, "robust": len(report.robust_profiles)},
        )
        return {
            "result": {"search": report},
            "outcome": "ok" if report.found else "negative",
            "status": "SEARCHED",
            "logs": logs,
        }

    def br_dynamics(self, state: RunState) -> RunState:
        req = _request(state)
        game = state["game"]
        solver = self.deps.solver
        start = parse_profile_spec(req.init, game, solver.simplex_tolerance)
        if not start.symmetric:
            raise InvalidStrategyError("--init must describe a symmetric strategy")
        damping = solver.damping if req.damping is None else parse_rational(req.damping, where="--damping")
        selection = req.selection or solver.selection_rule
        report = br_dynamics(
            game,
            req.alpha,
            start.strategies[0],
            max_iters=req.max_iters or solver.max_iters,
            damping=damping,
            selection_rule=selection,
            convergence_tolerance=solver.convergence_tolerance,
            limit=self.deps.limit,
        )
        result = dict(state.get("result", {}))
        result["dynamics"] = report
        result["selection_rule"] = selection
        found = report.found or result["search"].found
        logs = _append_log(
            state,
            "BR_DYNAMICS",
            "br_dynamics",
            {"outcome": report.outcome, "iterations": report.iterations, "selection": selection},
        )
        return {"result": result, "outcome": "ok" if found else "negative", "logs": logs}

    def grid_scan(self, state: RunState) -> RunState:
        req = _request(state)
        resolution = req.grid or self.deps.solver.grid_resolution
        report = t_nonempty_scan(state["game"], req.alpha, resolution, self.deps.limit)
        logs = _append_log(
            state,
            "GRID_SCAN",
            "t_nonempty_scan",
            {"resolution": resolution, "points": len(report.points), "non_empty": report.non_empty},
        )
        return {"result": {"scan": report}, "outcome": "ok", "status": "SCANNED", "logs": logs}

    def sufficiency(self, state: RunState) -> RunState:
        req = _request(state)
        game = state["game"]
        alpha = req.alpha
        normals = _normal_profile(game, state["profile"], alpha)
        if req.base_config is None:
            base = FrequencyVector.unit(game.m, 0, alpha)
        else:
            base = FrequencyVector(tuple(req.base_config))
        tolerance = parse_rational(req.tolerance, where="--tolerance") if req.tolerance else None
        robust_set = robust_action_set(game, normals, alpha, self.deps.limit)
        sensitivity = lemma2_check(game, normals, alpha, base, self.deps.limit)
        direction = direction_invariance_check(game, normals, alpha, tolerance, self.deps.limit)
        certified = sensitivity.holds or direction.invariant
        logs = _append_log(
            state,
            "SUFFICIENCY",
            "checks",
            {"sensitivity": sensitivity.holds, "direction": direction.invariant, "t_size": len(robust_set.actions)},
        )
        return {
            "result": {"robust_set": robust_set, "sensitivity": sensitivity, "direction": direction},
            "outcome": "ok" if certified else "negative",
            "status": "CHECKED",
            "logs": logs,
        }

    def emit(self, state: RunState) -> RunState:
        req = _request(state)
        validation = state.get("validation", {})
        if validation and not validation.get("valid", True):
            raise InvalidGameError(validation.get("violations", []))

        game = state["game"]
        result = state.get("result", {})
        rendered: str
        if req.command == "scan":
            rendered = render_csv(game, result["scan"])
        else:
            document = self._document(req, state, game, result)
            detail = {"run_id": state.get("run_id"), "canonical": req.canonical, "at": _utc_now()}
            logs = _append_log(state, "EMIT", "render", detail)
            rendered = render_json(document, canonical=req.canonical, audit_log=logs)

        if req.out:
            try:
                Path(req.out).write_text(rendered, encoding="utf-8")
            except OSError as exc:
                raise MalformedInputError(f"cannot write output ({exc.strerror})", req.out) from exc

        logs = _append_log(state, "EMIT", "emitted", {"target": req.out or "<stdout>"})
        return {
            "rendered": rendered,
            "outcome": state.get("outcome", "ok"),
            "status": "COMPLETED",
            "logs": logs,
        }

    def _document(self, req: CommandRequest, state: RunState, game: Game, result: Dict[str, Any]):
        if req.command == "gen":
            return game_document(game, as_table=req.table)
        if req.command == "verify":
            document = certificate_document(game, result["certificate"])
            oracle = state.get("oracle")
            if oracle:
                document.oracle = oracle_document(oracle["verdict"], oracle["agrees"])
            return document
        if req.command == "index":
            oracle = state.get("oracle") or {}
            return index_document(
                game, result["index"], result["chain"], expected=req.expect, oracle_index=oracle.get("index")
            )
        if req.command == "solve":
            return search_document(
                game,
                result["search"],
                dynamics=result.get("dynamics"),
                selection_rule=result.get("selection_rule", self.deps.solver.selection_rule),
            )
        return sufficiency_document(
            game, req.alpha, result["robust_set"], result["sensitivity"], result["direction"]
        )
