from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from src.core import COMMANDS, CommandRequest, Settings, build_request, load_settings
from src.core.workflow import PipelineRunner
from src.errors import RobustEqError

logger = logging.getLogger("robusteq")

EXIT_CODES = {"ok": 0, "negative": 1, "error": 2}


@dataclass
class CommandResult:
    exit_code: int
    output: str = ""
    outcome: str = "ok"
    logs: List[Dict[str, Any]] = field(default_factory=list)


def _common(parser: argparse.ArgumentParser, game: bool = True) -> None:
    if game:
        parser.add_argument("--game", help="game file (JSON)")
    parser.add_argument("--mode", choices=["exact", "numeric"], default="exact")
    parser.add_argument("--out", help="write the document here instead of stdout")
    parser.add_argument("--canonical", action="store_true", help="byte-stable output without timestamps")
    parser.add_argument("--verbose", "-v", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robusteq",
        description="Exact alpha-robust equilibria for anonymous games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a builtin game")
    _common(gen, game=False)
    gen.add_argument("--builtin", choices=["matching", "independent", "random"], required=True)
    gen.add_argument("--players", type=int, required=True)
    gen.add_argument("--actions", type=int)
    gen.add_argument("--labels", help="comma-separated action labels")
    gen.add_argument("--values", help="comma-separated per-action values (independent)")
    gen.add_argument("--tie", choices=["inclusive", "strict"], default="inclusive")
    gen.add_argument("--seed", type=int)
    gen.add_argument("--denominator", type=int, default=12)
    gen.add_argument("--table", action="store_true", help="write builtin games as full tables")

    verify = sub.add_parser("verify", help="certify a profile at a given alpha")
    _common(verify)
    verify.add_argument("--profile", help="pure:<label>, mixed:p1,...,pm or a profile file")
    verify.add_argument("--alpha", type=int)
    verify.add_argument("--oracle", action="store_true", help="cross-check against the brute-force oracle")
    verify.add_argument("--samples", type=int, help="mixed defector samples for the oracle")
    verify.add_argument("--seed", type=int)

    index = sub.add_parser("index", help="defection index with its certificate chain")
    _common(index)
    index.add_argument("--profile")
    index.add_argument("--oracle", action="store_true")
    index.add_argument("--expect", type=int, help="flag a discrepancy against this index")

    solve = sub.add_parser("solve", help="search for alpha-robust equilibria")
    _common(solve)
    solve.add_argument("--alpha", type=int)
    solve.add_argument("--init", help="initial symmetric strategy for best-response dynamics")
    solve.add_argument("--damping")
    solve.add_argument("--max-iters", dest="max_iters", type=int)
    solve.add_argument("--selection", choices=["uniform", "lowest-index"])

    scan = sub.add_parser("scan", help="robust-action set over a simplex grid (CSV)")
    _common(scan)
    scan.add_argument("--alpha", type=int)
    scan.add_argument("--grid", type=int)

    check = sub.add_parser("check", help="sufficient conditions for a non-empty robust-action set")
    _common(check)
    check.add_argument("--profile", help="strategies of the normal players other than the checked one")
    check.add_argument("--alpha", type=int)
    check.add_argument("--base-config", dest="base_config", help="comma-separated defector counts")
    check.add_argument("--tolerance", help="direction tolerance (0 means exact)")

    return parser


def _split(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    return [part.strip() for part in text.split(",")]


def request_from_args(args: argparse.Namespace) -> CommandRequest:
    fields: Dict[str, Any] = {
        key: value
        for key, value in vars(args).items()
        if key not in {"verbose", "labels", "values", "base_config"} and value is not None
    }
    if getattr(args, "labels", None):
        fields["labels"] = _split(args.labels)
    if getattr(args, "values", None):
        fields["values"] = _split(args.values)
    if getattr(args, "base_config", None):
        try:
            fields["base_config"] = [int(part) for part in _split(args.base_config) or []]
        except ValueError:
            fields["base_config"] = _split(args.base_config)
    return build_request(**fields)


def configure_logging(verbose: bool = False) -> None:
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[handler],
        force=True,
    )


def run(request: CommandRequest, settings: Optional[Settings] = None) -> CommandResult:
    settings = settings or load_settings()
    state = PipelineRunner(settings).run(request)
    outcome = state.get("outcome", "ok")
    return CommandResult(
        exit_code=EXIT_CODES.get(outcome, 2),
        output=state.get("rendered", ""),
        outcome=outcome,
        logs=list(state.get("logs", [])),
    )


def main(argv: Optional[Sequence[str]] = None, settings: Optional[Settings] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    err = Console(stderr=True, highlight=False, soft_wrap=True)
    try:
        request = request_from_args(args)
        result = run(request, settings)
    except RobustEqError as exc:
        err.print(f"[bold red]error[/bold red] ({type(exc).__name__}): {escape(str(exc))}")
        return exc.exit_code
    if request.out is None:
        sys.stdout.write(result.output)
        sys.stdout.flush()
    if result.exit_code == 2:
        err.print("[bold red]error[/bold red]: oracle and main path disagree")
    logger.info("%s finished: %s", request.command, result.outcome)
    return result.exit_code


__all__ = ["COMMANDS", "CommandResult", "build_parser", "main", "request_from_args", "run"]
