from .app import CommandResult, build_parser, main, request_from_args, run

__all__ = ["CommandResult", "build_parser", "main", "request_from_args", "run"]
