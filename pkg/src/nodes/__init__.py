from .pipeline_nodes import NodeDeps, SolverNodes

__all__ = ["NodeDeps", "SolverNodes"]
