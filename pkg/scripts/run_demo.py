from __future__ import annotations

from pathlib import Path
import sys
import time

from rich import print
from rich.table import Table

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.core.config import load_settings
from src.game import MixedStrategy, Profile, make_matching_game
from src.robust import defection_index_chain


def main() -> None:
    settings = load_settings()
    limit = settings.solver.max_compositions
    sizes = [int(arg) for arg in sys.argv[1:]] or [3, 5, 7, 9]

    table = Table(title="Matching game, m=3, inclusive ties")
    table.add_column("N", justify="right")
    table.add_column("profile")
    table.add_column("defection index", justify="right")
    table.add_column("(N-1)/2", justify="right")
    table.add_column("first failure")
    table.add_column("seconds", justify="right")

    for n in sizes:
        game = make_matching_game(n, 3, limit=limit)
        profiles = [(f"pure:{game.label(a)}", MixedStrategy.pure(3, a)) for a in range(3)]
        profiles.append(("uniform", MixedStrategy.uniform(3)))
        for name, strategy in profiles:
            started = time.perf_counter()
            index, chain = defection_index_chain(game, Profile.symmetric_of(strategy), limit)
            elapsed = time.perf_counter() - started
            witness = chain[-1].witness
            failure = "-"
            if witness is not None:
                failure = f"g={witness.config} -> {game.label(witness.deviation)}"
            table.add_row(str(n), name, str(index), str((n - 1) // 2), failure, f"{elapsed:.3f}")

    print(table)


if __name__ == "__main__":
    main()
