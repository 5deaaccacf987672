from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np


@dataclass
class StreamKey:
    seed: int
    labels: Tuple[str, ...]
    key: int

    def as_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "labels": list(self.labels),
            "key": f"{self.key:032x}",
        }


class SeedSplitter:
    """Derives independent Philox streams from a root seed and a label path."""

    def __init__(self, seed: int) -> None:
        self.seed = int(seed)

    def key(self, *labels: Any) -> StreamKey:
        parts = tuple(str(label) for label in labels)
        selection_key = "|".join((str(self.seed),) + parts)
        digest = hashlib.sha256(selection_key.encode("utf-8")).hexdigest()
        return StreamKey(seed=self.seed, labels=parts, key=int(digest[:32], 16))

    def generator(self, *labels: Any) -> np.random.Generator:
        stream = self.key(*labels)
        return np.random.Generator(np.random.Philox(key=stream.key))
