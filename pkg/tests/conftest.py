import functools
import json
from pathlib import Path

from collisioncode import build_codebook

DATA_DIR = Path(__file__).parent / "data"


@functools.lru_cache(maxsize=None)
def cached_codebook(n_stations: int):
    """Codebooks are immutable, so tests share one instance per size."""
    return build_codebook(n_stations)


def load_golden(name: str) -> dict:
    return json.loads((DATA_DIR / name).read_text())
