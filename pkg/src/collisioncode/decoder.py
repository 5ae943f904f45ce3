"""Inverting a demodulated superposition back to the transmitting stations.

Every non-empty station subset demodulates to a distinct bitstream and no
subset demodulates to all-zero, so the all-zero vector unambiguously means
silence and everything else either has exactly one preimage or none. For
moderate station counts the full inverse map is materialized once per
codebook; beyond the table limit decoding falls back to an exhaustive
subset scan, which stays exact but is slower.
"""

from dataclasses import dataclass

import numpy as np

from ._subsets import POPCOUNT8, demod_blocks, mask_to_ids
from .codebook import Codebook, SizeLimitError

TABLE_LIMIT = 20

IDENTIFIED = "identified"
SILENCE = "silence"
NOMATCH = "nomatch"


class CollisionError(RuntimeError):
    """Two subsets produced the same demodulated vector.

    This contradicts the uniqueness guarantee of the code construction and
    therefore indicates an implementation bug, never a valid input.
    """


@dataclass(frozen=True)
class DecodeOutcome:
    """Result of inverting a received bitstream.

    kind is one of "identified", "silence", "nomatch". stations is set
    only for identified outcomes. distance is the Hamming distance of the
    matched vector (0 for exact matches) and is reported for nearest-match
    results even when they fail."""
    kind: str
    stations: frozenset[int] | None = None
    distance: int | None = None


@dataclass
class InverseTable:
    """Demodulated vector -> station subset, for every non-empty subset."""
    n_stations: int
    v_length: int
    entries: dict[bytes, frozenset[int]]

    def lookup(self, bits: np.ndarray) -> frozenset[int] | None:
        return self.entries.get(np.packbits(np.asarray(bits, np.uint8)).tobytes())


def build_inverse_table(cb: Codebook, limit: int = TABLE_LIMIT) -> InverseTable:
    """Materialize the inverse map over all 2^n - 1 non-empty subsets."""
    if cb.n_stations > limit:
        raise SizeLimitError(
            f"n_stations={cb.n_stations} exceeds the inverse-table limit "
            f"of {limit}")
    entries: dict[bytes, frozenset[int]] = {}
    for masks, packed in demod_blocks(cb.matrix(), cb.n_stations):
        for mask, row in zip(masks.tolist(), packed):
            if not mask:
                continue
            key = row.tobytes()
            prev = entries.get(key)
            if prev is not None:
                raise CollisionError(
                    f"subsets {sorted(prev)} and {mask_to_ids(mask)} share a "
                    f"demodulated vector; the codebook or decoder is broken")
            entries[key] = frozenset(mask_to_ids(mask))
    return InverseTable(cb.n_stations, cb.v_length, entries)


def _check_bits(cb: Codebook, received) -> np.ndarray:
    arr = np.asarray(received)
    if arr.ndim != 1 or arr.size != cb.v_length:
        raise ValueError(
            f"received vector has length {arr.size}, expected {cb.v_length}")
    if ((arr != 0) & (arr != 1)).any():
        raise ValueError("received vector entries must be 0 or 1")
    return arr.astype(np.uint8, copy=False)


def _cached_table(cb: Codebook) -> InverseTable | None:
    if cb.n_stations > TABLE_LIMIT:
        return None
    table = getattr(cb, "_inverse_table", None)
    if table is None:
        table = build_inverse_table(cb)
        cb._inverse_table = table
    return table


def _scan_for_key(cb: Codebook, key: bytes) -> int:
    """Exhaustive fallback: mask of the subset demodulating to key, or 0."""
    target = np.frombuffer(key, np.uint8)
    for masks, packed in demod_blocks(cb.matrix(), cb.n_stations):
        hits = np.flatnonzero((packed == target).all(axis=1))
        for h in hits:
            if masks[h]:
                return int(masks[h])
    return 0


def decode_exact(cb: Codebook, received, table: InverseTable | None = None) -> DecodeOutcome:
    """Unique preimage of a received bitstream, silence, or no match."""
    bits = _check_bits(cb, received)
    if not bits.any():
        return DecodeOutcome(SILENCE, None, 0)
    key = np.packbits(bits).tobytes()
    if table is None:
        table = _cached_table(cb)
    if table is not None:
        hit = table.entries.get(key)
        if hit is None:
            return DecodeOutcome(NOMATCH)
        return DecodeOutcome(IDENTIFIED, hit, 0)
    mask = _scan_for_key(cb, key)
    if not mask:
        return DecodeOutcome(NOMATCH)
    return DecodeOutcome(IDENTIFIED, frozenset(mask_to_ids(mask)), 0)


def decode_nearest(cb: Codebook, received, max_dist: int,
                   table: InverseTable | None = None) -> DecodeOutcome:
    """Nearest reachable vector by Hamming distance, if unique and close.

    Returns the unique subset at minimum distance when that minimum is at
    most max_dist; a tie for the minimum, or a minimum beyond max_dist, is
    a no-match (a detected failure beats a guessed ACK set). An all-zero
    input is silence regardless of max_dist. Near-zero nonzero inputs are
    matched against subset vectors only, since silence is defined by the
    exact all-zero vector.
    """
    if max_dist < 0:
        raise ValueError("max_dist must be >= 0")
    bits = _check_bits(cb, received)
    if not bits.any():
        return DecodeOutcome(SILENCE, None, 0)
    target = np.frombuffer(np.packbits(bits).tobytes(), np.uint8)
    sentinel = cb.v_length + 1
    best = sentinel
    best_mask = 0
    ties = 0
    for masks, packed in demod_blocks(cb.matrix(), cb.n_stations):
        dists = POPCOUNT8[packed ^ target].sum(axis=1, dtype=np.int64)
        zero_pos = np.flatnonzero(masks == 0)
        if zero_pos.size:
            dists[zero_pos] = sentinel
        block_min = int(dists.min())
        if block_min < best:
            hits = np.flatnonzero(dists == block_min)
            best, best_mask, ties = block_min, int(masks[hits[0]]), len(hits)
        elif block_min == best:
            ties += int((dists == block_min).sum())
    if best > max_dist or ties > 1:
        return DecodeOutcome(NOMATCH, None, best if best < sentinel else None)
    return DecodeOutcome(IDENTIFIED, frozenset(mask_to_ids(best_mask)), best)


def contains_station(cb: Codebook, received, station: int,
                     table: InverseTable | None = None) -> str:
    """Membership of one station in a received vector's preimage.

    Returns "present", "absent" (including silence), or "undecodable" when
    the vector has no preimage."""
    if not 1 <= station <= cb.n_stations:
        raise ValueError(
            f"station {station} out of range 1..{cb.n_stations}")
    outcome = decode_exact(cb, received, table)
    if outcome.kind == IDENTIFIED:
        return "present" if station in outcome.stations else "absent"
    if outcome.kind == SILENCE:
        return "absent"
    return "undecodable"
