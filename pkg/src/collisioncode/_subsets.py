"""Blocked enumeration of subset chip counts over codebook rows.

Enumerating every subset of m rows naively costs 2^m row sums of length V.
The generators here split the rows into a low block, whose 2^n_lo partial
sums are precomputed once, and a high block walked in Gray-code order so
that one row is added or removed per step. Each block of 2^n_lo subsets
then costs a single vectorized add.

Subset masks use bit i for row i+1. Yielded count buffers are reused
between iterations; copy them if they must outlive the loop body.
"""

import numpy as np

POPCOUNT8 = np.array([i.bit_count() for i in range(256)], dtype=np.uint8)

DEFAULT_LO_BITS = 8
_LO_TABLE_BYTES = 1 << 26


def split_rows(m: int, v: int, lo_bits: int = DEFAULT_LO_BITS) -> int:
    """Width of the precomputed low block for an m-row, V-column run."""
    n_lo = min(m, lo_bits)
    while n_lo > 1 and (1 << n_lo) * v > _LO_TABLE_BYTES:
        n_lo -= 1
    return n_lo


def mask_to_ids(mask: int) -> tuple[int, ...]:
    """1-based row ids of the set bits of a subset mask."""
    ids = []
    i = 1
    while mask:
        if mask & 1:
            ids.append(i)
        mask >>= 1
        i += 1
    return tuple(ids)


def ids_to_mask(ids) -> int:
    mask = 0
    for i in ids:
        mask |= 1 << (i - 1)
    return mask


def count_blocks(matrix: np.ndarray, m: int, n_lo: int | None = None,
                 hi_range: tuple[int, int] | None = None):
    """Yield (masks, counts, sizes) covering every subset of the first m rows.

    counts[i, c] is the number of one-bits at column c over the rows in
    subset masks[i]; sizes[i] is the subset cardinality. The empty mask 0
    is included (callers usually skip it). hi_range restricts the walk to
    a sub-range of high-block Gray indices, which is how parallel workers
    partition the subset space.
    """
    v = matrix.shape[1]
    if n_lo is None:
        n_lo = split_rows(m, v)
    n_hi = m - n_lo
    rows = matrix[:m].astype(np.int8)  # counts stay below 127 for any supported size
    size_lo = 1 << n_lo
    lo_counts = np.zeros((size_lo, v), np.int8)
    for mask in range(1, size_lo):
        low = mask & -mask
        lo_counts[mask] = lo_counts[mask ^ low] + rows[low.bit_length() - 1]
    lo_pop = np.array([mask.bit_count() for mask in range(size_lo)], np.int8)
    lo_idx = np.arange(size_lo, dtype=np.int64)

    start, stop = hi_range if hi_range is not None else (0, 1 << n_hi)
    gray = start ^ (start >> 1)
    cur = rows[[n_lo + b for b in range(n_hi) if gray >> b & 1]].sum(
        axis=0, dtype=np.int8)
    counts = np.empty_like(lo_counts)
    for j in range(start, stop):
        if j != start:
            prev, gray = gray, j ^ (j >> 1)
            b = (prev ^ gray).bit_length() - 1
            if gray >> b & 1:
                cur += rows[n_lo + b]
            else:
                cur -= rows[n_lo + b]
        np.add(lo_counts, cur[None, :], out=counts)
        sizes = lo_pop + np.int8(gray.bit_count())
        yield (gray << n_lo) | lo_idx, counts, sizes


def demod_blocks(matrix: np.ndarray, m: int, n_lo: int | None = None,
                 hi_range: tuple[int, int] | None = None):
    """Yield (masks, packed) where packed[i] is the majority-demodulated
    superposition of subset masks[i], packed 8 chips per byte, MSB first.

    A chip demodulates to 1 exactly when the subset holds strictly more
    ones than zeros at that column, i.e. count >= floor(size/2) + 1.
    """
    for masks, counts, sizes in count_blocks(matrix, m, n_lo, hi_range):
        bits = counts >= (sizes // 2 + 1)[:, None]
        yield masks, np.packbits(bits, axis=1)
