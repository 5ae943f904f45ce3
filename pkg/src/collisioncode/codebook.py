"""Constant-weight collision codebooks.

A codebook for n stations is a binary matrix with one codeword row per
station. The row count is forced odd (n stations use the first n rows of
an (n+1)-row matrix when n is even), and the columns enumerate every
length-`rows` pattern holding exactly (rows+1)/2 ones, each pattern
appearing once. Columns are ordered by descending numeric value of the
column pattern with row 1 as the most significant bit, which makes
construction deterministic.

Because every column carries one more 1 than 0, the majority-demodulated
superposition of any non-empty station subset is unique to that subset;
the verifier module checks this exhaustively.

File format (ASCII, LF line endings, no trailing whitespace):

    COLLISIONCODE v1 N=<stations> ROWS=<rows> R=<weight> V=<columns>
    <row 1 as V characters from {0,1}>
    ...
    <row ROWS>
"""

import math
import re
from itertools import chain, combinations

import numpy as np

MAX_STATIONS = 25

_HEADER = re.compile(r"COLLISIONCODE v1 N=(\d+) ROWS=(\d+) R=(\d+) V=(\d+)")


class SizeLimitError(ValueError):
    """Requested size exceeds the configured station or enumeration cap."""


class FormatError(ValueError):
    """Malformed codebook document (bad header, row length, or characters)."""


class InvariantError(ValueError):
    """Well-formed document whose matrix violates the codebook invariants."""


class Codebook:
    """Immutable constant-weight code matrix, one codeword row per station.

    Rows are stored packed, 8 chips per byte; `matrix()` exposes (and
    caches) the unpacked 0/1 view used by the channel and verifier.
    """

    def __init__(self, n_stations: int, packed: np.ndarray, v_length: int):
        self.n_stations = int(n_stations)
        self.n_rows = packed.shape[0]
        self.r_weight = (self.n_rows + 1) // 2
        self.v_length = int(v_length)
        packed.flags.writeable = False
        self.packed = packed
        self._matrix: np.ndarray | None = None

    def matrix(self) -> np.ndarray:
        """Unpacked (n_rows, V) uint8 matrix; read-only, cached."""
        if self._matrix is None:
            bits = np.unpackbits(self.packed, axis=1)[:, :self.v_length]
            bits.flags.writeable = False
            self._matrix = bits
        return self._matrix

    def row(self, station: int) -> np.ndarray:
        """Codeword of a station, as a read-only length-V 0/1 vector."""
        if not 1 <= station <= self.n_stations:
            raise ValueError(
                f"station {station} out of range 1..{self.n_stations}")
        return self.matrix()[station - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Codebook):
            return NotImplemented
        return (self.n_stations == other.n_stations
                and self.n_rows == other.n_rows
                and self.v_length == other.v_length
                and np.array_equal(self.packed, other.packed))

    def __repr__(self) -> str:
        return (f"Codebook(n_stations={self.n_stations}, "
                f"n_rows={self.n_rows}, r_weight={self.r_weight}, "
                f"v_length={self.v_length})")


def build_codebook(n_stations: int, max_stations: int = MAX_STATIONS) -> Codebook:
    """Construct the codebook for n_stations.

    Even station counts get an extra padding row so the row count stays
    odd; that row keeps the column weights balanced but is never assigned
    to a station. Construction is deterministic: identical inputs yield
    bit-identical codebooks.
    """
    if n_stations < 1:
        raise ValueError("n_stations must be >= 1")
    if n_stations > max_stations:
        raise SizeLimitError(
            f"n_stations={n_stations} exceeds the cap of {max_stations} "
            f"(codeword length grows as C(rows, (rows+1)/2))")
    n_rows = n_stations + (n_stations % 2 == 0)
    r = (n_rows + 1) // 2
    v = math.comb(n_rows, r)
    bits = np.zeros((n_rows, v), np.uint8)
    ones = np.fromiter(chain.from_iterable(combinations(range(n_rows), r)),
                       np.int64, count=v * r)
    # combinations() in lex order == column values in descending order
    # when row 0 is the most significant bit
    bits[ones, np.repeat(np.arange(v), r)] = 1
    cb = Codebook(n_stations, np.packbits(bits, axis=1), v)
    bits.flags.writeable = False
    cb._matrix = bits
    return cb


def codeword_for(cb: Codebook, station: int) -> np.ndarray:
    """Length-V codeword the given station transmits as its ACK payload."""
    return cb.row(station)


def bits_to_str(bits: np.ndarray) -> str:
    """Render a 0/1 vector as an ASCII '0'/'1' string."""
    return (np.asarray(bits, np.uint8) + ord("0")).tobytes().decode("ascii")


def str_to_bits(s: str) -> np.ndarray:
    """Parse an ASCII '0'/'1' string into a uint8 vector."""
    try:
        arr = np.frombuffer(s.encode("ascii"), np.uint8) - ord("0")
    except UnicodeEncodeError as exc:
        raise FormatError(f"non-ASCII character in bit string: {exc}") from None
    if ((arr != 0) & (arr != 1)).any():
        bad = s[int(np.flatnonzero((arr != 0) & (arr != 1))[0])]
        raise FormatError(f"invalid bit character {bad!r}")
    return arr


def serialize_codebook(cb: Codebook) -> str:
    """Canonical text form; the same codebook always yields identical bytes."""
    lines = [f"COLLISIONCODE v1 N={cb.n_stations} ROWS={cb.n_rows} "
             f"R={cb.r_weight} V={cb.v_length}"]
    m = cb.matrix()
    lines.extend(bits_to_str(m[i]) for i in range(cb.n_rows))
    return "\n".join(lines) + "\n"


def parse_codebook(doc: str, max_stations: int = MAX_STATIONS) -> Codebook:
    """Parse and fully re-validate a codebook document.

    Rejects documents that are merely well-formed but violate the matrix
    invariants: every column must hold exactly R ones, columns must be
    pairwise distinct (hence enumerate all weight-R patterns, given the
    header's V), rows must be distinct with equal weights.
    """
    if not doc.endswith("\n"):
        raise FormatError("document must end with a newline")
    lines = doc[:-1].split("\n")
    header = _HEADER.fullmatch(lines[0])
    if header is None:
        raise FormatError(f"bad header line: {lines[0]!r}")
    n, n_rows, r, v = (int(g) for g in header.groups())
    if n < 1:
        raise InvariantError("N must be >= 1")
    if n > max_stations:
        raise SizeLimitError(f"N={n} exceeds the cap of {max_stations}")
    if n_rows % 2 == 0 or n_rows != n + (n % 2 == 0):
        raise InvariantError(
            f"ROWS={n_rows} inconsistent with N={n}: rows must be N for odd "
            f"N and N+1 for even N")
    if r != (n_rows + 1) // 2:
        raise InvariantError(f"R={r}, expected (ROWS+1)/2 = {(n_rows + 1) // 2}")
    if v != math.comb(n_rows, r):
        raise InvariantError(
            f"V={v}, expected C({n_rows},{r}) = {math.comb(n_rows, r)}")
    if len(lines) != 1 + n_rows:
        raise FormatError(f"expected {n_rows} row lines, got {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:], start=1):
        if len(line) != v:
            raise FormatError(f"row {i} has length {len(line)}, expected {v}")
        rows.append(str_to_bits(line))
    bits = np.vstack(rows)
    _validate_matrix(bits, n_rows, r, v)
    cb = Codebook(n, np.packbits(bits, axis=1), v)
    bits.flags.writeable = False
    cb._matrix = bits
    return cb


def _validate_matrix(bits: np.ndarray, n_rows: int, r: int, v: int) -> None:
    col_weights = bits.sum(axis=0)
    bad = np.flatnonzero(col_weights != r)
    if bad.size:
        raise InvariantError(
            f"column {int(bad[0]) + 1} has weight {int(col_weights[bad[0]])}, "
            f"expected {r}")
    # column value with row 1 as MSB; n_rows <= 26 so uint64 is plenty
    vals = np.zeros(v, np.uint64)
    for i in range(n_rows):
        vals <<= np.uint64(1)
        vals |= bits[i].astype(np.uint64)
    if np.unique(vals).size != v:
        order = np.argsort(vals, kind="stable")
        dup = order[np.flatnonzero(np.diff(vals[order]) == 0)[0]]
        raise InvariantError(f"duplicate column (first at index {int(dup) + 1})")
    row_keys = {bits[i].tobytes() for i in range(n_rows)}
    if len(row_keys) != n_rows:
        raise InvariantError("duplicate rows")
    expected_row_weight = math.comb(n_rows - 1, r - 1)
    row_weights = bits.sum(axis=1)
    if not (row_weights == expected_row_weight).all():
        bad_row = int(np.flatnonzero(row_weights != expected_row_weight)[0])
        raise InvariantError(
            f"row {bad_row + 1} has weight {int(row_weights[bad_row])}, "
            f"expected {expected_row_weight}")
