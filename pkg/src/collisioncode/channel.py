"""Synchronized BPSK superposition channel.

Bits map to antipodal amplitudes (0 -> -1, 1 -> +1). When several stations
transmit the same chip slot simultaneously, the receiver sees the integer
sum of their amplitudes; the demodulator outputs 1 for a positive sum and
0 otherwise, so each chip follows the majority of the transmitted bits and
ties fall to 0. The ideal-channel path is exact integer arithmetic; the
optional additive-Gaussian extension thresholds at 0.5, halfway between
the tie level 0 and the smallest positive sum 1.

All randomness is derived from an explicit seed through a NumPy PCG64
generator, so noisy profiles are reproducible.
"""

from dataclasses import dataclass

import numpy as np

from .codebook import Codebook


@dataclass(frozen=True)
class AmplitudeProfile:
    """Exact per-chip amplitude sums of a transmitting subset.

    Every entry has absolute value at most the subset size and the same
    parity as the subset size.
    """
    sums: np.ndarray  # (V,) signed integers


@dataclass(frozen=True)
class NoisyProfile:
    """Amplitude sums plus per-chip Gaussian noise from a seeded generator."""
    samples: np.ndarray  # (V,) float64
    sigma: float
    seed: int


def modulate(bit: int) -> int:
    """BPSK amplitude of a bit: 2*bit - 1."""
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    return 2 * bit - 1


def _station_indices(cb: Codebook, stations) -> list[int]:
    ids = sorted({int(s) for s in stations})
    if ids and not (1 <= ids[0] and ids[-1] <= cb.n_stations):
        raise ValueError(
            f"station ids must lie in 1..{cb.n_stations}, got {ids}")
    return [i - 1 for i in ids]


def superpose(cb: Codebook, stations) -> AmplitudeProfile:
    """Columnwise amplitude sums of the given stations' codewords.

    The empty subset (silence) yields the all-zero profile.
    """
    idx = _station_indices(cb, stations)
    if not idx:
        sums = np.zeros(cb.v_length, np.int16)
    else:
        ones = cb.matrix()[idx].sum(axis=0, dtype=np.int16)
        sums = 2 * ones - np.int16(len(idx))
    sums.flags.writeable = False
    return AmplitudeProfile(sums)


def demodulate(profile: AmplitudeProfile) -> np.ndarray:
    """Hard-decision bits: 1 where the sum is >= 1, else 0 (ties to 0)."""
    return (profile.sums >= 1).astype(np.uint8)


def majority_demod_bit(bits) -> int:
    """Demodulated bit of one chip slot given each transmitter's bit.

    Returns 1 exactly when strictly more transmitters sent 1 than 0.
    """
    seq = [int(b) for b in bits]
    if not seq:
        raise ValueError("need at least one transmitter")
    if any(b not in (0, 1) for b in seq):
        raise ValueError(f"bits must be 0 or 1, got {bits!r}")
    return 1 if 2 * sum(seq) > len(seq) else 0


def pnc_xor_map(amp_sum: int) -> int:
    """Two-transmitter demapping: |sum|=2 -> 0, sum=0 -> 1.

    Composed with modulation this realizes the XOR of the two transmitted
    bits, the classic physical-layer network coding mapping.
    """
    if amp_sum in (2, -2):
        return 0
    if amp_sum == 0:
        return 1
    raise ValueError(f"not a two-transmitter amplitude sum: {amp_sum!r}")


def superpose_noisy(cb: Codebook, stations, sigma: float, seed: int) -> NoisyProfile:
    """Amplitude sums with i.i.d. Gaussian(0, sigma) noise per chip.

    Identical (codebook, stations, sigma, seed) always produce identical
    samples; sigma=0 returns the integer sums exactly.
    """
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    base = superpose(cb, stations).sums.astype(np.float64)
    if sigma > 0:
        rng = np.random.Generator(np.random.PCG64(seed))
        base += rng.normal(0.0, sigma, base.size)
    base.flags.writeable = False
    return NoisyProfile(base, float(sigma), int(seed))


def threshold_noisy(profile: NoisyProfile) -> np.ndarray:
    """Hard-decision bits of a noisy profile: 1 where the sample exceeds 0.5."""
    return (profile.samples > 0.5).astype(np.uint8)
