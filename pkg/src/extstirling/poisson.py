"""Monte Carlo check that E[(X + r lam)^n] = Bel_{n,r}(lam) for X ~ Poisson(lam).

Uniforms come from a counter-based SplitMix64 stream, so the i-th variate of a
shard depends only on (shard seed, i).  Samples are split into fixed-size
shards whose seeds derive from (seed, shard index); shard count depends on the
sample count alone, never on the number of workers.  Sums use ``math.fsum``,
which is correctly rounded and therefore independent of summation order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from extstirling.bell import bell_ext_eval

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
SHARD_SIZE = 1 << 17
LAMBDA_SAMPLER_MAX = 50.0
LAMBDA_MOMENT_MAX = 10.0
N_MOMENT_MAX = 8
MIN_SAMPLES = 10_000


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, index: int) -> int:
    return mix64(seed ^ mix64((index + 1) * GOLDEN_GAMMA))


class SplitMix64:
    """Counter-based SplitMix64: output i is mix64(seed + (i + 1) * gamma)."""

    def __init__(self, seed: int, counter: int = 0):
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.seed = seed
        self.counter = counter

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.seed + self.counter * GOLDEN_GAMMA)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def uniforms(self, count: int) -> np.ndarray:
        i = np.arange(self.counter + 1, self.counter + count + 1, dtype=np.uint64)
        self.counter += count
        z = np.uint64(self.seed) + i * np.uint64(GOLDEN_GAMMA)
        return (_mix64_array(z) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def _check_lambda(lam: float) -> None:
    if not 0 < lam <= LAMBDA_SAMPLER_MAX:
        raise ValueError(f"lambda must lie in (0, {LAMBDA_SAMPLER_MAX}], got {lam}")


def poisson_cdf_table(lam: float) -> np.ndarray:
    """Cumulative pmf F(0), F(1), ... accumulated left to right until the tail is negligible."""
    _check_lambda(lam)
    p = math.exp(-lam)
    cdf = [p]
    i = 0
    while True:
        i += 1
        p *= lam / i
        cdf.append(cdf[-1] + p)
        if (i > lam and p < 1e-300) or cdf[-1] >= 1.0:
            break
    return np.asarray(cdf)


def sample_poisson(lam: float, rng: SplitMix64) -> int:
    """One variate by sequential search: smallest i with u < F(i)."""
    cdf = poisson_cdf_table(lam)
    u = rng.uniform()
    i = 0
    # the table ends once F(i) stops growing; the last index absorbs the rest
    while i < len(cdf) - 1 and u >= cdf[i]:
        i += 1
    return i


def sample_poisson_array(lam: float, rng: SplitMix64, size: int) -> np.ndarray:
    """Vectorised sequential search; matches repeated ``sample_poisson`` on the same stream."""
    cdf = poisson_cdf_table(lam)
    u = rng.uniforms(size)
    x = np.searchsorted(cdf, u, side="right")
    return np.minimum(x, len(cdf) - 1).astype(np.int64)


def poisson_stream(lam: float, samples: int, seed: int, workers: int = 1) -> np.ndarray:
    """All variates of a run, concatenated in shard order."""
    _check_lambda(lam)
    sizes = [SHARD_SIZE] * (samples // SHARD_SIZE)
    if samples % SHARD_SIZE:
        sizes.append(samples % SHARD_SIZE)

    def shard(i: int) -> np.ndarray:
        return sample_poisson_array(lam, SplitMix64(derive_seed(seed, i)), sizes[i])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(shard, range(len(sizes))))
    else:
        parts = [shard(i) for i in range(len(sizes))]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def exact_moment(n: int, lam: Fraction | int | str) -> Fraction:
    """E[X^n] = Bel_n(lam) for X ~ Poisson(lam)."""
    lam = Fraction(lam)
    if n < 0 or lam <= 0:
        raise ValueError("need n >= 0 and lambda > 0")
    return bell_ext_eval(n, 0, lam)


@dataclass(frozen=True)
class MomentReport:
    n: int
    lam: float
    r: float
    samples: int
    seed: int
    exact_value: float
    empirical_mean: float
    std_error: float
    z_score: float
    passed: bool

    def to_json(self) -> dict[str, Any]:
        z = self.z_score if math.isfinite(self.z_score) else None
        return {
            "n": self.n,
            "lambda": self.lam,
            "r": self.r,
            "samples": self.samples,
            "seed": self.seed,
            "exact": self.exact_value,
            "mean": self.empirical_mean,
            "stderr": self.std_error,
            "z": z,
            "pass": self.passed,
        }


def summarize(values: np.ndarray, exact: float, threshold: float) -> tuple[float, float, float, bool]:
    """(mean, standard error, z, pass) from one column of per-sample values."""
    count = len(values)
    mean = math.fsum(values) / count
    dev = values - mean
    var = math.fsum(dev * dev) / (count - 1)
    se = math.sqrt(var / count)
    if se > 0:
        z = (mean - exact) / se
    else:
        z = 0.0 if math.isclose(mean, exact, rel_tol=1e-12, abs_tol=1e-12) else math.copysign(math.inf, mean - exact)
    return mean, se, z, abs(z) <= threshold


def _check_moment_args(n_max: int, lam: float, samples: int) -> None:
    if not 0 <= n_max <= N_MOMENT_MAX:
        raise ValueError(f"n must lie in [0, {N_MOMENT_MAX}], got {n_max}")
    if not 0 < lam <= LAMBDA_MOMENT_MAX:
        raise ValueError(f"lambda must lie in (0, {LAMBDA_MOMENT_MAX}], got {lam}")
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {samples}")


def moment_grid_check(
    n_max: int,
    lam: float | Fraction | str,
    r: float | Fraction | str,
    samples: int,
    seed: int,
    threshold: float = 4.0,
    workers: int = 1,
) -> list[MomentReport]:
    """One report per n in 0..n_max, all from a single stream of variates.

    ``lam`` and ``r`` may be given exactly (Fraction or "p/q"/decimal string);
    floats are taken at their exact binary value.  The sampler uses float(lam).
    """
    lam_q, r_q = Fraction(lam), Fraction(r)
    lam_f, r_f = float(lam_q), float(r_q)
    _check_moment_args(n_max, lam_f, samples)
    xs = poisson_stream(lam_f, samples, seed, workers).astype(np.float64)
    shifted = xs + r_f * lam_f
    reports = []
    power = np.ones_like(shifted)
    for n in range(n_max + 1):
        if n:
            power = power * shifted
        exact = float(bell_ext_eval(n, r_q, lam_q))
        mean, se, z, ok = summarize(power, exact, threshold)
        reports.append(MomentReport(n, lam_f, r_f, samples, seed, exact, mean, se, z, ok))
    return reports


def empirical_shifted_moment(
    n: int,
    lam: float | Fraction | str,
    r: float | Fraction | str,
    samples: int,
    seed: int,
    threshold: float = 4.0,
    workers: int = 1,
) -> MomentReport:
    if n < 0:
        raise ValueError("n must be >= 0")
    return moment_grid_check(n, lam, r, samples, seed, threshold, workers)[n]
