"""
Vacuum-mode sampling from the vacuum Wigner function.

Each vacuum mode amplitude is a complex Gaussian with independent real and
imaginary parts of variance 1/4, so that <|a|^2> = 1/2. Samples are generated in
batches; batch b draws from its own Philox substream derived from
(seed, b), so the stream does not depend on how many workers generate it.
"""
import logging
from collections.abc import Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np
from numpy.typing import NDArray
from scipy.special import factorial

from .base import ConfigError, RateEstimate

logger = logging.getLogger(__name__)

# Standard deviation of each real quadrature (variance 1/4)
QUADRATURE_STD = 0.5

RNG_NAME = "numpy-philox4x64/ziggurat"

ModeAmplitude = Union[complex, NDArray[np.complex128]]
Mode = Literal["s", "i"]


def rng_id() -> str:
    """Name and version of the generator behind every sample stream"""
    return f"{RNG_NAME}/numpy-{np.__version__}"


@dataclass(frozen=True)
class VacuumSample:
    """Signal and idler vacuum amplitudes.

    Fields hold either complex scalars (one run) or equally shaped complex
    arrays (a batch of runs); every downstream function accepts both.
    """
    a_s: ModeAmplitude
    a_i: ModeAmplitude

    def __post_init__(self):
        if not (np.all(np.isfinite(self.a_s)) and np.all(np.isfinite(self.a_i))):
            raise ValueError("Vacuum amplitudes must be finite")

    def __len__(self) -> int:
        return int(np.size(self.a_s))

    def amplitude(self, mode: Mode) -> ModeAmplitude:
        if mode == "s":
            return self.a_s
        if mode == "i":
            return self.a_i
        raise ValueError(f"Unknown mode '{mode}', expected 's' or 'i'")


@dataclass(frozen=True)
class SamplerConfig:
    """Seed and size of a vacuum sample stream"""
    seed: int = 20200203
    n_samples: int = 1_000_000
    n_batches: int = 100

    def __post_init__(self):
        if not isinstance(self.seed, (int, np.integer)) or not (0 <= self.seed < 2**64):
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.n_samples <= 0:
            raise ConfigError(f"n_samples must be positive, got {self.n_samples}")
        if self.n_batches < 2:
            raise ConfigError(f"n_batches must be at least 2, got {self.n_batches}")
        if self.n_samples < self.n_batches:
            raise ConfigError(
                f"n_samples ({self.n_samples}) must be >= n_batches ({self.n_batches})"
            )

    def batch_sizes(self) -> list[int]:
        """Sizes of the batches; the first n_samples % n_batches get one extra sample"""
        base, extra = divmod(self.n_samples, self.n_batches)
        return [base + (1 if b < extra else 0) for b in range(self.n_batches)]


def _draw_batch(seed: int, batch_index: int, size: int) -> VacuumSample:
    seq = np.random.SeedSequence(seed, spawn_key=(batch_index,))
    gen = np.random.Generator(np.random.Philox(seq))
    # Column order (re s, im s, re i, im i) is part of the frozen stream layout
    q = gen.normal(0.0, QUADRATURE_STD, size=(size, 4))
    return VacuumSample(a_s=q[:, 0] + 1j * q[:, 1], a_i=q[:, 2] + 1j * q[:, 3])


class VacuumStream:
    """Re-iterable, deterministic stream of vacuum sample batches.

    Batches are generated on first use (in parallel when workers > 1) and kept;
    the content depends only on the SamplerConfig.
    """

    def __init__(self, config: SamplerConfig, workers: int = 1):
        if workers < 1:
            raise ConfigError(f"workers must be >= 1, got {workers}")
        self.config = config
        self.workers = workers
        self._batches: list[VacuumSample] | None = None

    @property
    def rng_id(self) -> str:
        return rng_id()

    @property
    def n_samples(self) -> int:
        return self.config.n_samples

    @property
    def n_batches(self) -> int:
        return self.config.n_batches

    def _materialize(self) -> list[VacuumSample]:
        if self._batches is None:
            sizes = self.config.batch_sizes()
            seed = self.config.seed
            if self.workers > self.config.n_batches:
                logger.warning(
                    "workers (%d) exceed batch count (%d); extra workers stay idle",
                    self.workers, self.config.n_batches,
                )
            logger.debug(
                "Sampling %d vacuum pairs in %d batches (seed=%d, workers=%d)",
                self.config.n_samples, self.config.n_batches, seed, self.workers,
            )
            if self.workers == 1:
                self._batches = [_draw_batch(seed, b, n) for b, n in enumerate(sizes)]
            else:
                with ThreadPoolExecutor(max_workers=self.workers) as pool:
                    # map preserves batch order regardless of completion order
                    self._batches = list(
                        pool.map(_draw_batch, [seed] * len(sizes), range(len(sizes)), sizes)
                    )
        return self._batches

    def __iter__(self) -> Iterator[VacuumSample]:
        return iter(self._materialize())

    def __len__(self) -> int:
        return self.config.n_batches


def sample_vacuum(config: SamplerConfig, workers: int = 1) -> VacuumStream:
    """Stream of vacuum amplitude batches distributed per the vacuum Wigner function"""
    if not isinstance(config, SamplerConfig):
        raise ConfigError("sample_vacuum requires a SamplerConfig")
    return VacuumStream(config, workers=workers)


def batched_estimate(
    batches: Iterable[VacuumSample], per_sample
) -> RateEstimate:
    """Batch means of a per-sample quantity, reduced to a size-weighted mean +- standard error"""
    means = []
    sizes = []
    for batch in batches:
        values = np.asarray(per_sample(batch))
        means.append(values.mean())
        sizes.append(values.size)
    if not means:
        raise ConfigError("Empty sample stream")
    return RateEstimate.from_batches(np.array(means), sum(sizes), batch_sizes=sizes)


def empirical_moment(
    samples: Iterable[VacuumSample], exponents: tuple[int, int], mode: Mode
) -> RateEstimate:
    """Batched estimate of <a^n (a*)^m> for one mode"""
    n, m = exponents
    if n < 0 or m < 0:
        raise ValueError(f"Moment exponents must be non-negative, got {exponents}")

    def monomial(batch: VacuumSample):
        a = batch.amplitude(mode)
        return a**n * np.conj(a) ** m

    return batched_estimate(samples, monomial)


def vacuum_moment(n: int, m: int) -> float:
    """Exact single-mode vacuum moment <a^n (a*)^m> = delta_nm n! / 2^n"""
    if n != m:
        return 0.0
    return float(factorial(n, exact=True)) / 2**n


def cross_mode_moment(samples: Iterable[VacuumSample]) -> RateEstimate:
    """Batched estimate of <|a_s|^2 |a_i|^2>"""
    return batched_estimate(samples, lambda b: np.abs(b.a_s) ** 2 * np.abs(b.a_i) ** 2)


__all__ = [
    "ModeAmplitude",
    "SamplerConfig",
    "VacuumSample",
    "VacuumStream",
    "batched_estimate",
    "cross_mode_moment",
    "empirical_moment",
    "rng_id",
    "sample_vacuum",
    "vacuum_moment",
]

