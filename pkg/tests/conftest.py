import pytest

from wwspdc.gaussian_modes import SamplerConfig, sample_vacuum

SEED = 20200203


@pytest.fixture(scope="session")
def small_stream():
    """200k vacuum pairs in 100 batches, enough for 5-se checks on the fast path"""
    return sample_vacuum(SamplerConfig(seed=SEED, n_samples=200_000, n_batches=100))


@pytest.fixture(scope="session")
def full_stream():
    """10^6 vacuum pairs, the acceptance-run size"""
    return sample_vacuum(SamplerConfig(seed=SEED, n_samples=1_000_000, n_batches=100))
