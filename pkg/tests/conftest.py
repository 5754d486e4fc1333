import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_spectrum(rng, n, scale=3.0):
    from sffbound.spectra import explicit_spectrum
    return explicit_spectrum(np.sort(rng.normal(size=n) * scale))
