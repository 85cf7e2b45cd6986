import numpy as np
import pytest

from qdnsim import kernels

BACKENDS = [kernels.pure] + ([kernels.compiled] if kernels.compiled is not None else [])


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    monkeypatch.setattr(kernels, "_impl", request.param)
    return request.param


def random_vec(rng, dim):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)
