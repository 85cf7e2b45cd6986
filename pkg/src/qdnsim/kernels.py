"""Backend selection for the amplitude kernels.

The compiled extension is used when it imports; otherwise the numpy
implementation is used. Setting ``QDNSIM_PURE_PYTHON=1`` forces the numpy
path. Both backends stay importable as :data:`pure` and :data:`compiled`
(``None`` when the extension was not built) for benchmarking and
cross-checking.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py as pure

try:
    from . import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and os.environ.get("QDNSIM_PURE_PYTHON") != "1":
    _impl = compiled
    BACKEND = "cython"
else:
    _impl = pure
    BACKEND = "numpy"


def _batch(amps: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(amps, dtype=np.complex128).reshape(-1, amps.shape[-1])


def raise_bit(amps: np.ndarray, bit: int) -> np.ndarray:
    return np.asarray(_impl.raise_bit(_batch(amps), bit)).reshape(amps.shape)


def lower_bit(amps: np.ndarray, bit: int) -> np.ndarray:
    return np.asarray(_impl.lower_bit(_batch(amps), bit)).reshape(amps.shape)


def mask_bit(amps: np.ndarray, bit: int, fired: bool) -> np.ndarray:
    return np.asarray(_impl.mask_bit(_batch(amps), bit, fired)).reshape(amps.shape)


def apply_local(amps: np.ndarray, bits, matrix: np.ndarray) -> np.ndarray:
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    matrix = np.ascontiguousarray(matrix, dtype=np.complex128)
    return np.asarray(_impl.apply_local(amps, np.asarray(bits, dtype=np.intp), matrix))


def probabilities(amps: np.ndarray) -> np.ndarray:
    return np.asarray(_impl.probabilities(np.ascontiguousarray(amps, dtype=np.complex128)))


def subset_probabilities(amps: np.ndarray, bits) -> np.ndarray:
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    return np.asarray(_impl.subset_probabilities(amps, np.asarray(bits, dtype=np.intp)))


def masked_norm2(amps: np.ndarray, mask: int, value: int) -> float:
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    return float(_impl.masked_norm2(amps, mask, value))
