"""Pure numpy implementations of the amplitude kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and semantics. Batched kernels take a ``(n_states, 2**rank)`` complex128 array;
the others take a single flat amplitude vector. Inputs are never modified.
"""
from __future__ import annotations

import numpy as np

_VECTOR_LIMIT = 1 << 22


def raise_bit(amps: np.ndarray, bit: int) -> np.ndarray:
    n, dim = amps.shape
    src = amps.reshape(n, -1, 2, 1 << bit)
    out = np.zeros_like(src)
    out[:, :, 1, :] = src[:, :, 0, :]
    return out.reshape(n, dim)


def lower_bit(amps: np.ndarray, bit: int) -> np.ndarray:
    n, dim = amps.shape
    src = amps.reshape(n, -1, 2, 1 << bit)
    out = np.zeros_like(src)
    out[:, :, 0, :] = src[:, :, 1, :]
    return out.reshape(n, dim)


def mask_bit(amps: np.ndarray, bit: int, fired: bool) -> np.ndarray:
    n, dim = amps.shape
    src = amps.reshape(n, -1, 2, 1 << bit)
    out = np.zeros_like(src)
    v = 1 if fired else 0
    out[:, :, v, :] = src[:, :, v, :]
    return out.reshape(n, dim)


def _rank_of(dim: int) -> int:
    return dim.bit_length() - 1


def _front_axes(rank: int, bits) -> list[int]:
    # C-order reshape puts the most significant bit on axis 0; local index
    # bit m maps to bits[m], so bits[-1] must land on the leading axis.
    return [rank - 1 - b for b in reversed(bits)]


def cmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex product with every real product rounded on its own.

    numpy's vectorized complex multiply may fuse multiply-adds, which makes
    ``a * b`` and ``b * a`` differ in the last bit; this form is commutative
    and matches plain C complex arithmetic.
    """
    return (a.real * b.real - a.imag * b.imag) + 1j * (a.real * b.imag + a.imag * b.real)


def apply_local(amps: np.ndarray, bits: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    rank = _rank_of(amps.shape[0])
    p = len(bits)
    axes = _front_axes(rank, [int(b) for b in bits])
    t = np.moveaxis(amps.reshape((2,) * rank), axes, range(p))
    shape = t.shape
    t = t.reshape(1 << p, -1)
    # Sum source columns in index order with unfused products and no BLAS, so
    # exact cancellations stay exactly zero and results match the compiled
    # kernel bit for bit. Reducing over a leading axis is sequential in numpy.
    if (1 << p) * t.size <= _VECTOR_LIMIT:
        acc = cmul(matrix.T[:, :, None], t[:, None, :]).sum(axis=0)
    else:
        acc = np.zeros_like(t)
        for i in range(1 << p):
            acc = acc + cmul(matrix[:, i, None], t[i][None, :])
    return np.ascontiguousarray(np.moveaxis(acc.reshape(shape), range(p), axes)).reshape(-1)


def probabilities(amps: np.ndarray) -> np.ndarray:
    return amps.real * amps.real + amps.imag * amps.imag


def subset_probabilities(amps: np.ndarray, bits: np.ndarray) -> np.ndarray:
    rank = _rank_of(amps.shape[0])
    k = len(bits)
    probs = probabilities(amps)
    axes = _front_axes(rank, [int(b) for b in bits])
    t = np.moveaxis(probs.reshape((2,) * rank), axes, range(k))
    return t.reshape(1 << k, -1).sum(axis=1)


def masked_norm2(amps: np.ndarray, mask: int, value: int) -> float:
    rank = _rank_of(amps.shape[0])
    probs = probabilities(amps)
    index = []
    for axis in range(rank):
        b = rank - 1 - axis
        if mask >> b & 1:
            index.append(value >> b & 1)
        else:
            index.append(slice(None))
    return float(np.sum(probs.reshape((2,) * rank)[tuple(index)]))
