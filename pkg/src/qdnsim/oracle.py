"""Dense brute-force reference operators for small registers.

Everything here is built from explicit 2**r x 2**r matrices, either as
Kronecker products of 2x2 blocks or as sums of basis outer products. It
shares no code with the sparse kernels and serves as their cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DetectorError, RankError
from .register import Labstate
from .signal_ops import ORACLE_MAX_RANK, OpKind, SignalOpKind

# 2x2 blocks in the (void, fired) basis of one signal qubit
_BLOCKS = {
    OpKind.CREATE: np.array([[0, 0], [1, 0]], dtype=np.complex128),
    OpKind.ANNIHILATE: np.array([[0, 1], [0, 0]], dtype=np.complex128),
    OpKind.PROJ_FIRED: np.diag([0, 1]).astype(np.complex128),
    OpKind.PROJ_VOID: np.diag([1, 0]).astype(np.complex128),
}


@dataclass(frozen=True, eq=False)
class DenseOperator:
    rank: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.shape != (1 << self.rank, 1 << self.rank):
            raise RankError(f"matrix shape {self.matrix.shape} does not match rank {self.rank}")

    def apply(self, psi: Labstate) -> Labstate:
        if psi.rank != self.rank:
            raise RankError(f"rank mismatch: {psi.rank} vs {self.rank}")
        return Labstate(self.rank, self.matrix @ psi.amplitudes)

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.rank, self.matrix @ other.matrix)

    def expectation(self, psi: Labstate) -> complex:
        return complex(np.vdot(psi.amplitudes, self.matrix @ psi.amplitudes))


def _check_oracle_rank(rank: int) -> None:
    if isinstance(rank, bool) or int(rank) != rank or not 1 <= rank <= ORACLE_MAX_RANK:
        raise RankError(f"dense oracle supports rank 1..{ORACLE_MAX_RANK}, got {rank!r}")


def identity(rank: int) -> DenseOperator:
    _check_oracle_rank(rank)
    return DenseOperator(rank, np.eye(1 << rank, dtype=np.complex128))


def dense_signal_op(op: SignalOpKind, rank: int) -> DenseOperator:
    """I (x) ... (x) block (x) ... (x) I with the block on detector ``op.detector``.

    Detector 1 is the least significant bit, so it is the rightmost factor.
    """
    _check_oracle_rank(rank)
    i = op.detector
    if not 1 <= i <= rank:
        raise DetectorError(f"detector index {i} outside 1..{rank}")
    low = np.eye(1 << (i - 1))
    high = np.eye(1 << (rank - i))
    return DenseOperator(rank, np.kron(high, np.kron(_BLOCKS[op.kind], low)))


def dense_embed(op, rank: int) -> DenseOperator:
    """Full-register matrix of a local operator, one outer product at a time.

    For every remote pattern and local source/image pair this adds
    ``U[j, i] |image)(source|``, with the local index scattered into the
    target bits positionally.
    """
    _check_oracle_rank(rank)
    targets = [int(t) for t in op.targets]
    if any(not 1 <= t <= rank for t in targets):
        raise DetectorError(f"targets {targets} outside 1..{rank}")
    local = np.asarray(op.matrix, dtype=np.complex128)
    p = len(targets)
    remote = [b for b in range(1, rank + 1) if b not in targets]

    def scatter(value: int, detectors: list[int]) -> int:
        return sum(1 << (d - 1) for m, d in enumerate(detectors) if value >> m & 1)

    out = np.zeros((1 << rank, 1 << rank), dtype=np.complex128)
    for a in range(1 << len(remote)):
        base = scatter(a, remote)
        for i in range(1 << p):
            src = base + scatter(i, targets)
            for j in range(1 << p):
                out[base + scatter(j, targets), src] += local[j, i]
    return DenseOperator(rank, out)


def dense_proposition(clauses, rank: int) -> DenseOperator:
    """Ordered product of dense projectors for ``(detector, fired)`` pairs."""
    result = identity(rank)
    for det, fired in clauses:
        kind = OpKind.PROJ_FIRED if fired else OpKind.PROJ_VOID
        result = dense_signal_op(SignalOpKind(kind, det), rank) @ result
    return result
