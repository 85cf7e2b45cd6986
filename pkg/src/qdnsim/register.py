"""Rank-r signal registers and labstates in the computational basis.

Basis index ``k`` encodes detector ``i`` (1-based) in bit ``i - 1``: the bit
is set iff that detector is fired. With this convention creating a signal in
detector ``i`` on the void state gives basis state ``2**(i-1)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DetectorError, RankError, ShapeError

MAX_RANK = 24
NORM_TOL = 1e-12


def check_rank(rank: int) -> int:
    if isinstance(rank, bool) or int(rank) != rank or not 1 <= rank <= MAX_RANK:
        raise RankError(f"rank must be an integer in 1..{MAX_RANK}, got {rank!r}")
    return int(rank)


def check_detector(i: int, rank: int) -> int:
    if isinstance(i, bool) or int(i) != i or not 1 <= i <= rank:
        raise DetectorError(f"detector index {i!r} outside 1..{rank}")
    return int(i)


@dataclass(frozen=True, eq=False)
class Labstate:
    """Immutable amplitude vector over the 2**rank computational basis states.

    Construct through :func:`make_void`, :func:`from_amplitudes` or
    :func:`basis_state`; the amplitude array is read-only.
    """

    rank: int
    amplitudes: np.ndarray

    def __post_init__(self):
        check_rank(self.rank)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 1 << self.rank:
            raise ShapeError(
                f"rank {self.rank} needs {1 << self.rank} amplitudes, got {amps.shape[0]}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 1 << self.rank

    def norm2(self) -> float:
        a = self.amplitudes
        return float(np.sum(a.real * a.real + a.imag * a.imag))

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm2() - 1.0) <= NORM_TOL

    @property
    def is_zero(self) -> bool:
        return not np.any(self.amplitudes)

    def __getitem__(self, k: int) -> complex:
        return complex(self.amplitudes[k])

    def __len__(self) -> int:
        return self.dim

    def __add__(self, other: "Labstate") -> "Labstate":
        _same_rank(self, other)
        return Labstate(self.rank, self.amplitudes + other.amplitudes)

    def __sub__(self, other: "Labstate") -> "Labstate":
        _same_rank(self, other)
        return Labstate(self.rank, self.amplitudes - other.amplitudes)

    def scaled(self, c: complex) -> "Labstate":
        return Labstate(self.rank, c * self.amplitudes)

    def normalized(self) -> "Labstate":
        n = np.sqrt(self.norm2())
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return Labstate(self.rank, self.amplitudes / n)

    def allclose(self, other: "Labstate", atol: float = NORM_TOL) -> bool:
        _same_rank(self, other)
        return bool(np.max(np.abs(self.amplitudes - other.amplitudes), initial=0.0) <= atol)

    def __repr__(self) -> str:
        return f"Labstate(rank={self.rank}, norm2={self.norm2():.15g})"

    def to_json(self) -> str:
        return json.dumps(labstate_to_dict(self))


@dataclass(frozen=True)
class BasisOutcome:
    """A maximal outcome: the set of fired detectors (1-based)."""

    rank: int
    fired: frozenset

    def __post_init__(self):
        check_rank(self.rank)
        fired = frozenset(int(i) for i in self.fired)
        for i in fired:
            check_detector(i, self.rank)
        object.__setattr__(self, "fired", fired)

    @property
    def index(self) -> int:
        return sum(1 << (i - 1) for i in self.fired)

    @classmethod
    def from_index(cls, rank: int, k: int) -> "BasisOutcome":
        if not 0 <= k < 1 << rank:
            raise ShapeError(f"basis index {k} outside register of rank {rank}")
        return cls(rank, frozenset(i + 1 for i in range(rank) if k >> i & 1))


def _same_rank(a: Labstate, b: Labstate) -> None:
    if a.rank != b.rank:
        raise RankError(f"rank mismatch: {a.rank} vs {b.rank}")


def make_void(rank: int) -> Labstate:
    """The information vacuum: no detector fired."""
    rank = check_rank(rank)
    amps = np.zeros(1 << rank, dtype=np.complex128)
    amps[0] = 1.0
    return Labstate(rank, amps)


def basis_state(rank: int, k: int) -> Labstate:
    rank = check_rank(rank)
    if not 0 <= k < 1 << rank:
        raise ShapeError(f"basis index {k} outside register of rank {rank}")
    amps = np.zeros(1 << rank, dtype=np.complex128)
    amps[k] = 1.0
    return Labstate(rank, amps)


def from_amplitudes(rank: int, coeffs: Sequence[complex]) -> Labstate:
    """Wrap ``coeffs`` as a labstate without rescaling them."""
    rank = check_rank(rank)
    amps = np.asarray(coeffs, dtype=np.complex128)
    if amps.ndim != 1 or amps.shape[0] != 1 << rank:
        raise ShapeError(f"rank {rank} needs {1 << rank} amplitudes, got shape {amps.shape}")
    return Labstate(rank, amps)


def inner_product(a: Labstate, b: Labstate) -> complex:
    """(a|b), conjugate-linear in ``a``."""
    _same_rank(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def random_labstate(rank: int, rng: np.random.Generator) -> Labstate:
    """Normalized state with i.i.d. standard complex Gaussian amplitudes."""
    rank = check_rank(rank)
    dim = 1 << rank
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return Labstate(rank, v / np.linalg.norm(v))


def product_state(parts: Iterable[Labstate]) -> Labstate:
    """Tensor product; the first part occupies the lowest-numbered detectors."""
    parts = list(parts)
    amps = np.ones(1, dtype=np.complex128)
    rank = 0
    for part in parts:
        amps = np.kron(part.amplitudes, amps)
        rank += part.rank
    return Labstate(rank, amps)


def labstate_to_dict(psi: Labstate) -> dict:
    return {
        "rank": psi.rank,
        "amplitudes": [[float(c.real), float(c.imag)] for c in psi.amplitudes],
    }


def labstate_from_dict(data: dict) -> Labstate:
    try:
        rank = data["rank"]
        pairs = data["amplitudes"]
        coeffs = [complex(float(re), float(im)) for re, im in pairs]
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed labstate document: {exc}") from exc
    return from_amplitudes(rank, coeffs)


def labstate_from_json(text: str) -> Labstate:
    return labstate_from_dict(json.loads(text))
