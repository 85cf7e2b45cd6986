"""Local operator for an active rotation of a Stern-Gerlach quantization axis.

The two detectors of one S-G device (spin-up ``u``, spin-down ``d``) form a
4-dimensional local space with basis 0 = both void, 1 = u fired,
2 = d fired, 3 = both fired. The rotation leaves the void and the
double-fired state alone and mixes the two one-signal states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OverlapError
from .localops import LocalOperator

COEFF_TOL = 1e-12


@dataclass(frozen=True)
class SGCoefficients:
    """Rotation coefficients: u -> alpha u + beta d, d -> gamma u + delta d."""

    alpha: complex
    beta: complex
    gamma: complex
    delta: complex

    def __post_init__(self):
        vals = [complex(x) for x in (self.alpha, self.beta, self.gamma, self.delta)]
        if not all(math.isfinite(v.real) and math.isfinite(v.imag) for v in vals):
            raise DomainError("coefficients must be finite")
        for name, v in zip(("alpha", "beta", "gamma", "delta"), vals):
            object.__setattr__(self, name, v)
        r = self.residual()
        if r > COEFF_TOL:
            raise DomainError(f"coefficients violate semi-unitarity (residual {r:.3e})")

    def residual(self) -> float:
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        return max(
            abs(abs(a) ** 2 + abs(b) ** 2 - 1),
            abs(abs(c) ** 2 + abs(d) ** 2 - 1),
            abs(a.conjugate() * c + b.conjugate() * d),
        )

    def block(self) -> np.ndarray:
        """The 2x2 mixing block; columns are the images of u and d."""
        return np.array([[self.alpha, self.gamma], [self.beta, self.delta]], dtype=np.complex128)

    @classmethod
    def identity(cls) -> "SGCoefficients":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_block(cls, block) -> "SGCoefficients":
        m = np.asarray(block, dtype=np.complex128)
        return cls(m[0, 0], m[1, 0], m[0, 1], m[1, 1])

    @classmethod
    def random(cls, rng: np.random.Generator) -> "SGCoefficients":
        from .localops import random_semiunitary

        return cls.from_block(random_semiunitary(1, rng))


def wigner_coefficients(theta: float) -> SGCoefficients:
    """Single-angle family (cos t/2, sin t/2, -sin t/2, cos t/2)."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise DomainError(f"angle must be finite, got {theta!r}")
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    return SGCoefficients(c, s, -s, c)


def sg_rotation(pair: tuple[int, int], c: SGCoefficients) -> LocalOperator:
    """4x4 local operator on detectors ``(u, d)`` for the rotation ``c``."""
    u, d = (int(x) for x in pair)
    if u == d:
        raise OverlapError(f"spin-up and spin-down detectors must differ, got {u}")
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = 1
    m[1:3, 1:3] = c.block()
    m[3, 3] = 1
    return LocalOperator((u, d), m)
