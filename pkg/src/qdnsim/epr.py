"""EPR spin pairs: singlet preparation, independent Alice/Bob rotations,
joint outcome probabilities and Wigner's inequality."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, NormalizationError, RankError, ShapeError
from .localops import apply_local, compose_disjoint
from .questions import Proposition, partial_probability
from .register import NORM_TOL, Labstate, check_rank
from .sterngerlach import SGCoefficients, sg_rotation, wigner_coefficients

ALICE = (1, 2)
BOB = (3, 4)
VIOLATION_TOL = 1e-12

_S = 1 / math.sqrt(2)


@dataclass(frozen=True, eq=False)
class EPRSetup:
    """Alice holds detectors (1, 2), Bob (3, 4); detectors 5..rank carry an
    environment state, void by default."""

    rank: int = 4
    environment: np.ndarray | None = None

    def __post_init__(self):
        if isinstance(self.rank, bool) or int(self.rank) != self.rank or self.rank < 4:
            raise RankError(f"an EPR setup needs rank >= 4, got {self.rank!r}")
        check_rank(self.rank)
        n_env = 1 << (self.rank - 4)
        if self.environment is None:
            env = np.zeros(n_env, dtype=np.complex128)
            env[0] = 1
        else:
            env = np.array(self.environment, dtype=np.complex128).reshape(-1)
            if env.shape[0] != n_env:
                raise ShapeError(f"environment needs {n_env} amplitudes, got {env.shape[0]}")
            if abs(np.vdot(env, env).real - 1) > NORM_TOL:
                raise NormalizationError("environment amplitudes must be normalized")
        env.flags.writeable = False
        object.__setattr__(self, "environment", env)


def prepare_singlet(setup: EPRSetup | None = None) -> Labstate:
    """(1/sqrt 2)(A1+ A4+ - A2+ A3+)|Phi), with |Phi) void on detectors 1-4."""
    setup = setup or EPRSetup()
    core = np.zeros(16, dtype=np.complex128)
    core[0b1001] = _S
    core[0b0110] = -_S
    return Labstate(setup.rank, np.kron(setup.environment, core))


def joint_rotation(psi: Labstate, a: SGCoefficients, b: SGCoefficients) -> Labstate:
    """Alice rotates by ``a`` on (1, 2) while Bob rotates by ``b`` on (3, 4)."""
    if psi.rank < 4:
        raise RankError(f"joint rotation needs rank >= 4, got {psi.rank}")
    return apply_local(compose_disjoint(sg_rotation(ALICE, a), sg_rotation(BOB, b)), psi)


def closed_form_pp(a: SGCoefficients, b: SGCoefficients) -> float:
    """1/2 |alpha_a gamma_b - gamma_a alpha_b|^2."""
    return 0.5 * abs(a.alpha * b.gamma - a.gamma * b.alpha) ** 2


_PLUS_PLUS = Proposition(((1, True), (3, True)))


def p_plus_plus(a: SGCoefficients, b: SGCoefficients,
                setup: EPRSetup | None = None) -> tuple[float, float]:
    """(simulated, closed-form) probability that detectors 1 and 3 both fire."""
    rotated = joint_rotation(prepare_singlet(setup), a, b)
    return partial_probability(rotated, _PLUS_PLUS), closed_form_pp(a, b)


@dataclass(frozen=True)
class WignerScanRow:
    theta_a: float
    theta_b: float
    theta_c: float
    p_ab: float
    p_bc: float
    p_ac: float

    @property
    def lhs(self) -> float:
        return self.p_ab + self.p_bc

    @property
    def rhs(self) -> float:
        return self.p_ac

    @property
    def violated(self) -> bool:
        return self.lhs < self.rhs - VIOLATION_TOL

    CSV_HEADER = "theta_a,theta_b,theta_c,p_ab,p_bc,p_ac,lhs,rhs,violated"

    def csv(self) -> str:
        vals = (self.theta_a, self.theta_b, self.theta_c, self.p_ab, self.p_bc, self.p_ac,
                self.lhs, self.rhs)
        return ",".join(f"{v:.15g}" for v in vals) + f",{int(self.violated)}"

    def to_dict(self) -> dict:
        return {"theta_a": self.theta_a, "theta_b": self.theta_b, "theta_c": self.theta_c,
                "p_ab": self.p_ab, "p_bc": self.p_bc, "p_ac": self.p_ac,
                "lhs": self.lhs, "rhs": self.rhs, "violated": self.violated}


def _finite(*angles: float) -> tuple[float, ...]:
    out = tuple(float(t) for t in angles)
    if not all(math.isfinite(t) for t in out):
        raise DomainError(f"angles must be finite, got {angles}")
    return out


def wigner_inequality(theta_a: float, theta_b: float, theta_c: float,
                      setup: EPRSetup | None = None) -> WignerScanRow:
    """Evaluate P(+a,+b) + P(+b,+c) >= P(+a,+c) on simulated probabilities."""
    ta, tb, tc = _finite(theta_a, theta_b, theta_c)
    ca, cb, cc = (wigner_coefficients(t) for t in (ta, tb, tc))
    p_ab = p_plus_plus(ca, cb, setup)[0]
    p_bc = p_plus_plus(cb, cc, setup)[0]
    p_ac = p_plus_plus(ca, cc, setup)[0]
    return WignerScanRow(ta, tb, tc, p_ab, p_bc, p_ac)


def mesh(start: float, stop: float, step: float) -> list[float]:
    """Points start, start+step, ... strictly below ``stop``."""
    start, stop, step = _finite(start, stop, step)
    if step <= 0:
        raise DomainError(f"mesh step must be positive, got {step}")
    n = max(0, math.ceil((stop - start) / step - 1e-9))
    return [start + k * step for k in range(n)]


def mesh_triples(start: float, stop: float, step: float) -> list[tuple[float, float, float]]:
    pts = mesh(start, stop, step)
    return list(itertools.product(pts, repeat=3))


def wigner_scan(grid: Iterable[Sequence[float]], setup: EPRSetup | None = None) -> list[WignerScanRow]:
    """One row per angle triple, in grid order."""
    triples = [tuple(t) for t in grid]
    if not triples:
        raise DomainError("wigner_scan needs at least one angle triple")
    for t in triples:
        if len(t) != 3:
            raise DomainError(f"expected angle triples, got {t}")
    return [wigner_inequality(*t, setup=setup) for t in triples]


def count_violations(rows: Iterable[WignerScanRow]) -> int:
    return sum(1 for r in rows if r.violated)

