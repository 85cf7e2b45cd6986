"""Semi-unitary operations confined to a subset of detectors, their
disjoint composition, and the Einstein-locality auditor."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._kernels_py import cmul
from .errors import DetectorError, OverlapError, SemiUnitarityError, ShapeError
from .questions import (
    Proposition,
    require_normalized,
    partial_probability,
    subset_probabilities,
)
from .register import Labstate, check_detector

ASSERT_TOL = 1e-12
APPLY_TOL = 1e-10
# Bounds the two-sided audit's cost: 2**rank * 2**|V| multiply-adds per application.
_AUDIT_COST_BITS = 26
_AUDIT_MAX_V = 10


@dataclass(frozen=True, eq=False)
class LocalOperator:
    """Coefficient matrix acting on an ordered list of target detectors.

    Column ``i`` of ``matrix`` is the image of local basis state ``i``; bit
    ``m`` of a local index is the fired bit of ``targets[m]``.
    """

    targets: tuple
    matrix: np.ndarray

    def __post_init__(self):
        targets = tuple(int(t) for t in self.targets)
        if not targets:
            raise DetectorError("a local operator needs at least one target detector")
        if any(t < 1 for t in targets):
            raise DetectorError(f"detector indices are 1-based, got {targets}")
        if len(set(targets)) != len(targets):
            raise OverlapError(f"repeated target detector in {targets}")
        m = np.array(self.matrix, dtype=np.complex128)
        size = 1 << len(targets)
        if m.shape != (size, size):
            raise ShapeError(f"{len(targets)} targets need a {size}x{size} matrix, got {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "matrix", m)

    @property
    def p(self) -> int:
        return len(self.targets)

    def residual_bound(self) -> float:
        """Upper bound on the semi-unitarity residual, computed once per operator."""
        r = self.__dict__.get("_residual")
        if r is None:
            r = semiunitarity_residual(self.matrix)
            object.__setattr__(self, "_residual", r)
        return r

    @classmethod
    def identity(cls, targets) -> "LocalOperator":
        return cls(tuple(targets), np.eye(1 << len(tuple(targets))))


def semiunitarity_residual(matrix) -> float:
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n & (n - 1):
        raise ShapeError(f"matrix size {n} is not a power of two")
    return float(np.max(np.abs(m.conj().T @ m - np.eye(n))))


def check_semiunitary(op, tol: float = ASSERT_TOL) -> tuple[bool, float]:
    """(ok, residual) where residual = max |sum_j conj(U[j,i]) U[j,k] - delta_ik|."""
    matrix = op.matrix if isinstance(op, LocalOperator) else op
    r = semiunitarity_residual(matrix)
    return r <= tol, r


def apply_local(op: LocalOperator, psi: Labstate) -> Labstate:
    for t in op.targets:
        check_detector(t, psi.rank)
    r = op.residual_bound()
    if r > APPLY_TOL:
        raise SemiUnitarityError(f"operator is not semi-unitary (residual {r:.3e})")
    bits = [t - 1 for t in op.targets]
    return Labstate(psi.rank, kernels.apply_local(psi.amplitudes, bits, op.matrix))


def compose_disjoint(u: LocalOperator, v: LocalOperator) -> LocalOperator:
    """Single operator on ``u.targets + v.targets`` acting as u and v together."""
    shared = set(u.targets) & set(v.targets)
    if shared:
        raise OverlapError(f"operators share detectors {sorted(shared)}")
    # u's targets come first, so they hold the low local bits: kron(v, u).
    out = LocalOperator(u.targets + v.targets, exact_kron(v.matrix, u.matrix))
    # (V x U)^H (V x U) - I = Ev x I + I x Eu + Ev x Eu, entrywise bounded by
    # rv + ru + rv*ru; skips an O(8**p) product for large compositions.
    ru, rv = u.residual_bound(), v.residual_bound()
    object.__setattr__(out, "_residual", ru + rv + ru * rv)
    return out


def exact_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with commutative (unfused) complex products."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    out = cmul(a[:, None, :, None], b[None, :, None, :])
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def random_semiunitary(p: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random 2**p x 2**p unitary via QR with phase correction."""
    n = 1 << p
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_local_operator(targets, rng: np.random.Generator) -> LocalOperator:
    targets = tuple(targets)
    return LocalOperator(targets, random_semiunitary(len(targets), rng))


def random_proposition(detectors, rng: np.random.Generator) -> Proposition:
    """Uniform over nonempty subsets of ``detectors``, uniform outcome per clause."""
    detectors = list(detectors)
    while True:
        keep = rng.random(len(detectors)) < 0.5
        if keep.any():
            break
    fired = rng.random(len(detectors)) < 0.5
    return Proposition(tuple((d, bool(f)) for d, k, f in zip(detectors, keep, fired) if k))


@dataclass
class AuditReport:
    trials: int
    single_delta: float
    two_sided_delta: float
    v_targets: tuple = ()

    @property
    def max_remote_delta(self) -> float:
        return max(self.single_delta, self.two_sided_delta)

    @property
    def passed(self) -> bool:
        return self.max_remote_delta <= ASSERT_TOL

    def to_dict(self) -> dict:
        return {"max_remote_delta": self.max_remote_delta, "trials": self.trials,
                "pass": self.passed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _side_delta(a: Labstate, b: Labstate, side, props) -> float:
    if not side:
        return 0.0
    worst = float(np.max(np.abs(subset_probabilities(a, side) - subset_probabilities(b, side))))
    for q in props:
        worst = max(worst, abs(partial_probability(a, q) - partial_probability(b, q)))
    return worst


def locality_audit(psi: Labstate, op: LocalOperator, trials: int, seed=None,
                   v: LocalOperator | None = None) -> AuditReport:
    """Measure how far remote probabilities move under a local operation.

    Compares the joint distribution over the complement of ``op.targets``
    and ``trials`` random remote propositions, before and after ``op``. The
    two-sided part applies ``op`` together with an operator ``v`` on remote
    detectors (random if not given) and checks that each side's
    probabilities match those produced by that side's operator alone.
    """
    require_normalized(psi)
    rng = np.random.default_rng(seed)
    for t in op.targets:
        check_detector(t, psi.rank)
    remote = [d for d in range(1, psi.rank + 1) if d not in op.targets]
    local = list(op.targets)

    after = apply_local(op, psi)
    remote_props = [random_proposition(remote, rng) for _ in range(trials)] if remote else []
    single = _side_delta(psi, after, remote, remote_props)

    two_sided = 0.0
    if remote:
        if v is None:
            budget = max(1, min(_AUDIT_MAX_V, _AUDIT_COST_BITS - psi.rank))
            pick = remote if len(remote) <= budget else sorted(
                int(d) for d in rng.choice(remote, size=budget, replace=False))
            v = random_local_operator(pick, rng)
        elif set(v.targets) & set(op.targets):
            raise OverlapError("v must act on detectors outside op.targets")
        both = apply_local(compose_disjoint(op, v), psi)
        only_v = apply_local(v, psi)
        local_props = [random_proposition(local, rng) for _ in range(trials)]
        two_sided = max(
            _side_delta(both, only_v, remote, remote_props),
            _side_delta(both, after, local, local_props),
        )
    return AuditReport(trials=int(trials), single_delta=single, two_sided_delta=two_sided,
                       v_targets=tuple(v.targets) if v is not None else ())
