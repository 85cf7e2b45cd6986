"""Signal creation/annihilation operators and elementary projectors.

Operators on distinct detectors commute (no sign strings), so every
operator here acts on a single bit of the basis index. Results are linear
images, not measurements: a dropped branch leaves an unnormalized (possibly
zero) labstate.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .errors import RankError
from .register import Labstate, check_detector, check_rank, make_void

ALGEBRA_TOL = 1e-12
ORACLE_MAX_RANK = 6


class OpKind(enum.Enum):
    CREATE = "create"
    ANNIHILATE = "annihilate"
    PROJ_FIRED = "proj_fired"
    PROJ_VOID = "proj_void"


@dataclass(frozen=True)
class SignalOpKind:
    kind: OpKind
    detector: int

    def apply(self, psi: Labstate) -> Labstate:
        if self.kind is OpKind.CREATE:
            return apply_create(self.detector, psi)
        if self.kind is OpKind.ANNIHILATE:
            return apply_annihilate(self.detector, psi)
        return apply_projector(self.detector, self.kind is OpKind.PROJ_FIRED, psi)


def apply_create(i: int, psi: Labstate) -> Labstate:
    """A_i^+ : move every amplitude with detector ``i`` void to the fired slot."""
    check_detector(i, psi.rank)
    return Labstate(psi.rank, kernels.raise_bit(psi.amplitudes, i - 1))


def apply_annihilate(i: int, psi: Labstate) -> Labstate:
    check_detector(i, psi.rank)
    return Labstate(psi.rank, kernels.lower_bit(psi.amplitudes, i - 1))


def apply_projector(i: int, fired: bool, psi: Labstate) -> Labstate:
    """P_i (``fired=True``) or its complement (``fired=False``)."""
    check_detector(i, psi.rank)
    return Labstate(psi.rank, kernels.mask_bit(psi.amplitudes, i - 1, bool(fired)))


# Batched single-detector actions on (n_states, 2**rank) arrays, 1-based i.
def _c(x, i):
    return kernels.raise_bit(x, i - 1)


def _a(x, i):
    return kernels.lower_bit(x, i - 1)


def _p(x, i):
    return kernels.mask_bit(x, i - 1, True)


def _pb(x, i):
    return kernels.mask_bit(x, i - 1, False)


def _res(lhs: np.ndarray, rhs) -> float:
    return float(np.max(np.abs(lhs - rhs), initial=0.0))


# name -> residual of the relation evaluated on states x at detector i
_SINGLE: dict[str, Callable[[np.ndarray, int], float]] = {
    # quadratic
    "{A_i,A_i}=0": lambda x, i: _res(2 * _a(_a(x, i), i), 0),
    "{A+_i,A+_i}=0": lambda x, i: _res(2 * _c(_c(x, i), i), 0),
    "{A_i,A+_i}=I": lambda x, i: _res(_a(_c(x, i), i) + _c(_a(x, i), i), x),
    "P_i=A+_iA_i": lambda x, i: _res(_p(x, i), _c(_a(x, i), i)),
    "Pbar_i=A_iA+_i": lambda x, i: _res(_pb(x, i), _a(_c(x, i), i)),
    "P_i+Pbar_i=I": lambda x, i: _res(_p(x, i) + _pb(x, i), x),
    "(0|P_i=0": lambda x, i: _res(_p(x, i)[:, 0], 0),
    # cubic
    "P_iA_i=0": lambda x, i: _res(_p(_a(x, i), i), 0),
    "A+_iP_i=0": lambda x, i: _res(_c(_p(x, i), i), 0),
    "Pbar_iA+_i=0": lambda x, i: _res(_pb(_c(x, i), i), 0),
    "A_iPbar_i=0": lambda x, i: _res(_a(_pb(x, i), i), 0),
    "P_iA+_i=A+_i": lambda x, i: _res(_p(_c(x, i), i), _c(x, i)),
    "A+_iPbar_i=A+_i": lambda x, i: _res(_c(_pb(x, i), i), _c(x, i)),
    "A_iP_i=A_i": lambda x, i: _res(_a(_p(x, i), i), _a(x, i)),
    "Pbar_iA_i=A_i": lambda x, i: _res(_pb(_a(x, i), i), _a(x, i)),
    # quartic, same index
    "P_iP_i=P_i": lambda x, i: _res(_p(_p(x, i), i), _p(x, i)),
    "Pbar_iPbar_i=Pbar_i": lambda x, i: _res(_pb(_pb(x, i), i), _pb(x, i)),
    "P_iPbar_i=0": lambda x, i: _res(_p(_pb(x, i), i), 0),
    "Pbar_iP_i=0": lambda x, i: _res(_pb(_p(x, i), i), 0),
}


def _commutator(f, g):
    return lambda x, i, j: _res(f(g(x, j), i), g(f(x, i), j))


_PAIR: dict[str, Callable[[np.ndarray, int, int], float]] = {
    "[A_i,A_j]=0": _commutator(_a, _a),
    "[A_i,A+_j]=0": _commutator(_a, _c),
    "[A+_i,A+_j]=0": _commutator(_c, _c),
    "[P_i,P_j]=0": _commutator(_p, _p),
    "[P_i,Pbar_j]=0": _commutator(_p, _pb),
    "[Pbar_i,Pbar_j]=0": _commutator(_pb, _pb),
}

VOID_RELATION = "P_i|0)=0"

RELATIONS = (VOID_RELATION, *_SINGLE, *_PAIR)


@dataclass
class AlgebraReport:
    rank: int
    trials: int
    seed: int | None
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def passed(self, tol: float = ALGEBRA_TOL) -> bool:
        return self.max_residual <= tol

    def to_dict(self) -> dict:
        return dict(self.residuals)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def random_states(rank: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` normalized complex Gaussian states stacked as rows."""
    dim = 1 << rank
    x = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def algebra_check(rank: int, trials: int, seed=None, *, states: np.ndarray | None = None,
                  oracle: bool = True) -> AlgebraReport:
    """Evaluate every signal-algebra relation on random states.

    The second same-index quadratic relation is taken as {A_i, A_i^+} = I.
    Pair relations are reported as 0 at rank 1, where no pair exists. With
    ``oracle=True`` the sparse actions are also compared to the dense
    Kronecker matrices (``oracle:*`` entries).
    """
    rank = check_rank(rank)
    if rank > ORACLE_MAX_RANK:
        raise RankError(f"algebra_check supports rank <= {ORACLE_MAX_RANK}, got {rank}")
    if states is None:
        if isinstance(trials, bool) or int(trials) != trials or trials < 1:
            raise ValueError(f"trials must be a positive integer, got {trials!r}")
        states = random_states(rank, int(trials), np.random.default_rng(seed))
    else:
        states = np.atleast_2d(np.asarray(states, dtype=np.complex128))
        trials = states.shape[0]

    res: dict[str, float] = {}
    void = make_void(rank).amplitudes[None, :]
    res[VOID_RELATION] = max(_res(_p(void, i), 0) for i in range(1, rank + 1))
    for name, rel in _SINGLE.items():
        res[name] = max(rel(states, i) for i in range(1, rank + 1))
    for name, rel in _PAIR.items():
        res[name] = max(
            (rel(states, i, j) for i in range(1, rank + 1) for j in range(1, rank + 1) if i != j),
            default=0.0,
        )

    if oracle:
        from .oracle import dense_signal_op

        actions = {OpKind.CREATE: _c, OpKind.ANNIHILATE: _a, OpKind.PROJ_FIRED: _p,
                   OpKind.PROJ_VOID: _pb}
        for kind, fn in actions.items():
            worst = 0.0
            for i in range(1, rank + 1):
                dense = dense_signal_op(SignalOpKind(kind, i), rank).matrix
                worst = max(worst, _res(fn(states, i), states @ dense.T))
            res[f"oracle:{kind.value}"] = worst
    return AlgebraReport(rank=rank, trials=int(trials), seed=seed, residuals=res)
