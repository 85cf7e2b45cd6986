"""Maximal and partial questions: Born-rule probabilities of signal/void
conjunctions over any subset of detectors."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import DetectorError, DomainError, NormalizationError
from .register import NORM_TOL, BasisOutcome, Labstate, check_detector
from .signal_ops import apply_projector

_TOKEN = re.compile(r"^(\d+)([+\-−])$")


@dataclass(frozen=True)
class Proposition:
    """Conjunction of per-detector assertions ``(detector, fired)``.

    Clauses keep their order. The same detector may appear twice; asserting
    both outcomes on one detector makes a contradictory (trivial) question
    whose probability is exactly zero.
    """

    clauses: tuple = ()

    def __post_init__(self):
        raw = self.clauses.items() if isinstance(self.clauses, Mapping) else self.clauses
        clauses = tuple((int(d), bool(f)) for d, f in raw)
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def parse(cls, text: str) -> "Proposition":
        """Parse ``"1+ 2- 4+"`` (``+`` fired, ``-`` void); blank text is the empty question."""
        clauses = []
        for tok in text.replace(",", " ").split():
            m = _TOKEN.match(tok)
            if m is None:
                raise DomainError(f"bad proposition clause {tok!r}; expected e.g. '3+' or '2-'")
            clauses.append((int(m.group(1)), m.group(2) == "+"))
        return cls(tuple(clauses))

    @property
    def detectors(self) -> tuple[int, ...]:
        return tuple(dict.fromkeys(d for d, _ in self.clauses))

    @property
    def contradictory(self) -> bool:
        seen: dict[int, bool] = {}
        for d, f in self.clauses:
            if seen.setdefault(d, f) != f:
                return True
        return False

    def canonical(self) -> dict[int, bool]:
        """Detector -> outcome, one entry per detector. Raises for contradictions."""
        if self.contradictory:
            raise DomainError(f"{self} asserts both outcomes on one detector")
        return dict(self.clauses)

    def masks(self) -> tuple[int, int]:
        """(bit mask, required bit values) of a non-contradictory proposition."""
        mask = value = 0
        for d, f in self.canonical().items():
            mask |= 1 << (d - 1)
            if f:
                value |= 1 << (d - 1)
        return mask, value

    def __and__(self, other: "Proposition") -> "Proposition":
        return Proposition(self.clauses + other.clauses)

    def __str__(self) -> str:
        return " ".join(f"{d}{'+' if f else '-'}" for d, f in self.clauses)


def require_normalized(psi: Labstate) -> None:
    n2 = psi.norm2()
    if abs(n2 - 1.0) > NORM_TOL:
        raise NormalizationError(f"labstate is not normalized (norm^2 = {n2!r})")


def project(psi: Labstate, q: Proposition) -> Labstate:
    """Apply each clause's projector in order; the probability is the squared norm."""
    for d, f in q.clauses:
        psi = apply_projector(d, f, psi)
    return psi


def partial_probability(psi: Labstate, q: Proposition) -> float:
    """(psi| product of projectors named by q |psi) for a normalized psi."""
    require_normalized(psi)
    for d, _ in q.clauses:
        check_detector(d, psi.rank)
    if not q.clauses:
        return 1.0
    if q.contradictory:
        return 0.0
    mask, value = q.masks()
    return kernels.masked_norm2(psi.amplitudes, mask, value)


def maximal_probabilities(psi: Labstate) -> np.ndarray:
    """|psi_k|^2 for every basis index k."""
    require_normalized(psi)
    return kernels.probabilities(psi.amplitudes)


def maximal_distribution(psi: Labstate) -> dict[BasisOutcome, float]:
    probs = maximal_probabilities(psi)
    return {BasisOutcome.from_index(psi.rank, k): float(p) for k, p in enumerate(probs)}


def _check_subset(detectors: Sequence[int], rank: int) -> list[int]:
    dets = [check_detector(d, rank) for d in detectors]
    if not dets:
        raise DetectorError("detector subset must be nonempty")
    if len(set(dets)) != len(dets):
        raise DetectorError(f"detector subset has repeats: {dets}")
    return dets


def subset_probabilities(psi: Labstate, detectors: Sequence[int]) -> np.ndarray:
    """Joint distribution over ``detectors``; pattern bit m is detector ``detectors[m]``."""
    require_normalized(psi)
    dets = _check_subset(detectors, psi.rank)
    return kernels.subset_probabilities(psi.amplitudes, [d - 1 for d in dets])


def subset_distribution(psi: Labstate, detectors: Sequence[int]) -> dict[tuple[bool, ...], float]:
    """Map each fired/void pattern over ``detectors`` (in the given order) to its probability."""
    probs = subset_probabilities(psi, detectors)
    k = len(detectors)
    return {tuple(bool(pat >> m & 1) for m in range(k)): float(p) for pat, p in enumerate(probs)}


def pattern_proposition(detectors: Iterable[int], pattern: Iterable[bool]) -> Proposition:
    return Proposition(tuple(zip(detectors, pattern)))
