"""Exit criteria, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (visible with ``-s``);
``python -m tests.test_acceptance`` runs them all outside pytest.
"""
import math
import subprocess
import sys
import time

import numpy as np

from qdnsim import kernels
from qdnsim.epr import (
    joint_rotation,
    p_plus_plus,
    prepare_singlet,
    wigner_inequality,
)
from qdnsim.localops import (
    apply_local,
    compose_disjoint,
    random_local_operator,
    random_proposition,
)
from qdnsim.oracle import dense_embed, dense_proposition, dense_signal_op
from qdnsim.questions import (
    Proposition,
    maximal_probabilities,
    partial_probability,
    subset_probabilities,
)
from qdnsim.register import random_labstate
from qdnsim.signal_ops import OpKind, SignalOpKind, algebra_check, apply_projector
from qdnsim.sterngerlach import SGCoefficients, sg_rotation

TOL = 1e-12


def report(name, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


def _max_delta(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0))


def test_algebra_suite():
    start = time.perf_counter()
    worst = 0.0
    for rank in range(1, 7):
        worst = max(worst, algebra_check(rank, 100, seed=rank).max_residual)
    elapsed = time.perf_counter() - start
    report("algebra suite (ranks 1-6, 100 states)", worst <= TOL and elapsed < 5.0,
           f"max residual {worst:.3e}, {elapsed:.2f} s")


def test_born_rule():
    rng = np.random.default_rng(101)
    exact = True
    for _ in range(100):
        psi = random_labstate(2, rng)
        c = psi.amplitudes
        mod2 = c.real * c.real + c.imag * c.imag
        exact &= np.array_equal(maximal_probabilities(psi), mod2)
        for k, (d1, d2) in enumerate([(False, False), (True, False), (False, True), (True, True)]):
            exact &= partial_probability(psi, Proposition({1: d1, 2: d2})) == mod2[k]
        exact &= partial_probability(psi, Proposition({1: True})) == mod2[1] + mod2[3]
    report("Born rule (rank 2, 100 coefficient sets)", bool(exact), "exact equality")


def test_einstein_locality():
    rng = np.random.default_rng(202)
    start = time.perf_counter()
    single = two_sided = 0.0
    for rank in range(3, 11):
        for _ in range(100):
            psi = random_labstate(rank, rng)
            perm = [int(d) for d in rng.permutation(np.arange(1, rank + 1))]
            k = int(rng.integers(1, rank))
            local, remote = sorted(perm[:k]), sorted(perm[k:])
            u = random_local_operator(local, rng)
            after = apply_local(u, psi)
            single = max(single, _max_delta(subset_probabilities(after, remote),
                                            subset_probabilities(psi, remote)))
            for _ in range(5):
                q = random_proposition(remote, rng)
                single = max(single, abs(partial_probability(after, q) - partial_probability(psi, q)))

            # simultaneous U (local) and V (remote): each side sees only its own operator
            v = random_local_operator(remote, rng)
            v2 = random_local_operator(remote, rng)
            u2 = random_local_operator(local, rng)
            both = apply_local(compose_disjoint(u, v), psi)
            # alternatives applied one operator at a time (equal to the composed
            # form, see test_localops) to skip building two more 2**r matrices
            other_v = apply_local(v2, after)
            other_u = apply_local(u2, apply_local(v, psi))
            two_sided = max(
                two_sided,
                _max_delta(subset_probabilities(both, local), subset_probabilities(other_v, local)),
                _max_delta(subset_probabilities(both, remote), subset_probabilities(other_u, remote)),
            )
    elapsed = time.perf_counter() - start
    ok = single <= TOL and two_sided <= TOL and elapsed < 30.0
    report("Einstein locality (ranks 3-10, 100 trials)", ok,
           f"single-op delta {single:.3e}, two-sided delta {two_sided:.3e}, {elapsed:.2f} s")


def test_epr_closed_form():
    rng = np.random.default_rng(303)
    agree = 0.0
    for _ in range(1000):
        a, b = SGCoefficients.random(rng), SGCoefficients.random(rng)
        sim, closed = p_plus_plus(a, b)
        agree = max(agree, abs(sim - closed))
    anti = all(p_plus_plus(a, a) == (0.0, 0.0)
               for a in (SGCoefficients.random(rng) for _ in range(100)))
    completeness = 0.0
    for _ in range(100):
        out = joint_rotation(prepare_singlet(), SGCoefficients.random(rng), SGCoefficients.random(rng))
        total = sum(partial_probability(out, Proposition({i: True, j: True}))
                    for i in (1, 2) for j in (3, 4))
        completeness = max(completeness, abs(total - 1))
    ok = agree <= TOL and anti and completeness <= TOL
    report("EPR closed form", ok, f"max |sim - closed| {agree:.3e}, P(+a,+a)=0 exactly: {anti}, "
           f"joint sum residual {completeness:.3e}")


def test_wigner_violation():
    row = wigner_inequality(0.0, math.pi / 3, 2 * math.pi / 3)
    values_ok = (abs(row.p_ab - 0.125) <= TOL and abs(row.p_bc - 0.125) <= TOL
                 and abs(row.p_ac - 0.375) <= TOL)
    boundary = wigner_inequality(0.0, math.pi / 2, math.pi)
    ok = (values_ok and row.violated and abs(row.lhs - 0.25) <= TOL
          and abs(boundary.lhs - boundary.rhs) <= TOL and not boundary.violated)
    report("Wigner violation", ok,
           f"(0, pi/3, 2pi/3): lhs {row.lhs:.15g} < rhs {row.rhs:.15g}; "
           f"(0, pi/2, pi): lhs {boundary.lhs:.15g} vs rhs {boundary.rhs:.15g}, "
           f"violated={boundary.violated}")


def test_oracle_equivalence():
    rng = np.random.default_rng(404)
    worst = 0.0
    n = 100
    for rank in range(1, 7):
        dense_ops = {(kind, i): dense_signal_op(SignalOpKind(kind, i), rank)
                     for kind in OpKind for i in range(1, rank + 1)}
        for _ in range(n):
            psi = random_labstate(rank, rng)
            for (kind, i), dense in dense_ops.items():
                worst = max(worst, _max_delta(SignalOpKind(kind, i).apply(psi).amplitudes,
                                              dense.apply(psi).amplitudes))
            q = random_proposition(range(1, rank + 1), rng)
            worst = max(worst, abs(partial_probability(psi, q)
                                   - dense_proposition(q.clauses, rank).expectation(psi).real))
            projected = psi
            for d, f in q.clauses:
                projected = apply_projector(d, f, projected)
            worst = max(worst, _max_delta(projected.amplitudes,
                                          dense_proposition(q.clauses, rank).apply(psi).amplitudes))
            k = int(rng.integers(1, rank + 1))
            targets = [int(t) for t in rng.permutation(np.arange(1, rank + 1))[:k]]
            u = random_local_operator(targets, rng)
            worst = max(worst, _max_delta(apply_local(u, psi).amplitudes,
                                          dense_embed(u, rank).apply(psi).amplitudes))
            if rank >= 2:
                pair = [int(t) for t in rng.permutation(np.arange(1, rank + 1))[:2]]
                sg = sg_rotation(tuple(pair), SGCoefficients.random(rng))
                worst = max(worst, _max_delta(apply_local(sg, psi).amplitudes,
                                              dense_embed(sg, rank).apply(psi).amplitudes))
            if rank >= 4:
                a, b = SGCoefficients.random(rng), SGCoefficients.random(rng)
                dense = dense_embed(sg_rotation((1, 2), a), rank) @ dense_embed(sg_rotation((3, 4), b), rank)
                worst = max(worst, _max_delta(joint_rotation(psi, a, b).amplitudes,
                                              dense.apply(psi).amplitudes))
    report("oracle equivalence (rank <= 6, 100 inputs per op)", worst <= TOL,
           f"max residual {worst:.3e}")


def _best_time(fn, repeat=3):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def test_performance():
    rng = np.random.default_rng(505)
    psi = random_labstate(20, rng)
    op = random_local_operator((7,), rng)
    t_proj = _best_time(lambda: apply_projector(11, True, psi))
    t_local = _best_time(lambda: apply_local(op, psi))
    t_subset = _best_time(lambda: subset_probabilities(psi, [2, 9, 14, 20]))
    ok = t_proj < 0.1 and t_local < 0.1 and t_subset < 1.0
    report(f"performance at rank 20 ({kernels.BACKEND} kernels)", ok,
           f"projector {t_proj * 1e3:.1f} ms, local op {t_local * 1e3:.1f} ms, "
           f"4-detector distribution {t_subset * 1e3:.1f} ms")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "qdnsim", *argv], capture_output=True)


def test_cli_determinism():
    runs = [
        ("algebra-check", "--rank", "3", "--trials", "100", "--seed", "7"),
        ("locality-audit", "--rank", "8", "--targets", "1,2", "--trials", "50", "--seed", "5"),
        ("epr-scan", "--triple", "0,1.0471975511965976,2.0943951023931953"),
    ]
    identical = True
    codes = []
    for argv in runs:
        first, second = _cli(*argv), _cli(*argv)
        identical &= first.stdout == second.stdout and first.stderr == second.stderr
        codes.append(first.returncode)
    violated = _cli(*runs[2]).stdout.decode().splitlines()[1].endswith(",1")
    missing = _cli("question", "--state", "missing.json", "1+").returncode
    usage = _cli("algebra-check").returncode
    ok = identical and codes == [0, 0, 0] and violated and missing == 2 and usage == 2
    report("CLI determinism and exit codes", ok,
           f"byte-identical={identical}, exit codes {codes}, missing state -> {missing}, "
           f"usage error -> {usage}")


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
