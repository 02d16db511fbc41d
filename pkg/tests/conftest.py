"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from povmcoarse import validate_measurement


def ket(*amplitudes):
    return np.asarray(amplitudes, dtype=complex)


def proj(vec):
    vec = np.asarray(vec, dtype=complex)
    return np.outer(vec, vec.conj())


KET_PLUS = ket(1, 1) / math.sqrt(2)
KET_MINUS = ket(1, -1) / math.sqrt(2)


@pytest.fixture
def z_measurement():
    """Computational-basis measurement on a qubit, projectors as Kraus ops."""
    p0, p1 = proj(ket(1, 0)), proj(ket(0, 1))
    return validate_measurement([p0, p1], [[p0], [p1]])


@pytest.fixture
def x_measurement():
    p_plus, p_minus = proj(KET_PLUS), proj(KET_MINUS)
    return validate_measurement([p_plus, p_minus], [[p_plus], [p_minus]])


@pytest.fixture
def halves_measurement():
    """The non-projective two-outcome example {|0><0|/2, |0><0|/2 + |1><1|}."""
    return validate_measurement([0.5 * proj(ket(1, 0)), 0.5 * proj(ket(1, 0)) + proj(ket(0, 1))])


def exhaustive_partition_exists(coarse, fine, tol=1e-8) -> bool:
    """Independent oracle: search all assignments of fine outcomes to coarse ones.

    Checks every function {fine outcomes} -> {coarse outcomes} for whether the
    grouped sums reproduce the coarse elements. Exponential, so only usable for
    small outcome counts; deliberately does not share code with the library's
    greedy fast path.
    """
    n = fine.n_outcomes
    m = coarse.n_outcomes
    fine_stack = np.stack(fine.elements)
    coarse_stack = np.stack(coarse.elements)
    for assignment in itertools.product(range(m), repeat=n):
        choice = np.asarray(assignment)
        ok = True
        for j in range(m):
            total = fine_stack[choice == j].sum(axis=0)
            if np.linalg.norm(total - coarse_stack[j]) > tol:
                ok = False
                break
        if ok:
            return True
    return False


def classical_two_outcome_feasible(p1, v1, p2, v2, vtot=2.0, tol=1e-12) -> bool:
    """Closed-form oracle for the two-outcome classical processing relation.

    With source ((p1, 1-p1), (v1, vtot-v1)) and target ((p2, 1-p2),
    (v2, vtot-v2)), eliminating the stochastic matrix from the probability and
    volume equations leaves a 2x2 linear system for the first row of P; the
    relation is feasible iff that row lands in [0, 1]^2. Derived by hand for
    v-volumes (v1, vtot-v1) generic: solving
        P11*p1 + P12*(1-p1) = p2
        P11*v1 + P12*(vtot-v1) = v2
    and requiring 0 <= P11, P12 <= 1 (the second row is the complement).
    """
    a = np.array([[p1, 1.0 - p1], [v1, vtot - v1]])
    det = float(np.linalg.det(a))
    if abs(det) < 1e-14:
        raise ValueError("degenerate source, oracle not applicable")
    row = np.linalg.solve(a, np.array([p2, v2]))
    return bool(np.all(row >= -tol) and np.all(row <= 1.0 + tol))
