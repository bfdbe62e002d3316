from __future__ import annotations

import numpy as np
import pytest

from entvol import errors
from entvol.fourqubit import (
    can_convert,
    eta_solve,
    povm_witness,
)

from _helpers import (
    PAIR_GENERATORS,
    Z3,
    fixed_seed_params,
    form,
)

SEED = fixed_seed_params()


def F(rows):
    return form(SEED, rows)


def test_identity_witness_is_trivial():
    a = F([[0.15, 0.2, 0.1], [0.3, 0, 0], [0.1, 0, 0], Z3])
    wit = povm_witness(a, a)
    assert wit.row == "identity"
    assert len(wit.outcomes) == 1
    assert wit.probabilities[0] == pytest.approx(1.0, abs=1e-12)
    op = wit.outcomes[0][0]
    assert np.allclose(op, np.eye(2))


def test_not_convertible_raises():
    a = F([[0, 0, 0.2], Z3, Z3, Z3])
    b = F([[0, 0, 0.1], Z3, Z3, Z3])
    with pytest.raises(errors.NotConvertible):
        povm_witness(a, b)


def test_single_party_probabilities_follow_eta():
    gam = np.array([0.20, 0.10, -0.12])
    zet = np.array([0.25, 0.2, -0.3])
    a = F([gam, Z3, Z3, Z3])
    b = F([zet, Z3, Z3, Z3])
    wit = povm_witness(a, b)
    r = gam / zet
    p0 = 0.25 * (1 + r.sum())
    by_pattern = dict(zip(wit.pauli_patterns, wit.probabilities))
    assert by_pattern[0] == pytest.approx(p0, abs=1e-12)
    for k, (i, j) in enumerate([(1, 2), (0, 2), (0, 1)], start=1):
        expected = 0.25 * (1 + r[k - 1] - r[i] - r[j])
        assert by_pattern[k] == pytest.approx(expected, abs=1e-12)


def test_degenerate_rectangle_step_single_outcome():
    # one coordinate already in place: that step contributes no second outcome
    a = F([[0, 0.3, 0], [0.1, 0, 0], Z3, Z3])
    b = F([[0, 0.3, 0], [0.25, 0, 0], Z3, Z3])
    wit = povm_witness(a, b)
    assert wit.row == "axis_rectangle"
    assert len(wit.outcomes) == 2  # only the second party branches


def test_witness_battery_random_pairs():
    rng = np.random.default_rng(99)
    rows = ["transverse_scaling", "axis_rectangle", "single_party_general",
            "single_party_plane", "single_party_axis", "axis_to_general",
            "seed_to_general"]
    for name in rows:
        gen = PAIR_GENERATORS[name]
        for _ in range(4):
            a, b = gen(rng, SEED)
            assert can_convert(a, b), name
            wit = povm_witness(a, b)
            assert wit.completeness_residual <= 1e-12, name
            assert wit.eta_residual <= 1e-10, name
            assert wit.outcome_mismatch <= 1e-9, name
            assert sum(wit.probabilities) == pytest.approx(1.0, abs=1e-10)
            assert all(p >= -1e-12 for p in wit.probabilities)


def test_witness_axis_then_transverse_structure():
    a = F([[0.2, 0, 0], Z3, Z3, Z3])
    b = F([[0.3, 0, 0], [0, 0.1, 0.15], Z3, Z3])
    wit = povm_witness(a, b)
    assert wit.row == "axis_then_transverse"
    assert len(wit.outcomes) == 4  # two two-outcome steps composed


def test_eta_completion_used_by_witness_is_feasible():
    gam = np.array([0.0, 0.1, 0.1])
    zet = np.array([0.0, 0.22, 0.19])
    eta = eta_solve(gam, zet)
    assert eta is not None
    # completion must give a valid probability vector
    from entvol.fourqubit import _eta_to_probs
    assert np.all(_eta_to_probs(eta) >= -1e-12)
