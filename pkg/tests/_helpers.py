"""Random-state and random-pair generators shared by the four-qubit tests."""

from __future__ import annotations

import numpy as np

from entvol.fourqubit import (
    FourQubitForm,
    SeedParams,
    _eta_to_probs,
    _probs_to_eta,
    random_seed_params,
)

Z3 = np.zeros(3)


def fixed_seed_params() -> SeedParams:
    return random_seed_params(np.random.default_rng(2024))


def form(seed_params: SeedParams, rows) -> FourQubitForm:
    return FourQubitForm(seed_params, np.array(rows, dtype=float))


def random_eta(rng: np.random.Generator, min_abs: float = 0.05) -> np.ndarray:
    """A character vector from a random probability distribution, bounded away
    from the coordinate planes so that gamma = eta . zeta stays generic."""
    while True:
        eta = _probs_to_eta(rng.dirichlet(np.ones(4)))
        if np.min(np.abs(eta)) >= min_abs:
            return eta


def random_ia_pair(rng, seed_params):
    """Initial/final pair convertible through transverse scaling (same axes)."""
    g_w = rng.uniform(0.0, 0.3)
    a2 = rng.uniform(0.05, 0.4)
    a3 = rng.uniform(0.0, 0.4)
    t_max = 0.95 * np.sqrt(0.45 ** 2 - g_w ** 2)
    t_f = rng.uniform(0.05, t_max)
    s = rng.uniform(0.05, 0.95)
    ang = rng.uniform(0, 2 * np.pi)
    direction = np.array([np.cos(ang), np.sin(ang)])
    gen_i = [g_w, *(s * t_f * direction)]
    gen_f = [g_w, *(t_f * direction)]
    rows_i = [gen_i, [a2, 0, 0], [a3, 0, 0], Z3]
    rows_f = [gen_f, [a2, 0, 0], [a3, 0, 0], Z3]
    return form(seed_params, rows_i), form(seed_params, rows_f)


def random_ii_pair(rng, seed_params):
    gA = rng.uniform(0.02, 0.4)
    gB = rng.uniform(0.02, 0.4)
    zA = rng.uniform(gA, 0.45)
    zB = rng.uniform(gB, 0.45)
    rows_i = [[0, gA, 0], [gB, 0, 0], Z3, Z3]
    rows_f = [[0, zA, 0], [zB, 0, 0], Z3, Z3]
    return form(seed_params, rows_i), form(seed_params, rows_f)


def random_iiia_pair(rng, seed_params):
    while True:
        zet = np.array([rng.uniform(0.05, 0.3), rng.uniform(0.05, 0.3),
                        rng.choice([-1, 1]) * rng.uniform(0.05, 0.3)])
        if np.linalg.norm(zet) <= 0.45:
            break
    eta = random_eta(rng)
    gam = eta * zet
    rows_i = [gam, Z3, Z3, Z3]
    rows_f = [zet, Z3, Z3, Z3]
    return form(seed_params, rows_i), form(seed_params, rows_f)


def random_iiib_pair(rng, seed_params):
    while True:
        g = np.array([0.0, rng.uniform(0.02, 0.35), rng.uniform(0.02, 0.35)])
        z = np.array([0.0, rng.uniform(g[1], 0.4), rng.uniform(g[2], 0.4)])
        if np.linalg.norm(z) <= 0.45:
            break
    return form(seed_params, [g, Z3, Z3, Z3]), form(seed_params, [z, Z3, Z3, Z3])


def random_iiic_pair(rng, seed_params):
    g = rng.uniform(0.02, 0.4)
    z = rng.uniform(g, 0.45)
    rows_i = [[0, 0, g], Z3, Z3, Z3]
    rows_f = [[0, 0, z], Z3, Z3, Z3]
    return form(seed_params, rows_i), form(seed_params, rows_f)


def random_axis_to_general_pair(rng, seed_params):
    """Fourth-row family: a single axis party opening into a general operator."""
    g = rng.uniform(0.02, 0.3)
    while True:
        zet = np.array([rng.uniform(g + 0.02, 0.42),
                        rng.choice([-1, 1]) * rng.uniform(0.03, 0.25),
                        rng.choice([-1, 1]) * rng.uniform(0.03, 0.25)])
        if np.linalg.norm(zet) <= 0.45:
            break
    return (form(seed_params, [[g, 0, 0], Z3, Z3, Z3]),
            form(seed_params, [zet, Z3, Z3, Z3]))


def random_seed_to_general_pair(rng, seed_params):
    while True:
        zet = rng.uniform(-0.3, 0.3, size=3)
        if 0.05 <= np.linalg.norm(zet) <= 0.45 and np.min(np.abs(zet)) > 0.02:
            break
    return (form(seed_params, [Z3, Z3, Z3, Z3]),
            form(seed_params, [zet, Z3, Z3, Z3]))


PAIR_GENERATORS = {
    "transverse_scaling": random_ia_pair,
    "axis_rectangle": random_ii_pair,
    "single_party_general": random_iiia_pair,
    "single_party_plane": random_iiib_pair,
    "single_party_axis": random_iiic_pair,
    "axis_to_general": random_axis_to_general_pair,
    "seed_to_general": random_seed_to_general_pair,
}
