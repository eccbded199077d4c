"""Shared random-instance generators for the test suite.

All tests draw from np.random.default_rng with explicit seeds so every run
sees the same instances.
"""

import numpy as np

from hardyops import BoundaryFunction, DEFAULT_GRID, blaschke_make


def random_zeros(rng, count, radius=0.9):
    """Points distributed over the disc of the given radius."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    theta = rng.uniform(0.0, 2.0 * np.pi, count)
    return r * np.exp(1j * theta)


def random_blaschke(rng, max_degree=5, radius=0.9):
    degree = int(rng.integers(1, max_degree + 1))
    phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    return blaschke_make(random_zeros(rng, degree, radius), phase)


def random_poly(rng, degree):
    """Ascending complex coefficients with a nonzero leading term."""
    coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    if abs(coeffs[-1]) < 1e-3:
        coeffs[-1] += 1.0
    return coeffs


def random_analytic(rng, grid=DEFAULT_GRID, degree=12):
    return BoundaryFunction.from_poly(grid, random_poly(rng, degree))
