"""Shared draw helpers; every test seed is fixed for reproducibility."""

from __future__ import annotations

import random

import pytest

from zetahessian.sampling import covector, nondiagonal_perturbation, perturbation


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240811)


def draw_h(rng, n, diagonal=False):
    return perturbation(rng, n, diagonal=diagonal)


def draw_h_nondiagonal(rng, n):
    return nondiagonal_perturbation(rng, n)


def draw_xi(rng, n):
    return covector(rng, n)
