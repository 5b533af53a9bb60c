"""Deterministic random inputs for verification sweeps.

Entries are integers in [-5, 5] (zero covectors and zero perturbations
are redrawn) so the engine's integer fast path applies.  Case streams
are seeded per case key, making reports reproducible row by row.
"""

from __future__ import annotations

import random

from .exactalg import Covector, PerturbH


def case_rng(seed: int, *key) -> random.Random:
    return random.Random(":".join(str(part) for part in (seed,) + key))


def perturbation(rng: random.Random, n: int, diagonal: bool = False) -> PerturbH:
    while True:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = rng.randint(-5, 5)
            if not diagonal:
                for j in range(i + 1, n):
                    v = rng.randint(-5, 5)
                    rows[i][j] = v
                    rows[j][i] = v
        h = PerturbH.from_rows(rows)
        if not h.is_zero():
            return h


def nondiagonal_perturbation(rng: random.Random, n: int) -> PerturbH:
    while True:
        h = perturbation(rng, n)
        if not h.is_diagonal():
            return h


def covector(rng: random.Random, n: int) -> Covector:
    while True:
        comps = [rng.randint(-5, 5) for _ in range(n)]
        if any(comps):
            return Covector.from_components(comps)
