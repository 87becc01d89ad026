"""Shared corpus builders; everything is seed-pinned for reproducibility."""

import random

import pytest

from deds.graph import Digraph, Tournament


def random_digraph(n_max: int, m_max: int, seed: int) -> Digraph:
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    rng.shuffle(pairs)
    m = rng.randint(0, min(m_max, len(pairs)))
    return Digraph(n, sorted(pairs[:m]))


def random_tournament(n: int, seed: int) -> Tournament:
    rng = random.Random(seed)
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            arcs.append((i, j) if rng.random() < 0.5 else (j, i))
    return Tournament(n, arcs)


@pytest.fixture(scope="session")
def small_corpus():
    """60 digraphs with n <= 7, m <= 14: the per-module cross-check corpus."""
    return [random_digraph(7, 14, 31_000 + i) for i in range(60)]
