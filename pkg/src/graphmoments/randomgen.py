"""Seeded generators of random rational test objects (targets, graphons,
patterns, measures). Used by the verify suites and the test corpus; all
randomness flows through a caller-supplied random.Random."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from .graphs import Multigraph
from .moments import FiniteSupportMeasure
from .targets import RandomWeightedGraph, StepGraphon, WeightedGraph


def random_fraction(rng: random.Random, lo=-2, hi=2, max_den=6) -> Fraction:
    den = rng.randint(1, max_den)
    num = rng.randint(int(lo * den), int(hi * den))
    return Fraction(num, den)


def positive_rational(rng: random.Random, max_num=5, max_den=5) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def simplex_rationals(rng: random.Random, count: int, max_part=6) -> List[Fraction]:
    """`count` positive rationals summing to exactly 1."""
    parts = [rng.randint(1, max_part) for _ in range(count)]
    total = sum(parts)
    return [Fraction(p, total) for p in parts]


def random_weighted_graph(rng: random.Random, max_q=3, signed=True,
                          zero_loops=False) -> WeightedGraph:
    q = rng.randint(1, max_q)
    alpha = [positive_rational(rng) for _ in range(q)]
    beta = [[Fraction(0)] * q for _ in range(q)]
    lo = -2 if signed else 0
    for i in range(q):
        for j in range(i, q):
            if i == j and zero_loops:
                continue
            beta[i][j] = beta[j][i] = random_fraction(rng, lo, 2)
    return WeightedGraph(alpha, beta)


def random_simple_target(rng: random.Random, max_q=3) -> WeightedGraph:
    """Random 0/1-edge target with unit node weights and zero diagonal."""
    q = rng.randint(2, max_q)
    beta = [[Fraction(0)] * q for _ in range(q)]
    for i in range(q):
        for j in range(i + 1, q):
            beta[i][j] = beta[j][i] = Fraction(rng.randint(0, 1))
    return WeightedGraph([Fraction(1)] * q, beta)


def _distinct_values(rng: random.Random, count: int) -> List[Fraction]:
    pool = [Fraction(n, d) for d in (1, 2, 3, 4) for n in range(-2 * d, 2 * d + 1)]
    return rng.sample(sorted(set(pool)), count)


def random_rw(rng: random.Random, max_q=3, max_support=3,
              q: Optional[int] = None) -> RandomWeightedGraph:
    q = rng.randint(1, max_q) if q is None else q
    alpha = [positive_rational(rng) for _ in range(q)]
    dist: List[List[Optional[tuple]]] = [[None] * q for _ in range(q)]
    for i in range(q):
        for j in range(i, q):
            size = rng.randint(1, max_support)
            values = _distinct_values(rng, size)
            probs = simplex_rationals(rng, size)
            entry = tuple(zip(values, probs))
            dist[i][j] = dist[j][i] = entry
    return RandomWeightedGraph(alpha, dist)


def random_step_graphon(rng: random.Random, steps: int, lo=-1, hi=1,
                        max_den=6) -> StepGraphon:
    measures = simplex_rationals(rng, steps)
    values = [[Fraction(0)] * steps for _ in range(steps)]
    for i in range(steps):
        for j in range(i, steps):
            values[i][j] = values[j][i] = random_fraction(rng, lo, hi, max_den)
    bound = max((abs(x) for row in values for x in row), default=Fraction(0))
    return StepGraphon(measures, values, d=max(bound, Fraction(1)))


def random_multigraph(rng: random.Random, max_nodes=4, max_mult=2,
                      k: int = 0) -> Multigraph:
    n = rng.randint(max(1, k), max_nodes)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            m = rng.randint(0, max_mult)
            if m:
                edges.append((u, v, m))
    return Multigraph(n, k, edges)


def random_measure(rng: random.Random, max_atoms=4) -> FiniteSupportMeasure:
    size = rng.randint(1, max_atoms)
    atoms = _distinct_values(rng, size)
    weights = simplex_rationals(rng, size)
    return FiniteSupportMeasure(atoms, weights)
