"""Seeded random bundles that are compatible by construction.

On a 2-D fan every pair of flags splits simultaneously, so arbitrary nested
flags give valid bundles.  In higher dimension only split bundles and twists
of the tangent bundle are produced.
"""

from __future__ import annotations

import random
from typing import Sequence

from .exactlin import Subspace, rank
from .fan import Fan, hirzebruch, projective_space
from .klyachko import Filtration, ToricBundle

JUMP_RANGE = (-5, 5)
FANS = ("p2", "hirzebruch", "p3")


def _vector_pool(r: int) -> list[tuple[int, ...]]:
    # small entries keep the intersection lattice interesting without blowing up
    pool = []
    for i in range(r):
        pool.append(tuple(int(k == i) for k in range(r)))
    for i in range(r):
        for j in range(i + 1, r):
            pool.append(tuple(int(k in (i, j)) for k in range(r)))
            pool.append(tuple((k == i) - (k == j) for k in range(r)))
    if r == 3:
        pool.append((1, 1, 1))
    return pool


def random_flag(rng: random.Random, ray: int, r: int, jump_range=JUMP_RANGE) -> Filtration:
    pool = _vector_pool(r)
    basis: list[tuple[int, ...]] = []
    while len(basis) < r:
        v = rng.choice(pool)
        if rank(basis + [v], r) > len(basis):
            basis.append(v)
    n_steps = rng.randint(1, r)
    dims = [r] + sorted(rng.sample(range(1, r), n_steps - 1), reverse=True)
    lo, hi = jump_range
    throughs = sorted(rng.sample(range(lo, hi + 1), n_steps))
    steps = tuple((j, Subspace.span(basis[:k], r)) for j, k in zip(throughs, dims))
    return Filtration(ray, steps)


def random_flag_bundle(fan: Fan, rng: random.Random, max_rank: int = 3,
                       jump_range=JUMP_RANGE) -> ToricBundle:
    if fan.lattice_rank != 2:
        raise ValueError("arbitrary flags are only guaranteed compatible on surfaces")
    r = rng.randint(1, max_rank)
    return ToricBundle(fan, r, tuple(random_flag(rng, i, r, jump_range)
                                     for i in range(fan.n_rays)))


def split_bundle(fan: Fan, values: Sequence[Sequence[int]], name: str | None = None) -> ToricBundle:
    """``⊕_k L_k`` where ``values[k][i]`` is the jump of ``L_k`` on ray ``i``."""
    r = len(values)
    filtrations = []
    for i in range(fan.n_rays):
        levels = sorted({row[i] for row in values})
        steps = []
        for j in levels:
            members = [tuple(int(t == k) for t in range(r))
                       for k, row in enumerate(values) if row[i] >= j]
            steps.append((j, Subspace.span(members, r)))
        filtrations.append(Filtration(i, tuple(steps)))
    return ToricBundle(fan, r, tuple(filtrations), name=name)


def twist(bundle: ToricBundle, shifts: Sequence[int]) -> ToricBundle:
    """Tensor with the line bundle whose jump on ray ``i`` is ``shifts[i]``."""
    filtrations = tuple(
        Filtration(f.ray_index, tuple((j + s, span) for j, span in f.steps))
        for f, s in zip(bundle.filtrations, shifts))
    return ToricBundle(bundle.fan, bundle.rank, filtrations)


def tangent_bundle(fan: Fan) -> ToricBundle:
    d = fan.lattice_rank
    filtrations = tuple(
        Filtration(i, ((0, Subspace.full(d)), (1, Subspace.span([ray], d))))
        for i, ray in enumerate(fan.rays))
    return ToricBundle(fan, d, filtrations)


def line_bundle(fan: Fan, values: Sequence[int]) -> ToricBundle:
    return split_bundle(fan, [values])


def random_bundle(kind: str, rng: random.Random, max_rank: int = 3) -> ToricBundle:
    if kind == "p2":
        return random_flag_bundle(projective_space(2), rng, max_rank)
    if kind == "hirzebruch":
        return random_flag_bundle(hirzebruch(1), rng, max_rank)
    if kind == "p3":
        fan = projective_space(3)
        lo, hi = JUMP_RANGE
        if rng.random() < 0.3:
            return twist(tangent_bundle(fan), [rng.randint(-2, 2) for _ in fan.rays])
        r = rng.randint(1, max_rank)
        return split_bundle(fan, [[rng.randint(lo, hi) for _ in fan.rays] for _ in range(r)])
    raise ValueError(f"unknown fan kind {kind!r}; expected one of {', '.join(FANS)}")


def seeded_bundle(kind: str, seed: int, max_rank: int = 3) -> ToricBundle:
    b = random_bundle(kind, random.Random(seed), max_rank)
    return ToricBundle(b.fan, b.rank, b.filtrations, name=f"random-{kind}-{seed}")
