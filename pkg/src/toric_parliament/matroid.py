"""Intersection lattice of the filtrations and its free-expansion ground set."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exactlin import Subspace, complement_in, intersect, primitive, rank, sum_all
from .klyachko import ToricBundle


@dataclass(frozen=True)
class IntersectionLattice:
    ambient_dim: int
    members: tuple[Subspace, ...]

    def __contains__(self, space: Subspace) -> bool:
        return space in self.members


@dataclass(frozen=True)
class GroundSet:
    """One primitive integer vector per line, plus the flats ``R_V``.

    ``flats[k]`` holds the indices of the vectors lying in ``lattice.members[k]``.
    """

    vectors: tuple[tuple[int, ...], ...]
    flats: tuple[tuple[Subspace, tuple[int, ...]], ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def flat(self, space: Subspace) -> tuple[int, ...]:
        for member, indices in self.flats:
            if member == space:
                return indices
        raise KeyError(space)


def intersection_lattice(bundle: ToricBundle) -> IntersectionLattice:
    """Close the filtration steps (plus 0 and E) under pairwise intersection."""
    if "lattice" in bundle._cache:
        return bundle._cache["lattice"]
    r = bundle.rank
    members = {Subspace.zero(r), Subspace.full(r)}
    for f in bundle.filtrations:
        members.update(span for _, span in f.steps)
    frontier = list(members)
    while frontier:
        fresh = []
        snapshot = list(members)
        for a in frontier:
            for b in snapshot:
                c = intersect(a, b)
                if c not in members:
                    members.add(c)
                    fresh.append(c)
        frontier = fresh
    lattice = IntersectionLattice(r, tuple(sorted(members, key=Subspace.sort_key)))
    bundle._cache["lattice"] = lattice
    return lattice


def _random_complement(v: Subspace, w: Subspace, rng: random.Random) -> list[tuple[int, ...]]:
    base = list(intersect(v, w).basis)
    need = v.dim - len(base)
    chosen = []
    while len(chosen) < need:
        coeffs = [rng.randint(-3, 3) for _ in v.basis]
        vec = tuple(sum(c * row[k] for c, row in zip(coeffs, v.basis))
                    for k in range(v.ambient_dim))
        if any(vec) and rank(base + [vec], v.ambient_dim) > len(base):
            base.append(vec)
            chosen.append(primitive(vec))
    return chosen


def ground_set(lattice: IntersectionLattice, rng: random.Random | None = None) -> GroundSet:
    """Ground set of the free expansion, built dimension by dimension.

    Each member ``V`` contributes a basis of a complement, inside ``V``, to
    the span of the members strictly below it.  (Taking the span of *all*
    lower-dimensional members instead can leave ``V`` under-represented once
    those members span more than their part of ``V``.)  With ``rng`` the
    complements are random instead of echelon-chosen.
    """
    r = lattice.ambient_dim
    vectors: list[tuple[int, ...]] = []
    seen_lines: set[tuple[int, ...]] = set()
    for ell in range(r + 1):
        for v in lattice.members:
            if v.dim != ell:
                continue
            w = sum_all((m for m in lattice.members if m.dim < ell and m <= v), r)
            extra = _random_complement(v, w, rng) if rng is not None else complement_in(v, w)
            for e in extra:
                if e not in seen_lines:
                    seen_lines.add(e)
                    vectors.append(e)
    flats = tuple((m, tuple(k for k, e in enumerate(vectors) if m.contains(e)))
                  for m in lattice.members)
    return GroundSet(tuple(vectors), flats)


def bundle_ground_set(bundle: ToricBundle) -> GroundSet:
    if "ground_set" not in bundle._cache:
        bundle._cache["ground_set"] = ground_set(intersection_lattice(bundle))
    return bundle._cache["ground_set"]
