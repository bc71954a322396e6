"""The parliament of polytopes and the global sections it indexes."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlin import determinant, dot, inverse, rank
from .fan import IntVector, dual_generators
from .klyachko import ConeSplitting, ToricBundle, filtration_value, splitting_basis
from .matroid import bundle_ground_set


@dataclass(frozen=True)
class ParliamentPolytope:
    """``P_e = {u : <u, v_i> <= bounds[i] for every ray}``."""

    vector: tuple[int, ...]
    bounds: tuple[int, ...]
    vertices: tuple[tuple[Fraction, ...], ...]
    lattice_points: tuple[IntVector, ...]

    @property
    def empty(self) -> bool:
        return not self.vertices

    def contains(self, u: Sequence, rays: Sequence[Sequence[int]]) -> bool:
        return all(dot(u, v) <= a for v, a in zip(rays, self.bounds))

    @property
    def dimension(self) -> int:
        if not self.vertices:
            return -1
        base = self.vertices[0]
        diffs = [tuple(x - y for x, y in zip(p, base)) for p in self.vertices[1:]]
        return rank(diffs, len(base)) if diffs else 0


def _vertices(rays: Sequence[IntVector], bounds: Sequence[int]) -> list[tuple[Fraction, ...]]:
    d = len(rays[0])
    found = set()
    for subset in itertools.combinations(range(len(rays)), d):
        mat = [rays[i] for i in subset]
        if determinant(mat) == 0:
            continue
        inv = inverse(mat)
        rhs = [bounds[i] for i in subset]
        point = tuple(sum(inv[k][j] * rhs[j] for j in range(d)) for k in range(d))
        if all(dot(point, v) <= a for v, a in zip(rays, bounds)):
            found.add(point)
    return sorted(found)


def _lattice_points(rays, bounds, vertices) -> list[IntVector]:
    if not vertices:
        return []
    d = len(vertices[0])
    lo = [math.floor(min(p[k] for p in vertices)) for k in range(d)]
    hi = [math.ceil(max(p[k] for p in vertices)) for k in range(d)]
    pts = []
    for u in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(dot(u, v) <= a for v, a in zip(rays, bounds)):
            pts.append(u)
    return pts


def polytope_from_bounds(bundle: ToricBundle, vector, bounds) -> ParliamentPolytope:
    rays = bundle.fan.rays
    verts = _vertices(rays, bounds)
    return ParliamentPolytope(tuple(vector), tuple(bounds), tuple(verts),
                              tuple(_lattice_points(rays, bounds, verts)))


def polytope(bundle: ToricBundle, e: Sequence[int]) -> ParliamentPolytope:
    """Raises :class:`InvalidFanError` if the fan is not smooth and complete,
    since the H-representation would then be unbounded."""
    bundle.fan.require_valid()
    cache = bundle._cache.setdefault("polytopes", {})
    e = tuple(e)
    if e not in cache:
        bounds = tuple(filtration_value(bundle, e, i) for i in range(bundle.fan.n_rays))
        cache[e] = polytope_from_bounds(bundle, e, bounds)
    return cache[e]


def parliament(bundle: ToricBundle) -> list[ParliamentPolytope]:
    return [polytope(bundle, e) for e in bundle_ground_set(bundle)]


def splittings(bundle: ToricBundle) -> list[ConeSplitting]:
    """Verified splitting ``(u_l, e_{l,sigma})`` for every maximal cone."""
    if "splittings" not in bundle._cache:
        ground = bundle_ground_set(bundle).vectors
        bundle._cache["splittings"] = [
            splitting_basis(bundle, c, ground) for c in range(len(bundle.fan.max_cones))]
    return bundle._cache["splittings"]


def random_splittings(bundle: ToricBundle, rng: random.Random) -> list[ConeSplitting]:
    """Another valid choice of bases, for choice-independence checks."""
    ground = bundle_ground_set(bundle).vectors
    return [splitting_basis(bundle, c, ground, rng=rng)
            for c in range(len(bundle.fan.max_cones))]


@dataclass(frozen=True)
class SectionsTable:
    """``dim V_u`` for every character with nonzero sections; ``total = h^0``."""

    entries: tuple[tuple[IntVector, int], ...]

    @property
    def total(self) -> int:
        return sum(dim for _, dim in self.entries)

    def as_dict(self) -> dict[IntVector, int]:
        return dict(self.entries)


def global_sections(bundle: ToricBundle) -> SectionsTable:
    points = set()
    for p in parliament(bundle):
        points.update(p.lattice_points)
    entries = []
    for u in sorted(points):
        dim = bundle.space_at(u).dim
        if dim:
            entries.append((u, dim))
    return SectionsTable(tuple(entries))


def splits_equivariantly(bundle: ToricBundle) -> bool:
    return len(bundle_ground_set(bundle)) == bundle.rank


def jet_simplex_contained(bundle: ToricBundle, cone: int, ell: int, k: int,
                          splitting: ConeSplitting | None = None) -> bool:
    """Whether ``conv(u_l, u_l - k w_1, ..., u_l - k w_d)`` lies in ``P_{e_l}``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if splitting is None:
        splitting = splittings(bundle)[cone]
    u, e = splitting.entries[ell]
    poly = polytope(bundle, e)
    rays = bundle.fan.rays
    corners = [u] + [tuple(a - k * b for a, b in zip(u, w))
                     for w in dual_generators(bundle.fan, cone)]
    return all(poly.contains(c, rays) for c in corners)


def lattice_edge_lengths(poly: ParliamentPolytope, vertex: Sequence, rays) -> list[int] | None:
    """Lattice lengths of the edges at an integral vertex of a 2-D polytope.

    Returns ``None`` when the vertex or a neighbour is not a lattice point.
    """
    if len(vertex) != 2 or any(Fraction(x).denominator != 1 for x in vertex):
        return None
    active = [i for i, v in enumerate(rays) if dot(vertex, v) == poly.bounds[i]]
    lengths = []
    for other in poly.vertices:
        if tuple(other) == tuple(vertex):
            continue
        shared = [i for i in active if dot(other, rays[i]) == poly.bounds[i]]
        if not shared:
            continue
        diff = [Fraction(a) - Fraction(b) for a, b in zip(other, vertex)]
        if any(x.denominator != 1 for x in diff):
            return None
        lengths.append(math.gcd(int(diff[0]), int(diff[1])))
    return lengths
