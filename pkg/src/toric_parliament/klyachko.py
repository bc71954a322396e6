"""Filtration data of a toric vector bundle and its local splittings.

A bundle of rank ``r`` is a vector space ``E = Q^r`` with one decreasing
filtration ``E^{v_i}(j)`` per ray.  Over each maximal cone the filtrations of
its rays split simultaneously in a basis drawn from the ground set; the
characters of that splitting are the multiset ``u(sigma)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConsistencyError, IncompatibleFiltrationsError, InputError
from .exactlin import Subspace, as_vector, dot, intersect_all, quotient_rank_of_images, rank, sum_all
from .fan import Fan, IntVector, dual_generators

@dataclass(frozen=True)
class Filtration:
    """``steps[k] = (through_k, span_k)``: ``E(j) = span_k`` for
    ``through_{k-1} < j <= through_k``; ``E(j) = E`` below the first step and
    ``0`` above the last."""

    ray_index: int
    steps: tuple[tuple[int, Subspace], ...]

    def __post_init__(self):
        if not self.steps:
            raise InputError("filtration has no steps", ray=self.ray_index + 1)
        r = self.steps[0][1].ambient_dim
        if self.steps[0][1].dim != r:
            raise InputError("first step of a filtration must span E", ray=self.ray_index + 1)
        for (j0, s0), (j1, s1) in zip(self.steps, self.steps[1:]):
            if j1 <= j0:
                raise InputError("filtration steps must have increasing 'through' values",
                                 ray=self.ray_index + 1)
            if not (s1 <= s0) or s1.dim >= s0.dim:
                raise InputError("filtration spans must strictly decrease",
                                 ray=self.ray_index + 1)
        if self.steps[-1][1].dim == 0:
            raise InputError("the zero space is implied after the last step",
                             ray=self.ray_index + 1)

    @property
    def ambient_dim(self) -> int:
        return self.steps[0][1].ambient_dim

    @property
    def jumps(self) -> tuple[int, ...]:
        """Values ``j`` with ``E(j) != E(j+1)``."""
        return tuple(j for j, _ in self.steps)

    def clip(self, j: int) -> int:
        """Smallest representative with the same ``E(j)``."""
        first, last = self.steps[0][0], self.steps[-1][0]
        if j <= first:
            return first
        if j > last:
            return last + 1
        return j

    def at(self, j: int) -> Subspace:
        for through, span in self.steps:
            if j <= through:
                return span
        return Subspace.zero(self.ambient_dim)

    def value(self, vector: Sequence) -> int:
        """``max(j : vector in E(j))``."""
        if all(x == 0 for x in vector):
            raise ValueError("filtration value of the zero vector is +infinity")
        best = None
        for through, span in self.steps:
            if span.contains(vector):
                best = through
            else:
                break
        return best


@dataclass(frozen=True)
class ToricBundle:
    fan: Fan
    rank: int
    filtrations: tuple[Filtration, ...]
    name: str | None = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.filtrations) != self.fan.n_rays:
            raise InputError(
                f"expected {self.fan.n_rays} filtrations, got {len(self.filtrations)}")
        for i, f in enumerate(self.filtrations):
            if f.ray_index != i:
                raise InputError("filtrations must be ordered by ray", ray=f.ray_index + 1)
            if f.ambient_dim != self.rank:
                raise InputError("filtration ambient dimension differs from the rank",
                                 ray=i + 1)

    @property
    def d(self) -> int:
        return self.fan.lattice_rank

    @property
    def full(self) -> Subspace:
        return self.filtrations[0].steps[0][1]

    def at(self, ray: int, j: int) -> Subspace:
        return self.filtrations[ray].at(j)

    def clipped_key(self, u: Sequence[int], rays: Sequence[int]) -> tuple:
        return tuple((i, self.filtrations[i].clip(dot(u, self.fan.rays[i]))) for i in rays)

    def intersection(self, key: tuple[tuple[int, int], ...]) -> Subspace:
        """``∩ E^{v_i}(j_i)`` over ``(i, j_i)`` in key; memoized."""
        cache = self._cache.setdefault("intersection", {})
        key = tuple(sorted((i, self.filtrations[i].clip(j)) for i, j in key))
        if key not in cache:
            cache[key] = intersect_all((self.at(i, j) for i, j in key), self.rank)
        return cache[key]

    def space_at(self, u: Sequence[int], rays: Sequence[int] | None = None) -> Subspace:
        """``∩_{i in rays} E^{v_i}(<u, v_i>)``; all rays by default (that is ``V_u``)."""
        if rays is None:
            rays = range(self.fan.n_rays)
        return self.intersection(self.clipped_key(u, rays))


@dataclass(frozen=True)
class ConeSplitting:
    """Characters of one maximal cone, each paired with its basis vector."""

    cone: int
    entries: tuple[tuple[IntVector, tuple[int, ...]], ...]

    @property
    def characters(self) -> list[IntVector]:
        return [u for u, _ in self.entries]

    @property
    def basis(self) -> list[tuple[int, ...]]:
        return [e for _, e in self.entries]


def filtration_value(bundle: ToricBundle, e: Sequence, ray: int) -> int:
    return bundle.filtrations[ray].value(e)


def _character(fan: Fan, cone: int, values: Sequence[int]) -> IntVector:
    gens = dual_generators(fan, cone)
    d = fan.lattice_rank
    return tuple(sum(c * w[k] for c, w in zip(values, gens)) for k in range(d))


def character_multiplicities(bundle: ToricBundle, cone: int) -> list[tuple[IntVector, int]]:
    """Distinct characters of the cone with their multiplicities (inclusion–exclusion)."""
    cache = bundle._cache.setdefault("multiplicities", {})
    if cone in cache:
        return cache[cone]
    fan = bundle.fan
    rays = fan.max_cones[cone]
    out = []
    total = 0
    for values in itertools.product(*(bundle.filtrations[i].jumps for i in rays)):
        m = 0
        for shift in itertools.product((0, 1), repeat=len(rays)):
            key = tuple((i, c + s) for i, c, s in zip(rays, values, shift))
            m += (-1) ** sum(shift) * bundle.intersection(key).dim
        if m < 0:
            raise IncompatibleFiltrationsError(
                "negative character multiplicity", cone=cone + 1,
                character=list(_character(fan, cone, values)))
        if m > 0:
            out.append((_character(fan, cone, values), m))
            total += m
    if total != bundle.rank:
        raise IncompatibleFiltrationsError(
            f"character multiplicities sum to {total}, not the rank {bundle.rank}",
            cone=cone + 1)
    out.sort(reverse=True)
    cache[cone] = out
    return out


def cone_characters(bundle: ToricBundle, cone: int) -> list[IntVector]:
    """The multiset ``u(sigma)``, sorted in decreasing lexicographic order."""
    chars = []
    for u, m in character_multiplicities(bundle, cone):
        chars.extend([u] * m)
    return chars


def cone_subspaces(bundle: ToricBundle, cone: int, u: Sequence[int]) -> tuple[Subspace, Subspace]:
    """``(E_u, E_{>u})`` for the cone; the strict part is the sum over unit shifts."""
    fan = bundle.fan
    rays = fan.max_cones[cone]
    e_u = bundle.space_at(u, rays)
    shifted = []
    for w in dual_generators(fan, cone):
        shifted.append(bundle.space_at(tuple(a + b for a, b in zip(u, w)), rays))
    return e_u, sum_all(shifted, bundle.rank)


def verify_splitting(bundle: ToricBundle, cone: int,
                     entries: Sequence[tuple[IntVector, Sequence]]) -> bool:
    """True iff the vectors form a basis splitting every ray filtration of the cone."""
    r = bundle.rank
    vectors = [e for _, e in entries]
    if len(vectors) != r or rank(vectors, r) != r:
        return False
    for i in bundle.fan.max_cones[cone]:
        ray = bundle.fan.rays[i]
        for through in bundle.filtrations[i].jumps:
            for j in (through, through + 1):
                span = Subspace.span([e for u, e in entries if dot(u, ray) >= j], r)
                if span != bundle.at(i, j):
                    return False
    return True


def jet_depth(bundle: ToricBundle, cone: int, u: Sequence[int], e: Sequence) -> int | None:
    """Largest ``k`` with ``conv(u, u - k w_1, ..., u - k w_d)`` inside ``P_e``.

    ``None`` when ``u`` itself is outside ``P_e``.
    """
    fan = bundle.fan
    slack = [filtration_value(bundle, e, i) - dot(u, v) for i, v in enumerate(fan.rays)]
    if min(slack) < 0:
        return None
    depth = None
    for w in dual_generators(fan, cone):
        for s, v in zip(slack, fan.rays):
            step = -dot(w, v)
            if step > 0:
                depth = s // step if depth is None else min(depth, s // step)
    if depth is None:
        raise ConsistencyError("unbounded polytope on a complete fan", cone=cone + 1)
    return depth


def splitting_basis(bundle: ToricBundle, cone: int, ground_vectors: Sequence[tuple[int, ...]],
                    rng: random.Random | None = None) -> ConeSplitting:
    """Pick ``B_sigma`` from the ground set and pair it with ``u(sigma)``.

    Candidates for a character ``u`` are ground vectors in ``E_u`` outside
    ``E_{>u}``, ranked by :func:`jet_depth` (deepest first) and then
    lexicographically, or randomly among equal depths when ``rng`` is given.
    Greedy selection in that order yields, for every ``k``, as many vectors
    of depth ``>= k`` as the quotient ``E_u / E_{>u}`` admits.  Backtracking
    continues until the whole selection splits the filtrations.
    """
    mults = character_multiplicities(bundle, cone)
    ordered = sorted(ground_vectors)
    options = []
    for u, m in mults:
        e_u, e_strict = cone_subspaces(bundle, cone, u)
        if e_u.dim - e_strict.dim != m:
            raise ConsistencyError("graded piece dimension differs from multiplicity",
                                   cone=cone + 1, character=list(u))
        cands = [e for e in ordered if e_u.contains(e) and not e_strict.contains(e)]
        if rng is not None:
            rng.shuffle(cands)
        depth = {e: jet_depth(bundle, cone, u, e) for e in cands}
        cands.sort(key=lambda e: 1 if depth[e] is None else -depth[e])
        choices = [combo for combo in itertools.combinations(cands, m)
                   if quotient_rank_of_images(combo, e_u, e_strict) == m]
        if not choices:
            raise IncompatibleFiltrationsError(
                "no ground-set vectors span a graded piece", cone=cone + 1, character=list(u))
        options.append((u, choices))

    def search(k: int, acc: list) -> list | None:
        if k == len(options):
            return acc if verify_splitting(bundle, cone, acc) else None
        u, choices = options[k]
        for combo in choices:
            found = search(k + 1, acc + [(u, e) for e in combo])
            if found is not None:
                return found
        return None

    found = search(0, [])
    if found is None:
        raise IncompatibleFiltrationsError("filtrations admit no common splitting on the cone",
                                           cone=cone + 1)
    return ConeSplitting(cone, tuple((u, tuple(e)) for u, e in found))


def check_compatible(bundle: ToricBundle) -> None:
    """Raise :class:`IncompatibleFiltrationsError` unless every cone splits."""
    for cone in range(len(bundle.fan.max_cones)):
        character_multiplicities(bundle, cone)


def make_filtration(ray_index: int, steps: Sequence[tuple[int, Sequence[Sequence]]],
                    rank: int) -> Filtration:
    return Filtration(ray_index, tuple(
        (int(j), Subspace.span([as_vector(v) for v in vecs], rank)) for j, vecs in steps))
