"""Global generation, jets, and curve restrictions (ample / nef)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConsistencyError
from .exactlin import (Subspace, complement_in, dot, intersect, quotient_rank_of_images, rank,
                       solve_coordinates)
from .fan import IntVector, Wall, dual_generators, walls
from .klyachko import (ConeSplitting, ToricBundle, character_multiplicities, cone_subspaces,
                       jet_depth)
from .matroid import bundle_ground_set
from .parliament import jet_simplex_contained, polytope, splittings


@dataclass(frozen=True)
class CurveSplitting:
    """Restriction to the curve of a wall: pairs ``(u, u', a)`` with ``u - u' = a m_tau``."""

    wall: Wall
    pairs: tuple[tuple[IntVector, IntVector, int], ...]
    separator: IntVector

    @property
    def degrees(self) -> list[int]:
        return sorted((a for _, _, a in self.pairs), reverse=True)


@dataclass
class PositivityReport:
    globally_generated: bool
    jets: dict[int, bool]
    ample: bool
    nef: bool
    witnesses: list[dict] = field(default_factory=list)

    @property
    def very_ample(self) -> bool:
        return self.jets[1]

    @property
    def k_jet_ample(self) -> dict[int, bool]:
        # separating k-jets and k-jet ampleness coincide for toric bundles
        return dict(self.jets)


def _sections_at(bundle: ToricBundle, u: Sequence[int]) -> list[tuple[int, ...]]:
    rays = bundle.fan.rays
    return [e for e in bundle_ground_set(bundle) if polytope(bundle, e).contains(u, rays)]


def is_globally_generated(bundle: ToricBundle) -> tuple[bool, dict | None]:
    """Evaluation criterion at every torus-fixed point, independent of ``B_sigma``.

    For each cone and each character ``u`` the ground vectors ``e`` with
    ``u in P_e`` must span ``E_u / E_{>u}``.
    """
    for cone in range(len(bundle.fan.max_cones)):
        for u, m in character_multiplicities(bundle, cone):
            e_u, e_strict = cone_subspaces(bundle, cone, u)
            secs = _sections_at(bundle, u)
            if quotient_rank_of_images(secs, e_u, e_strict) < m:
                reached = Subspace.span(list(e_strict.basis) + secs, bundle.rank)
                missing = complement_in(e_u, reached)
                return False, {"kind": "globally_generated", "cone": cone, "character": u,
                               "missing": missing[0]}
    return True, None


def globally_generated_by_pairing(bundle: ToricBundle,
                                  splits: Sequence[ConeSplitting] | None = None) -> bool:
    """``u_l in P_{e_l}`` for every cone and every pair of the splitting."""
    if splits is None:
        splits = splittings(bundle)
    rays = bundle.fan.rays
    return all(polytope(bundle, e).contains(u, rays) for s in splits for u, e in s.entries)


def separates_k_jets(bundle: ToricBundle, k: int) -> tuple[bool, dict | None]:
    """Choice-free simplex criterion.

    For each cone and character ``u`` the ground vectors whose polytope
    contains ``conv(u, u - k w_1, ..., u - k w_d)`` must span
    ``E_u / E_{>u}``.  That is exactly the condition under which some
    ``B_sigma`` passes the per-basis-vector simplex test.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    ground = bundle_ground_set(bundle).vectors
    for cone in range(len(bundle.fan.max_cones)):
        for u, m in character_multiplicities(bundle, cone):
            e_u, e_strict = cone_subspaces(bundle, cone, u)
            deep = []
            for e in ground:
                depth = jet_depth(bundle, cone, u, e) if e_u.contains(e) else None
                if depth is not None and depth >= k:
                    deep.append(e)
            if quotient_rank_of_images(deep, e_u, e_strict) < m:
                return False, {"kind": "jets", "k": k, "cone": cone, "character": u,
                               "reached": quotient_rank_of_images(deep, e_u, e_strict),
                               "needed": m}
    return True, None


def jets_by_pairing(bundle: ToricBundle, k: int,
                    splits: Sequence[ConeSplitting] | None = None) -> bool:
    """The simplex test on each pair ``(u_l, e_l)`` of the given splittings."""
    if splits is None:
        splits = splittings(bundle)
    return all(jet_simplex_contained(bundle, s.cone, ell, k, splitting=s)
               for s in splits for ell in range(len(s.entries)))


def _multi_indices(d: int, k: int):
    for m in itertools.product(range(k + 1), repeat=d):
        if sum(m) <= k:
            yield m


def jet_rank_oracle(bundle: ToricBundle, cone: int, k: int,
                    splitting: ConeSplitting | None = None) -> bool:
    """Surjectivity of the order-``k`` jet map at the cone's fixed point, by ranks.

    In the local frame ``e_l (x) chi^{u_l}`` the section ``e (x) chi^{u'}``
    with ``e = sum a_l e_l`` has Taylor coefficient ``a_l`` at the monomial
    with exponents ``m_i = <u_l - u', v_i>``.  Jet coordinates ``(l, m)``
    therefore split into blocks by ``u' = u_l - sum m_i w_i``, only sections
    of weight ``u'`` reach a block, and each block needs full rank.
    """
    if splitting is None:
        splitting = splittings(bundle)[cone]
    basis = splitting.basis
    gens = dual_generators(bundle.fan, cone)
    rays = bundle.fan.rays
    ground = bundle_ground_set(bundle).vectors
    coords = {e: solve_coordinates(basis, e) for e in ground}
    blocks: dict[tuple[int, ...], list[int]] = {}
    for ell, u in enumerate(splitting.characters):
        for m in _multi_indices(bundle.d, k):
            shifted = tuple(u[t] - sum(mi * w[t] for mi, w in zip(m, gens))
                            for t in range(bundle.d))
            blocks.setdefault(shifted, []).append(ell)
    for shifted, idx in sorted(blocks.items()):
        rows = [tuple(coords[e][ell] for ell in idx)
                for e in ground if polytope(bundle, e).contains(shifted, rays)]
        if rank(rows, len(idx)) < len(idx):
            return False
    return True


def _separator(bundle: ToricBundle, wall: Wall, classes: set[tuple[int, ...]]) -> IntVector:
    n = len(wall.ray_indices)
    if n == 0:
        return ()
    total = n
    while True:
        for cut in itertools.combinations(range(1, total), n - 1):
            parts = [b - a for a, b in zip((0,) + cut, cut + (total,))]
            if len({dot(c, parts) for c in classes}) == len(classes):
                return tuple(parts)
        total += 1


def restrict_to_curve(bundle: ToricBundle, wall: Wall,
                      separator: Sequence[int] | None = None) -> CurveSplitting:
    """Split the restriction to the wall's curve into line bundles.

    ``separator`` holds positive coefficients on the wall's rays defining
    ``v0`` in the wall's relative interior; it must give distinct values to
    the occurring character classes (one is searched for when omitted).
    """
    fan = bundle.fan
    r = bundle.rank
    left, right = splittings(bundle)[wall.left_cone], splittings(bundle)[wall.right_cone]
    tau = wall.ray_indices

    def cls(u):
        return tuple(dot(u, fan.rays[i]) for i in tau)

    classes = {cls(u) for u in left.characters}
    if classes != {cls(u) for u in right.characters}:
        raise ConsistencyError("adjacent cones disagree on wall characters",
                               wall=[i + 1 for i in tau])
    if separator is None:
        separator = _separator(bundle, wall, classes)
    separator = tuple(separator)
    if len(separator) != len(tau) or any(s <= 0 for s in separator):
        raise ValueError("separator needs one positive coefficient per wall ray")
    if len({dot(c, separator) for c in classes}) != len(classes):
        raise ValueError("separator does not distinguish the character classes")

    def v0_step(split: ConeSplitting, level: int) -> Subspace:
        return Subspace.span([e for u, e in split.entries if dot(cls(u), separator) >= level], r)

    gens_left = dual_generators(fan, wall.left_cone)
    gens_right = dual_generators(fan, wall.right_cone)
    cone_left = fan.max_cones[wall.left_cone]
    cone_right = fan.max_cones[wall.right_cone]

    def lift(gens, cone_rays, c, extra_ray, value):
        coeff = {i: c[tau.index(i)] for i in tau}
        coeff[extra_ray] = value
        return tuple(sum(coeff[i] * w[t] for i, w in zip(cone_rays, gens))
                     for t in range(fan.lattice_rank))

    pairs = []
    f_plus = bundle.filtrations[wall.left_ray]
    f_minus = bundle.filtrations[wall.right_ray]
    for c in sorted(classes):
        level = dot(c, separator)
        top, below = v0_step(left, level), v0_step(left, level + 1)
        if top != v0_step(right, level) or below != v0_step(right, level + 1):
            raise ConsistencyError("wall filtration differs between adjacent cones",
                                   wall=[i + 1 for i in tau])

        def graded(i, j):
            a = intersect(f_plus.at(i), top) + below
            b = intersect(f_minus.at(j), top) + below
            return intersect(a, b).dim - below.dim

        for i in f_plus.jumps:
            for j in f_minus.jumps:
                m = graded(i, j) - graded(i + 1, j) - graded(i, j + 1) + graded(i + 1, j + 1)
                if m < 0:
                    raise ConsistencyError("negative pair multiplicity on a wall",
                                           wall=[t + 1 for t in tau])
                if m:
                    u = lift(gens_left, cone_left, c, wall.left_ray, i)
                    u2 = lift(gens_right, cone_right, c, wall.right_ray, j)
                    a = dot(tuple(x - y for x, y in zip(u, u2)), wall.v_tau)
                    if tuple(x - y for x, y in zip(u, u2)) != tuple(a * x for x in wall.m_tau):
                        raise ConsistencyError("paired characters differ off the wall normal")
                    pairs.extend([(u, u2, a)] * m)
    pairs.sort(key=lambda p: (-p[2], p[0], p[1]))
    if len(pairs) != r:
        raise ConsistencyError(f"wall splitting has {len(pairs)} summands, rank is {r}")
    if sorted(p[0] for p in pairs) != sorted(left.characters) or \
            sorted(p[1] for p in pairs) != sorted(right.characters):
        raise ConsistencyError("wall pairs do not reproduce the cone characters")
    return CurveSplitting(wall, tuple(pairs), separator)


def restrictions(bundle: ToricBundle) -> list[CurveSplitting]:
    if "restrictions" not in bundle._cache:
        bundle._cache["restrictions"] = [restrict_to_curve(bundle, w) for w in walls(bundle.fan)]
    return bundle._cache["restrictions"]


def is_ample_nef(bundle: ToricBundle) -> tuple[bool, bool]:
    degrees = [a for s in restrictions(bundle) for a in s.degrees]
    return all(a > 0 for a in degrees), all(a >= 0 for a in degrees)


def positivity_report(bundle: ToricBundle, max_jet: int = 1) -> PositivityReport:
    gg, gg_witness = is_globally_generated(bundle)
    if gg != globally_generated_by_pairing(bundle):
        raise ConsistencyError("evaluation and pairing forms of global generation disagree")
    witnesses = [gg_witness] if gg_witness else []
    jets = {}
    for k in range(max(max_jet, 1) + 1):
        ok, witness = separates_k_jets(bundle, k)
        if ok != jets_by_pairing(bundle, k):
            raise ConsistencyError("simplex test on B_sigma disagrees with the rank form", k=k)
        jets[k] = ok
        if witness:
            witnesses.append(witness)
    if jets[0] != gg:
        raise ConsistencyError("0-jet separation differs from global generation")
    ample, nef = is_ample_nef(bundle)
    for s in restrictions(bundle):
        bad = [a for a in s.degrees if a <= 0]
        if bad:
            witnesses.append({"kind": "curve", "wall": s.wall, "degrees": s.degrees})
    return PositivityReport(gg, jets, ample, nef, witnesses)
