"""Smooth complete fans: validation, dual bases and walls.

Rays and maximal cones are 0-indexed here; files and reports shift to
1-indexing at the boundary (see :mod:`toric_parliament.bundlefile`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidFanError
from .exactlin import determinant, dot, inverse, nullspace, primitive

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class Fan:
    rays: tuple[IntVector, ...]
    max_cones: tuple[tuple[int, ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones",
                           tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones))

    @property
    def lattice_rank(self) -> int:
        return len(self.rays[0]) if self.rays else 0

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_rays(self, cone: int) -> list[IntVector]:
        return [self.rays[i] for i in self.max_cones[cone]]

    @cached_property
    def report(self) -> "ValidationReport":
        return validate(self)

    def require_valid(self) -> None:
        if not self.report.ok:
            raise InvalidFanError("fan is not smooth and complete",
                                  violations=[v.to_json() for v in self.report.violations])


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    smooth: bool
    complete: bool
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return self.smooth and self.complete and not self.violations

    def to_json(self) -> dict:
        return {"smooth": self.smooth, "complete": self.complete, "ok": self.ok,
                "violations": [v.to_json() for v in self.violations]}


@dataclass(frozen=True)
class Wall:
    """Codimension-one cone shared by two maximal cones.

    ``m_tau`` is primitive in M, vanishes on the wall and is positive on the
    left cone; ``v_tau`` is the left cone's ray off the wall.
    """

    ray_indices: tuple[int, ...]
    left_cone: int
    right_cone: int
    left_ray: int
    right_ray: int
    m_tau: IntVector
    v_tau: IntVector


def _wall_normal(fan: Fan, face: tuple[int, ...], towards: int) -> IntVector | None:
    d = fan.lattice_rank
    if face:
        kernel = nullspace([fan.rays[i] for i in face], d)
    else:
        kernel = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    if len(kernel) != 1:
        return None
    m = primitive(kernel[0])
    s = dot(m, fan.rays[towards])
    if s == 0:
        return None
    return m if s > 0 else tuple(-x for x in m)


def _positively_spans(rays: list[IntVector], d: int) -> bool:
    # The recession cone {y : <y, v> <= 0 for all rays} must be {0}; if it is
    # not, it has an extreme ray cut out by d-1 independent equalities.
    for face in itertools.combinations(range(len(rays)), d - 1):
        rows = [rays[i] for i in face]
        kernel = nullspace(rows, d) if rows else [
            tuple(int(i == j) for j in range(d)) for i in range(d)]
        if len(kernel) != 1 and rows:
            continue
        for y in kernel:
            for sign in (1, -1):
                if all(sign * dot(y, v) <= 0 for v in rays):
                    return False
    return True


def validate(fan: Fan) -> ValidationReport:
    """Check smoothness and completeness, listing every violation found."""
    violations: list[Violation] = []
    d = fan.lattice_rank
    smooth = True
    complete = True

    if d == 0 or not fan.rays:
        return ValidationReport(False, False, (Violation("empty", "fan has no rays"),))
    for i, ray in enumerate(fan.rays):
        if len(ray) != d:
            violations.append(Violation("ray", f"ray {i + 1} has length {len(ray)}, expected {d}"))
            return ValidationReport(False, False, tuple(violations))
        g = 0
        for x in ray:
            g = math.gcd(g, x)
        if g != 1:
            violations.append(Violation("ray", f"ray {i + 1} {ray} is not primitive"))
    if len(set(fan.rays)) != len(fan.rays):
        violations.append(Violation("ray", "repeated ray generators"))
    if violations:
        return ValidationReport(False, False, tuple(violations))

    cones = fan.max_cones
    if not cones:
        return ValidationReport(False, False, (Violation("cone", "no maximal cones"),))
    for c, cone in enumerate(cones):
        if len(cone) != d or len(set(cone)) != d:
            violations.append(Violation("cone", f"cone {c + 1} does not have {d} distinct rays"))
            complete = False
            continue
        if any(i < 0 or i >= fan.n_rays for i in cone):
            violations.append(Violation("cone", f"cone {c + 1} refers to a missing ray"))
            return ValidationReport(False, False, tuple(violations))
        det = determinant(fan.cone_rays(c))
        if abs(det) != 1:
            smooth = False
            violations.append(Violation("smooth", f"cone {c + 1} has determinant {det}"))
    if len(set(cones)) != len(cones):
        violations.append(Violation("cone", "repeated maximal cones"))
        complete = False
    if violations:
        return ValidationReport(smooth, complete and smooth, tuple(violations))

    used = set(itertools.chain.from_iterable(cones))
    for i in range(fan.n_rays):
        if i not in used:
            complete = False
            violations.append(Violation("complete", f"ray {i + 1} lies in no maximal cone"))

    faces: dict[tuple[int, ...], list[int]] = {}
    for c, cone in enumerate(cones):
        for face in itertools.combinations(cone, d - 1):
            faces.setdefault(face, []).append(c)
    for face, owners in sorted(faces.items()):
        label = "{" + ",".join(str(i + 1) for i in face) + "}"
        if len(owners) != 2:
            complete = False
            violations.append(Violation(
                "complete", f"wall {label} lies in {len(owners)} maximal cone(s)"))
            continue
        a, b = owners
        extra_a = next(i for i in cones[a] if i not in face)
        extra_b = next(i for i in cones[b] if i not in face)
        m = _wall_normal(fan, face, extra_a)
        if m is None or dot(m, fan.rays[extra_b]) >= 0:
            complete = False
            violations.append(Violation(
                "complete", f"cones {a + 1} and {b + 1} overlap across wall {label}"))

    # connectivity through walls
    seen = {0}
    frontier = [0]
    while frontier:
        c = frontier.pop()
        for owners in faces.values():
            if c in owners:
                for o in owners:
                    if o not in seen:
                        seen.add(o)
                        frontier.append(o)
    if len(seen) != len(cones):
        complete = False
        violations.append(Violation("complete", "maximal cones are not connected through walls"))

    if complete and not _positively_spans(list(fan.rays), d):
        complete = False
        violations.append(Violation("complete", "rays do not positively span the lattice"))

    return ValidationReport(smooth, complete, tuple(violations))


def dual_generators(fan: Fan, cone: int) -> list[IntVector]:
    """Dual basis ``w_j`` with ``<w_j, v_i> = δ_ij`` for the cone's rays (in cone order)."""
    key = ("dual", cone)
    if key in fan._cache:
        return fan._cache[key]
    rays = fan.cone_rays(cone)
    if abs(determinant(rays)) != 1:
        raise InvalidFanError(f"cone {cone + 1} is not unimodular")
    inv = inverse(rays)  # columns of inv pair to the identity with the rows
    d = len(rays)
    gens = [tuple(int(inv[k][j]) for k in range(d)) for j in range(d)]
    fan._cache[key] = gens
    return gens


def walls(fan: Fan) -> list[Wall]:
    """One :class:`Wall` per codimension-one cone, smaller cone index on the left."""
    if "walls" in fan._cache:
        return fan._cache["walls"]
    d = fan.lattice_rank
    faces: dict[tuple[int, ...], list[int]] = {}
    for c, cone in enumerate(fan.max_cones):
        for face in itertools.combinations(cone, d - 1):
            faces.setdefault(face, []).append(c)
    out = []
    for face, owners in faces.items():
        if len(owners) != 2:
            raise InvalidFanError("wall with fewer or more than two maximal cones",
                                  wall=[i + 1 for i in face])
        left, right = sorted(owners)
        left_ray = next(i for i in fan.max_cones[left] if i not in face)
        right_ray = next(i for i in fan.max_cones[right] if i not in face)
        m = _wall_normal(fan, face, left_ray)
        if m is None:
            raise InvalidFanError("degenerate wall", wall=[i + 1 for i in face])
        out.append(Wall(face, left, right, left_ray, right_ray, m, fan.rays[left_ray]))
    out.sort(key=lambda w: (w.left_cone, w.right_cone))
    fan._cache["walls"] = out
    return out


def projective_space(d: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays.append(tuple(-1 for _ in range(d)))
    cones = [tuple(j for j in range(d + 1) if j != i) for i in range(d + 1)]
    return Fan(tuple(rays), tuple(cones))


def product_of_lines() -> Fan:
    """The fan of P^1 x P^1."""
    return Fan(((1, 0), (0, 1), (-1, 0), (0, -1)),
               ((0, 1), (1, 2), (2, 3), (0, 3)))


def hirzebruch(a: int = 1) -> Fan:
    return Fan(((1, 0), (0, 1), (-1, a), (0, -1)),
               ((0, 1), (1, 2), (2, 3), (0, 3)))
