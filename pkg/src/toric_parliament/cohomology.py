"""Isotypic Čech cohomology on the maximal-cone cover and the equivariant Euler characteristic."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConsistencyError
from .exactlin import Subspace, rank
from .fan import Fan, IntVector
from .klyachko import ToricBundle, cone_characters

DEFAULT_GROWTH_CAP = 50


def _cover_subsets(fan: Fan) -> list[list[tuple[int, ...]]]:
    """Nonempty subsets of maximal cones grouped by size, each in increasing order."""
    n = len(fan.max_cones)
    return [list(itertools.combinations(range(n), p + 1)) for p in range(n)]


def _common_rays(fan: Fan, subset: Sequence[int]) -> tuple[int, ...]:
    common = set(fan.max_cones[subset[0]])
    for c in subset[1:]:
        common &= set(fan.max_cones[c])
    return tuple(sorted(common))


def _coboundary_signs(fan: Fan, p: int) -> list[tuple[int, int, int]]:
    """Nonzero entries ``(target, source, sign)`` of the degree-``p`` coboundary."""
    key = ("coboundary", p)
    if key not in fan._cache:
        subsets = _cover_subsets(fan)
        src_index = {s: k for k, s in enumerate(subsets[p])}
        entries = []
        for t, target in enumerate(subsets[p + 1]):
            for pos in range(len(target)):
                face = target[:pos] + target[pos + 1:]
                entries.append((t, src_index[face], (-1) ** pos))
        fan._cache[key] = entries
    return fan._cache[key]


def check_coboundary_squares_to_zero(fan: Fan) -> None:
    n = len(fan.max_cones)
    if ("coboundary_ok",) in fan._cache:
        return
    for p in range(n - 2):
        first = _coboundary_signs(fan, p)
        second = _coboundary_signs(fan, p + 1)
        composite: dict[tuple[int, int], int] = {}
        for t2, mid, s2 in second:
            for t1, src, s1 in first:
                if t1 == mid:
                    composite[(t2, src)] = composite.get((t2, src), 0) + s1 * s2
        if any(composite.values()):
            raise ConsistencyError("Čech coboundary does not square to zero", degree=p)
    fan._cache[("coboundary_ok",)] = True


@dataclass(frozen=True)
class CechComplex:
    """Isotypic piece of the Čech complex at character ``u``.

    ``terms[p][k]`` is the subspace of ``E`` sitting over the ``k``-th
    ``(p+1)``-subset of maximal cones.
    """

    character: IntVector
    rank: int
    subsets: tuple[tuple[tuple[int, ...], ...], ...]
    terms: tuple[tuple[Subspace, ...], ...]

    def dims(self) -> list[int]:
        return [sum(s.dim for s in row) for row in self.terms]

    def _image(self, fan: Fan, p: int) -> list[tuple]:
        """Images of the basis of ``C^p`` in ambient coordinates of ``C^{p+1}``."""
        r = self.rank
        by_source: dict[int, list[tuple[int, int]]] = {}
        for t, s, sign in _coboundary_signs(fan, p):
            by_source.setdefault(s, []).append((t, sign))
        width = len(self.subsets[p + 1]) * r
        images = []
        for s, space in enumerate(self.terms[p]):
            for vec in space.integer_basis:
                out = [0] * width
                for t, sign in by_source.get(s, ()):
                    for k in range(r):
                        out[t * r + k] += sign * vec[k]
                images.append(tuple(out))
        return images

    def differential_ranks(self, fan: Fan) -> list[int]:
        r = self.rank
        ranks = []
        for p in range(len(self.terms) - 1):
            images = self._image(fan, p)
            ranks.append(rank(images, len(self.subsets[p + 1]) * r) if images else 0)
        return ranks

    def cohomology(self, fan: Fan) -> list[int]:
        dims = self.dims()
        ranks = self.differential_ranks(fan) + [0]
        return [dims[p] - ranks[p] - (ranks[p - 1] if p else 0) for p in range(len(dims))]


def cech_complex(bundle: ToricBundle, u: Sequence[int]) -> CechComplex:
    fan = bundle.fan
    subsets = _cover_subsets(fan)
    terms = tuple(tuple(bundle.space_at(u, _common_rays(fan, s)) for s in row)
                  for row in subsets)
    return CechComplex(tuple(u), bundle.rank, tuple(tuple(row) for row in subsets), terms)


def cohomology_at(bundle: ToricBundle, u: Sequence[int]) -> list[int]:
    """``[h^0_u, ..., h^d_u]`` from exact ranks of the Čech complex."""
    fan = bundle.fan
    fan.require_valid()
    check_coboundary_squares_to_zero(fan)
    cache = bundle._cache.setdefault("cohomology", {})
    key = bundle.clipped_key(u, range(fan.n_rays))
    if key not in cache:
        h = cech_complex(bundle, u).cohomology(fan)
        d = fan.lattice_rank
        if any(h[d + 1:]):
            raise ConsistencyError("cohomology above the dimension", character=list(u))
        h = (h + [0] * (d + 1))[:d + 1]
        if h[0] != bundle.space_at(u).dim:
            raise ConsistencyError("Čech h^0 differs from dim V_u", character=list(u))
        cache[key] = h
    return list(cache[key])


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial in ``t1..td``; zero coefficients are never stored."""

    terms: tuple[tuple[IntVector, int], ...]

    @classmethod
    def from_dict(cls, coeffs: dict[IntVector, int]) -> "LaurentPolynomial":
        return cls(tuple(sorted(((tuple(u), c) for u, c in coeffs.items() if c),
                                key=lambda t: _monomial_order(t[0]))))

    def as_dict(self) -> dict[IntVector, int]:
        return dict(self.terms)

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        acc = self.as_dict()
        for u, c in other.terms:
            acc[u] = acc.get(u, 0) + c
        return LaurentPolynomial.from_dict(acc)

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (u, c) in enumerate(self.terms):
            factors = [f"t{i + 1}" if x == 1 else f"t{i + 1}^{x}"
                       for i, x in enumerate(u) if x]
            mono = "*".join(factors)
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            if k == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def _monomial_order(u: IntVector):
    # descending graded lexicographic
    return (-sum(u), tuple(-x for x in u))


def _box(lo: Sequence[int], hi: Sequence[int]) -> Iterable[IntVector]:
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def _shell(lo, hi) -> Iterable[IntVector]:
    for u in _box(lo, hi):
        if any(x in (a, b) for x, a, b in zip(u, lo, hi)):
            yield u


def cohomology_table(bundle: ToricBundle,
                     growth_cap: int = DEFAULT_GROWTH_CAP) -> list[tuple[IntVector, list[int]]]:
    """Characters with nonzero cohomology, found over an adaptively grown box.

    The box starts at the hull of every cone's characters widened by one and
    widens while its boundary still carries cohomology.
    """
    fan = bundle.fan
    chars = [u for c in range(len(fan.max_cones)) for u in cone_characters(bundle, c)]
    d = fan.lattice_rank
    lo = [min(u[k] for u in chars) - 1 for k in range(d)]
    hi = [max(u[k] for u in chars) + 1 for k in range(d)]
    steps = 0
    while any(any(cohomology_at(bundle, u)) for u in _shell(lo, hi)):
        steps += 1
        if steps > growth_cap:
            raise ConsistencyError("cohomology region kept growing; input looks invalid",
                                   growth_steps=steps)
        lo = [x - 1 for x in lo]
        hi = [x + 1 for x in hi]
    table = []
    for u in _box(lo, hi):
        h = cohomology_at(bundle, u)
        if any(h):
            table.append((tuple(u), h))
    return table


def euler_characteristic(bundle: ToricBundle,
                         growth_cap: int = DEFAULT_GROWTH_CAP) -> LaurentPolynomial:
    coeffs = {u: sum((-1) ** i * x for i, x in enumerate(h))
              for u, h in cohomology_table(bundle, growth_cap)}
    return LaurentPolynomial.from_dict(coeffs)
