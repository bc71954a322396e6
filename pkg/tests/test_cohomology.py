import itertools

import pytest

from toric_parliament import golden_bundle
from toric_parliament.cohomology import (LaurentPolynomial, check_coboundary_squares_to_zero,
                                         cech_complex, cohomology_at, cohomology_table,
                                         euler_characteristic)
from toric_parliament.fan import hirzebruch, product_of_lines, projective_space, walls
from toric_parliament.parliament import global_sections
from toric_parliament.randgen import (line_bundle, seeded_bundle, split_bundle, tangent_bundle,
                                      twist)


def _riemann_roch_surface(fan, values):
    """``chi(O(D)) = 1 + (D.D - D.K) / 2`` with ``D = sum a_i D_i`` and ``K = -sum D_i``."""
    deg = {}
    for w in walls(fan):
        (rho,) = w.ray_indices
        v = fan.rays[rho]
        s = [a + b for a, b in zip(fan.rays[w.left_ray], fan.rays[w.right_ray])]
        c = next(x // y for x, y in zip(s, v) if y)
        deg[rho] = values[w.left_ray] + values[w.right_ray] - c * values[rho]
    dd = sum(values[rho] * deg[rho] for rho in deg)
    dk = -sum(deg.values())
    return 1 + (dd - dk) // 2


def _total(poly):
    return sum(c for _, c in poly.terms)


@pytest.mark.parametrize("fan", [projective_space(1), projective_space(2), projective_space(3),
                                 hirzebruch(1), product_of_lines()])
def test_coboundary_squares_to_zero(fan):
    check_coboundary_squares_to_zero(fan)


@pytest.mark.parametrize("a", range(-4, 4))
def test_line_bundles_on_the_line(a):
    poly = euler_characteristic(line_bundle(projective_space(1), [a, 0]))
    assert _total(poly) == a + 1
    assert len(poly) == abs(a + 1)


def test_first_line_bundle_on_the_line_prints_one_plus_t():
    assert str(euler_characteristic(line_bundle(projective_space(1), [1, 0]))) == "t1 + 1"


def test_trivial_bundle_on_the_plane():
    assert str(euler_characteristic(line_bundle(projective_space(2), [0, 0, 0]))) == "1"


SURFACE_LINE_BUNDLES = [
    (fan, values)
    for fan in (projective_space(2), product_of_lines(), hirzebruch(1), hirzebruch(2))
    for values in itertools.product((-3, -1, 0, 2), repeat=fan.n_rays)
    if sum(values) % 4 == 1
]


@pytest.mark.parametrize("fan,values", SURFACE_LINE_BUNDLES)
def test_surface_line_bundles_satisfy_riemann_roch(fan, values):
    assert _total(euler_characteristic(line_bundle(fan, values))) == \
        _riemann_roch_surface(fan, values)


@pytest.mark.parametrize("fan,values", SURFACE_LINE_BUNDLES[::5])
def test_serre_duality_by_character(fan, values):
    """``h^i(L)_u = h^{d-i}(L^* (x) K)_{-u}``."""
    b = line_bundle(fan, values)
    dual = line_bundle(fan, [-a - 1 for a in values])
    table = dict(cohomology_table(b))
    other = dict(cohomology_table(dual))
    assert {tuple(-x for x in u): h[::-1] for u, h in table.items()} == other


@pytest.mark.parametrize("a", range(-6, 3))
def test_line_bundles_on_space(a):
    b = line_bundle(projective_space(3), [0, 0, 0, a])
    assert _total(euler_characteristic(b)) == (a + 1) * (a + 2) * (a + 3) // 6


def test_tangent_plane_has_eight_sections_and_nothing_else():
    b = tangent_bundle(projective_space(2))
    table = cohomology_table(b)
    assert sum(h[0] for _, h in table) == 8
    assert all(h[1] == h[2] == 0 for _, h in table)


def test_euler_characteristic_is_additive():
    fan = hirzebruch(1)
    rows = [[1, -2, 0, 1], [0, 0, -3, 1]]
    total = euler_characteristic(split_bundle(fan, rows))
    parts = [euler_characteristic(line_bundle(fan, r)) for r in rows]
    assert total == parts[0] + parts[1]


@pytest.mark.parametrize("seed", range(6))
def test_degree_zero_matches_sections_and_cochains_bound_cohomology(seed):
    b = seeded_bundle("p2" if seed % 2 else "hirzebruch", seed)
    table = cohomology_table(b)
    assert sum(h[0] for _, h in table) == global_sections(b).total
    assert all(len(h) == b.d + 1 for _, h in table)
    for u, h in table[:5]:
        dims = cech_complex(b, u).dims()
        assert all(x <= y for x, y in zip(h, dims))


def test_twist_by_a_character_shifts_the_table():
    """Twisting by ``(<m, v_i>)_i`` moves every character by ``m``."""
    fan = projective_space(2)
    b = tangent_bundle(fan)
    m = (1, -2)
    shifted = twist(b, [sum(x * y for x, y in zip(m, v)) for v in fan.rays])
    moved = {tuple(a + c for a, c in zip(u, m)): h for u, h in cohomology_table(b)}
    assert dict(cohomology_table(shifted)) == moved


def test_golden_first_cohomology_character():
    assert cohomology_at(golden_bundle("hirzebruch_gg_h1"), (-1, 0)) == [0, 1, 0]


def test_polynomial_printing_and_arithmetic():
    p = LaurentPolynomial.from_dict({(0, 0): 2, (1, -1): -1, (-1, 0): 1, (2, 0): 0})
    assert str(p) == "-t1*t2^-1 + 2 + t1^-1"
    assert len(p) == 3
    assert (p + LaurentPolynomial.from_dict({(0, 0): -2})).as_dict() == {(1, -1): -1, (-1, 0): 1}
    assert str(LaurentPolynomial(())) == "0"
