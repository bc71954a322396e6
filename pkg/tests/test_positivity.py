import itertools

import pytest

from toric_parliament import golden_bundle
from toric_parliament.fan import hirzebruch, product_of_lines, projective_space, walls
from toric_parliament.positivity import (globally_generated_by_pairing, is_ample_nef,
                                         is_globally_generated, jet_rank_oracle, jets_by_pairing,
                                         positivity_report, restrict_to_curve, restrictions,
                                         separates_k_jets)
from toric_parliament.randgen import (line_bundle, seeded_bundle, split_bundle, tangent_bundle,
                                      twist)

SAMPLE = [seeded_bundle(kind, seed) for kind in ("p2", "hirzebruch", "p3") for seed in range(10)]
IDS = [b.name for b in SAMPLE]


def _intersection_degree(fan, wall, values):
    """``D . D_rho`` for ``D = sum a_i D_i`` on a smooth complete surface: the two
    neighbours contribute ``a_i`` each and ``D_rho^2 = -c`` with ``v' + v'' = c v_rho``."""
    (rho,) = wall.ray_indices
    v = fan.rays[rho]
    s = [a + b for a, b in zip(fan.rays[wall.left_ray], fan.rays[wall.right_ray])]
    c = next(x // y for x, y in zip(s, v) if y)
    return values[wall.left_ray] + values[wall.right_ray] - c * values[rho]


SURFACE_LINE_BUNDLES = [
    (fan, values)
    for fan in (projective_space(2), product_of_lines(), hirzebruch(1), hirzebruch(2))
    for values in itertools.product(range(-1, 3), repeat=fan.n_rays)
    if sum(values) % 3 == 0
]


@pytest.mark.parametrize("fan,values", SURFACE_LINE_BUNDLES)
def test_line_bundle_curve_degrees_and_jets(fan, values):
    b = line_bundle(fan, values)
    expected = {w: _intersection_degree(fan, w, values) for w in walls(fan)}
    for s in restrictions(b):
        assert s.degrees == [expected[s.wall]]
    low = min(expected.values())
    assert is_ample_nef(b) == (low > 0, low >= 0)
    assert is_globally_generated(b)[0] == (low >= 0)
    for k in range(4):
        assert separates_k_jets(b, k)[0] == (low >= k)


@pytest.mark.parametrize("a", range(-2, 5))
def test_line_bundles_on_the_line(a):
    b = line_bundle(projective_space(1), [a, 0])
    (s,) = restrictions(b)
    assert s.degrees == [a]
    for k in range(4):
        assert separates_k_jets(b, k)[0] == (a >= k)


@pytest.mark.parametrize("bundle", SAMPLE, ids=IDS)
def test_jets_are_monotone_in_k(bundle):
    flags = [separates_k_jets(bundle, k)[0] for k in range(4)]
    assert flags == sorted(flags, reverse=True)


@pytest.mark.parametrize("bundle", SAMPLE, ids=IDS)
def test_choice_free_and_pairing_forms_agree(bundle):
    assert is_globally_generated(bundle)[0] == globally_generated_by_pairing(bundle)
    for k in range(3):
        ok = separates_k_jets(bundle, k)[0]
        assert ok == jets_by_pairing(bundle, k)
        if bundle.d == 2:
            assert ok == all(jet_rank_oracle(bundle, c, k)
                             for c in range(len(bundle.fan.max_cones)))


@pytest.mark.parametrize("bundle", SAMPLE, ids=IDS)
def test_report_implications(bundle):
    rep = positivity_report(bundle, max_jet=2)
    assert rep.jets[0] == rep.globally_generated
    if rep.globally_generated:
        assert rep.nef
    if rep.very_ample:
        assert rep.ample
    if rep.ample:
        assert rep.nef
    assert rep.k_jet_ample == rep.jets
    for w in rep.witnesses:
        assert w["kind"] in {"globally_generated", "jets", "curve"}


@pytest.mark.parametrize("bundle", SAMPLE, ids=IDS)
def test_curve_splittings_have_rank_many_summands(bundle):
    for s in restrictions(bundle):
        assert len(s.degrees) == bundle.rank
        for u, u2, a in s.pairs:
            assert tuple(x - y for x, y in zip(u, u2)) == tuple(a * m for m in s.wall.m_tau)


def test_separator_must_be_positive_and_sized():
    b = seeded_bundle("p3", 4)
    wall = walls(b.fan)[0]
    with pytest.raises(ValueError):
        restrict_to_curve(b, wall, separator=(1,))
    with pytest.raises(ValueError):
        restrict_to_curve(b, wall, separator=(1, 0))


def test_split_bundles_on_space_follow_their_summands():
    fan = projective_space(3)
    for degrees in itertools.product(range(-1, 3), repeat=2):
        b = split_bundle(fan, [[0, 0, 0, a] for a in degrees])
        low = min(degrees)
        assert is_globally_generated(b)[0] == (low >= 0)
        assert is_ample_nef(b) == (low > 0, low >= 0)
        assert separates_k_jets(b, 1)[0] == (low >= 1)
        for s in restrictions(b):
            assert s.degrees == sorted(degrees, reverse=True)


@pytest.mark.parametrize("shift", range(-2, 2))
def test_twisted_tangent_plane_nef_iff_globally_generated(shift):
    fan = projective_space(2)
    b = twist(tangent_bundle(fan), [0, 0, shift])
    degrees = sorted(a for s in restrictions(b) for a in s.degrees)
    # the tangent bundle restricts to O(2) + O(1) on every line
    assert set(degrees) == {2 + shift, 1 + shift}
    assert is_ample_nef(b)[1] == is_globally_generated(b)[0]


@pytest.mark.parametrize("values", list(itertools.product(range(-1, 2), repeat=3)))
def test_plane_sums_nef_iff_globally_generated(values):
    fan = projective_space(2)
    b = split_bundle(fan, [[0, 0, values[0]], [0, values[1], values[2]]])
    assert is_ample_nef(b)[1] == is_globally_generated(b)[0]


def test_globally_generated_witness_points_at_a_cone():
    b = golden_bundle("p2_ample_not_gg")
    ok, witness = is_globally_generated(b)
    assert not ok
    assert witness["kind"] == "globally_generated"
    cone = witness["cone"]
    assert 0 <= cone < 3
    rays = b.fan.max_cones[cone]
    assert b.space_at(witness["character"], rays).contains(witness["missing"])
