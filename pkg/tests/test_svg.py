import xml.etree.ElementTree as ET

import pytest

from toric_parliament import golden_bundle
from toric_parliament.bundlefile import GOLDEN
from toric_parliament.parliament import parliament, splittings
from toric_parliament.randgen import seeded_bundle
from toric_parliament.svg import SCALE, render_svg

NS = "{http://www.w3.org/2000/svg}"
PLANAR = [golden_bundle(n) for n in GOLDEN] + [seeded_bundle("hirzebruch", s) for s in range(3)]


def _draw(bundle, highlights=()):
    return render_svg(parliament(bundle), splittings(bundle), highlights)


def _by_class(root, cls):
    return [el for el in root.iter() if el.get("class") == cls]


@pytest.mark.parametrize("bundle", PLANAR, ids=[b.name for b in PLANAR])
def test_drawing_counts_match_the_parliament(bundle):
    root = ET.fromstring(_draw(bundle))
    polys = parliament(bundle)
    assert root.tag == f"{NS}svg"
    assert len(_by_class(root, "polytope")) == sum(not p.empty for p in polys)
    points = {u for p in polys for u in p.lattice_points}
    assert len(_by_class(root, "lattice-point")) == len(points)
    chars = _by_class(root, "character")
    assert len(chars) == sum(len(set(s.characters)) for s in splittings(bundle))
    hollow = sum(1 for s in splittings(bundle) for u in set(s.characters) if u not in points)
    assert sum(el.get("fill") == "#ffffff" for el in chars) == hollow
    legend = [t.text for t in root.iter(f"{NS}text") if t.text and t.text.startswith("P_e")]
    assert len(legend) == len(polys)
    assert sum("(empty)" in t for t in legend) == sum(p.empty for p in polys)


@pytest.mark.parametrize("bundle", PLANAR[:3], ids=[b.name for b in PLANAR[:3]])
def test_drawing_is_deterministic(bundle):
    assert _draw(bundle) == _draw(bundle)


def test_polygon_vertices_sit_on_the_grid():
    b = golden_bundle("tangent_p2")
    root = ET.fromstring(_draw(b))
    for el in _by_class(root, "polytope"):
        if el.tag == f"{NS}polygon":
            xs = [float(pair.split(",")[0]) for pair in el.get("points").split()]
            assert all(abs((x - xs[0]) / SCALE - round((x - xs[0]) / SCALE)) < 1e-9
                       for x in xs)


def test_highlights_are_drawn():
    b = golden_bundle("hirzebruch_gg_h1")
    root = ET.fromstring(_draw(b, highlights=[(-1, 0)]))
    assert len(_by_class(root, "highlight")) == 1


def test_only_planar_lattices_are_drawn():
    b = seeded_bundle("p3", 1)
    with pytest.raises(ValueError):
        _draw(b)
