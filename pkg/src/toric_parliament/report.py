"""JSON-ready records for every analysis, 1-indexed and in a fixed field order."""

from __future__ import annotations

from typing import Any, Sequence

from .cohomology import cohomology_at, cohomology_table, euler_characteristic
from .exactlin import format_rational
from .fan import Wall
from .klyachko import ConeSplitting, ToricBundle, check_compatible
from .matroid import bundle_ground_set, intersection_lattice
from .parliament import ParliamentPolytope, global_sections, parliament, splittings
from .positivity import CurveSplitting, PositivityReport, positivity_report, restrictions


def _vec(v: Sequence) -> list:
    return [format_rational(x) for x in v]


def vector_key(e: Sequence[int]) -> str:
    return ",".join(str(x) for x in e)


def fan_record(bundle: ToricBundle) -> dict:
    fan = bundle.fan
    return {"lattice_rank": fan.lattice_rank,
            "rays": [list(r) for r in fan.rays],
            "max_cones": [[i + 1 for i in c] for c in fan.max_cones],
            "validation": fan.report.to_json()}


def validate_record(bundle: ToricBundle) -> dict:
    bundle.fan.require_valid()
    check_compatible(bundle)
    return {"name": bundle.name, "ok": True, "rank": bundle.rank, "fan": fan_record(bundle),
            "compatible": True}


def lattice_record(bundle: ToricBundle) -> dict:
    lattice = intersection_lattice(bundle)
    ground = bundle_ground_set(bundle)
    members = [{"index": k + 1, "dim": m.dim, "basis": [_vec(row) for row in m.basis]}
               for k, m in enumerate(lattice.members)]
    flats = {}
    for e in ground.vectors:
        flats[vector_key(e)] = [k + 1 for k, m in enumerate(lattice.members) if m.contains(e)]
    return {"members": members, "ground_set": flats}


def polytope_record(p: ParliamentPolytope) -> dict:
    return {"vector": list(p.vector), "bounds": list(p.bounds), "empty": p.empty,
            "dimension": p.dimension,
            "vertices": [_vec(v) for v in p.vertices],
            "lattice_points": [list(u) for u in p.lattice_points]}


def splitting_record(bundle: ToricBundle, s: ConeSplitting) -> dict:
    return {"cone": s.cone + 1,
            "rays": [i + 1 for i in bundle.fan.max_cones[s.cone]],
            "pairs": [{"character": list(u), "vector": list(e)} for u, e in s.entries]}


def parliament_record(bundle: ToricBundle) -> dict:
    return {"name": bundle.name,
            "polytopes": [polytope_record(p) for p in parliament(bundle)],
            "splittings": [splitting_record(bundle, s) for s in splittings(bundle)]}


def sections_record(bundle: ToricBundle) -> dict:
    table = global_sections(bundle)
    return {"h0": table.total,
            "characters": [{"character": list(u), "dim": n} for u, n in table.entries]}


def wall_label(w: Wall) -> dict:
    return {"rays": [i + 1 for i in w.ray_indices], "cones": [w.left_cone + 1, w.right_cone + 1],
            "m_tau": list(w.m_tau), "v_tau": list(w.v_tau)}


def _witness(w: dict) -> dict:
    out: dict[str, Any] = {}
    for key, value in w.items():
        if key == "cone":
            out[key] = value + 1
        elif key == "wall":
            out[key] = [i + 1 for i in value.ray_indices]
        elif isinstance(value, tuple):
            out[key] = _vec(value)
        else:
            out[key] = value
    return out


def positivity_record(report: PositivityReport) -> dict:
    return {"globally_generated": report.globally_generated,
            "jets": {str(k): v for k, v in sorted(report.jets.items())},
            "very_ample": report.very_ample,
            "k_jet_ample": {str(k): v for k, v in sorted(report.k_jet_ample.items())},
            "ample": report.ample,
            "nef": report.nef,
            "witnesses": [_witness(w) for w in report.witnesses]}


def restriction_record(s: CurveSplitting) -> dict:
    return {"wall": wall_label(s.wall), "separator": list(s.separator), "degrees": s.degrees,
            "pairs": [{"u": list(u), "u_prime": list(u2), "degree": a} for u, u2, a in s.pairs]}


def restrictions_record(bundle: ToricBundle) -> list[dict]:
    return [restriction_record(s) for s in restrictions(bundle)]


def cohomology_record(bundle: ToricBundle, euler: bool = True) -> dict:
    table = cohomology_table(bundle)
    out: dict[str, Any] = {
        "nonzero": [{"character": list(u), "h": h} for u, h in table],
        "totals": [sum(h[i] for _, h in table) for i in range(bundle.d + 1)],
    }
    if euler:
        out["euler_characteristic"] = str(euler_characteristic(bundle))
    return out


def character_record(bundle: ToricBundle, u: Sequence[int]) -> dict:
    return {"character": list(u), "h": cohomology_at(bundle, u)}


def higher_cohomology_characters(bundle: ToricBundle) -> list[tuple[int, ...]]:
    return [u for u, h in cohomology_table(bundle) if any(h[1:])]


def full_report(bundle: ToricBundle, max_jet: int = 1, with_cohomology: bool = True) -> dict:
    bundle.fan.require_valid()
    check_compatible(bundle)
    out = {"name": bundle.name,
           "fan": fan_record(bundle),
           "rank": bundle.rank,
           "lattice": lattice_record(bundle),
           "sections": sections_record(bundle),
           "parliament": [polytope_record(p) for p in parliament(bundle)],
           "splittings": [splitting_record(bundle, s) for s in splittings(bundle)],
           "positivity": positivity_record(positivity_report(bundle, max_jet)),
           "restrictions": restrictions_record(bundle)}
    if with_cohomology:
        out["cohomology"] = cohomology_record(bundle)
    return out


def _scalar(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def to_text(record: Any, prefix: str = "") -> str:
    """Flatten a record into ``path<TAB>value`` lines; scalar lists become comma lists."""
    lines: list[str] = []

    def walk(value: Any, path: str) -> None:
        if isinstance(value, dict):
            for key, item in value.items():
                walk(item, f"{path}.{key}" if path else str(key))
        elif isinstance(value, list) and all(not isinstance(x, (dict, list)) for x in value):
            lines.append(f"{path}\t{','.join(_scalar(x) for x in value)}")
        elif isinstance(value, list):
            for k, item in enumerate(value):
                walk(item, f"{path}[{k + 1}]")
        else:
            lines.append(f"{path}\t{_scalar(value)}")

    walk(record, prefix)
    return "\n".join(lines) + "\n"
