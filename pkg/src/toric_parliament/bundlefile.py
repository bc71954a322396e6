"""JSON bundle files: 1-indexed rays and cones, rationals as integers or "p/q" text."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import InputError
from .exactlin import Subspace, format_rational, parse_rational
from .fan import Fan
from .klyachko import Filtration, ToricBundle


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise InputError(f"{path}: {message}", path=path)


def _int(value: Any, path: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), path, "expected an integer")
    return value


def _list(value: Any, path: str) -> list:
    _expect(isinstance(value, list), path, "expected a list")
    return value


def _rational(value: Any, path: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"{path}: expected an integer or 'p/q' text", path=path)
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{path}: cannot read {value!r} as a rational", path=path) from None


def bundle_from_data(data: Any) -> ToricBundle:
    _expect(isinstance(data, dict), "$", "expected an object")
    name = data.get("name")
    _expect(name is None or isinstance(name, str), "$.name", "expected text")
    d = _int(data.get("lattice_rank"), "$.lattice_rank")
    _expect(d >= 1, "$.lattice_rank", "must be positive")
    rays = []
    for i, ray in enumerate(_list(data.get("rays"), "$.rays")):
        path = f"$.rays[{i}]"
        ray = _list(ray, path)
        _expect(len(ray) == d, path, f"expected {d} entries")
        rays.append(tuple(_int(x, f"{path}[{k}]") for k, x in enumerate(ray)))
    _expect(bool(rays), "$.rays", "no rays")
    cones = []
    for c, cone in enumerate(_list(data.get("max_cones"), "$.max_cones")):
        path = f"$.max_cones[{c}]"
        idx = [_int(x, f"{path}[{k}]") for k, x in enumerate(_list(cone, path))]
        for k, i in enumerate(idx):
            _expect(1 <= i <= len(rays), f"{path}[{k}]", f"ray index {i} out of range")
        cones.append(tuple(i - 1 for i in idx))
    fan = Fan(tuple(rays), tuple(cones))

    body = data.get("bundle")
    _expect(isinstance(body, dict), "$.bundle", "expected an object")
    r = _int(body.get("rank"), "$.bundle.rank")
    _expect(r >= 1, "$.bundle.rank", "must be positive")
    by_ray: dict[int, Filtration] = {}
    for f_idx, item in enumerate(_list(body.get("filtrations"), "$.bundle.filtrations")):
        path = f"$.bundle.filtrations[{f_idx}]"
        _expect(isinstance(item, dict), path, "expected an object")
        ray = _int(item.get("ray"), f"{path}.ray")
        _expect(1 <= ray <= len(rays), f"{path}.ray", f"ray index {ray} out of range")
        _expect(ray - 1 not in by_ray, f"{path}.ray", f"second filtration for ray {ray}")
        steps = []
        for s_idx, step in enumerate(_list(item.get("steps"), f"{path}.steps")):
            spath = f"{path}.steps[{s_idx}]"
            _expect(isinstance(step, dict), spath, "expected an object")
            through = _int(step.get("through"), f"{spath}.through")
            vectors = []
            for v_idx, row in enumerate(_list(step.get("span"), f"{spath}.span")):
                vpath = f"{spath}.span[{v_idx}]"
                row = _list(row, vpath)
                _expect(len(row) == r, vpath, f"expected {r} entries")
                vectors.append(tuple(_rational(x, f"{vpath}[{k}]") for k, x in enumerate(row)))
            steps.append((through, Subspace.span(vectors, r)))
        try:
            by_ray[ray - 1] = Filtration(ray - 1, tuple(steps))
        except InputError as exc:
            raise InputError(f"{path}: {exc.message}", path=path) from None
    missing = [i + 1 for i in range(len(rays)) if i not in by_ray]
    _expect(not missing, "$.bundle.filtrations", f"no filtration for rays {missing}")
    return ToricBundle(fan, r, tuple(by_ray[i] for i in range(len(rays))), name=name)


def parse_bundle(text: str) -> ToricBundle:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return bundle_from_data(data)


def load_bundle(path: str | Path) -> ToricBundle:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_bundle(text)


def bundle_to_data(bundle: ToricBundle) -> dict:
    """Inverse of :func:`bundle_from_data` up to the choice of spanning rows."""
    data: dict[str, Any] = {}
    if bundle.name is not None:
        data["name"] = bundle.name
    fan = bundle.fan
    data["lattice_rank"] = fan.lattice_rank
    data["rays"] = [list(r) for r in fan.rays]
    data["max_cones"] = [[i + 1 for i in c] for c in fan.max_cones]
    data["bundle"] = {
        "rank": bundle.rank,
        "filtrations": [
            {"ray": f.ray_index + 1,
             "steps": [{"through": j,
                        "span": [[format_rational(x) for x in row] for row in span.basis]}
                       for j, span in f.steps]}
            for f in bundle.filtrations],
    }
    return data


def dump_bundle(bundle: ToricBundle) -> str:
    return json.dumps(bundle_to_data(bundle), indent=2) + "\n"


GOLDEN = ("p1xp1_rank3", "tangent_p2", "p2_ample_not_gg", "hirzebruch_gg_h1",
          "cotangent_p2", "p2_gg_not_very_ample")


def golden_bundle(name: str) -> ToricBundle:
    """One of the bundled example inputs, by file stem."""
    if name not in GOLDEN:
        raise InputError(f"unknown bundled example {name!r}", known=list(GOLDEN))
    text = resources.files("toric_parliament").joinpath("bundles", f"{name}.json").read_text(
        encoding="utf-8")
    return parse_bundle(text)
