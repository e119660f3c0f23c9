"""JSON fan and bundle files, polynomial lists, and deterministic report output."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .fan import Fan
from .projectivization import BundleSpec, ProjectivizedFan, projectivize


class FormatError(ValueError):
    """Malformed input file; the message names the file and the field or line."""


def _load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def _int_vector(value, where: str, length: int | None = None) -> list[int]:
    if not isinstance(value, list):
        raise FormatError(f"{where}: expected a list of integers")
    out = []
    for k, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, int):
            raise FormatError(f"{where}[{k}]: expected an integer, got {x!r}")
        out.append(x)
    if length is not None and len(out) != length:
        raise FormatError(f"{where}: expected {length} entries, got {len(out)}")
    return out


def fan_from_dict(data: Any, where: str = "fan") -> Fan:
    if not isinstance(data, dict):
        raise FormatError(f"{where}: expected a JSON object")
    for key in ("rank", "rays", "max_cones"):
        if key not in data:
            raise FormatError(f"{where}: missing field '{key}'")
    rank = data["rank"]
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
        raise FormatError(f"{where}.rank: expected a positive integer")
    if not isinstance(data["rays"], list):
        raise FormatError(f"{where}.rays: expected a list of rays")
    rays = [_int_vector(r, f"{where}.rays[{i}]", rank) for i, r in enumerate(data["rays"])]
    if not isinstance(data["max_cones"], list):
        raise FormatError(f"{where}.max_cones: expected a list of index lists")
    cones = []
    for c, cone in enumerate(data["max_cones"]):
        idx = _int_vector(cone, f"{where}.max_cones[{c}]")
        for k, i in enumerate(idx):
            if not 0 <= i < len(rays):
                raise FormatError(f"{where}.max_cones[{c}][{k}]: ray index {i} out of range 0..{len(rays) - 1}")
        cones.append(idx)
    return Fan(rank, rays, cones)


def load_fan(path: str | Path) -> Fan:
    return fan_from_dict(_load_json(path), where=str(path))


def bundle_from_dict(data: Any, n_rays: int | None, where: str = "bundle") -> BundleSpec:
    if not isinstance(data, dict) or "divisors" not in data:
        raise FormatError(f"{where}: expected an object with a 'divisors' list")
    divs = data["divisors"]
    if not isinstance(divs, list):
        raise FormatError(f"{where}.divisors: expected a list of coefficient vectors")
    if len(divs) < 2:
        raise FormatError(f"{where}.divisors: need at least 2 line bundles, got {len(divs)}")
    return BundleSpec([_int_vector(d, f"{where}.divisors[{j}]", n_rays) for j, d in enumerate(divs)])


def load_bundle(path: str | Path, n_rays: int | None = None) -> BundleSpec:
    return bundle_from_dict(_load_json(path), n_rays, where=str(path))


def projectivized_to_dict(P: ProjectivizedFan) -> dict:
    out = P.fan.to_dict()
    out["labels"] = P.labels()
    out["projectivization"] = {"base": P.base.to_dict(), "bundle": P.bundle.to_dict()}
    return out


def load_projectivized(path: str | Path) -> ProjectivizedFan:
    """Re-build a ProjectivizedFan from a file written by ``projectivize``.

    The stored rays and cones must match a fresh projectivization exactly.
    """
    data = _load_json(path)
    where = str(path)
    fan = fan_from_dict(data, where)
    meta = data.get("projectivization")
    if not isinstance(meta, dict) or "base" not in meta or "bundle" not in meta:
        raise FormatError(f"{where}: missing 'projectivization' block (base fan and bundle)")
    base = fan_from_dict(meta["base"], f"{where}.projectivization.base")
    bundle = bundle_from_dict(meta["bundle"], base.n_rays, f"{where}.projectivization.bundle")
    P = projectivize(base, bundle)
    if P.fan != fan:
        raise FormatError(f"{where}: rays/max_cones do not match the projectivization of the stored base and bundle")
    labels = data.get("labels")
    if labels is not None and labels != P.labels():
        raise FormatError(f"{where}.labels: expected {P.labels()}")
    return P


def load_polynomials(path: str | Path) -> list[tuple[int, str]]:
    """``(line number, text)`` per polynomial; blanks and ``#`` comments skipped."""
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise FormatError(f"{path}: cannot read file ({exc.strerror})") from exc
    out = []
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if text:
            out.append((lineno, text))
    return out


def dumps(obj: Any) -> str:
    """Byte-stable JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
