"""File formats: profile and filter CSVs plus versioned JSON documents.

CSV layouts
    profiles   ``r,re,im`` (radial) or ``lambda,re,im`` (spectral) on a
               midpoint grid r_i = (i + 1/2) h
    filters    ``n,g_re,g_im``
    cwt        ``r,a,re,im``

Every JSON document carries ``"schema": 1``.  Scaling functions, wavelets and
analyzing profiles are stored as recipes that rebuild the object.
"""
from __future__ import annotations

import csv
import io as _stdio
import json
import math
from pathlib import Path

import numpy as np

from .filters import CosineFilter
from .fwt import CoefficientPyramid, PyramidError
from .mra import ScalingFunction, from_classical, hat_spline, meyer, orthogonalize, shannon
from .profiles import Profile, ProfileError, RadialGrid, gaussian, indicator

SCHEMA = 1

__all__ = [
    "SCHEMA",
    "SchemaError",
    "read_profile_csv",
    "write_profile_csv",
    "read_filter_csv",
    "write_filter_csv",
    "write_cwt_csv",
    "read_json",
    "write_json",
    "scaling_from_recipe",
    "profile_from_json",
    "profile_to_json",
    "pyramid_to_json",
    "pyramid_from_json",
    "coeffs_from_json",
    "coeffs_to_json",
    "complex_to_pairs",
]

_COLUMNS = {"radial": ("r", "re", "im"), "spectral": ("lambda", "re", "im")}


class SchemaError(ValueError):
    """Input that does not follow the documented layout."""


def _rows(path, header):
    text = Path(path).read_text()
    if not text.strip():
        raise SchemaError(f"{path}: empty file")
    reader = csv.reader(_stdio.StringIO(text))
    head = [h.strip() for h in next(reader)]
    if tuple(head) not in header:
        raise SchemaError(f"{path}: header {','.join(head)!r}, expected one of "
                          + "; ".join(",".join(h) for h in header))
    rows = [r for r in reader if r and any(c.strip() for c in r)]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    try:
        data = np.array([[float(c) for c in r] for r in rows])
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric entry ({exc})") from None
    if data.ndim != 2 or data.shape[1] != len(head):
        raise SchemaError(f"{path}: rows must have {len(head)} columns")
    if not np.all(np.isfinite(data)):
        raise SchemaError(f"{path}: non-finite entry")
    return tuple(head), data


def _grid_from_points(x, path):
    n = x.size
    if n < 2:
        raise SchemaError(f"{path}: at least two samples are needed")
    h = 2.0 * x[0]
    if h <= 0 or not np.allclose(x, (np.arange(n) + 0.5) * h, rtol=1e-9, atol=1e-12 * h):
        raise SchemaError(f"{path}: abscissae must be the midpoints (i + 1/2) h of a uniform grid")
    return RadialGrid(h * n, n)


def read_profile_csv(path) -> Profile:
    head, data = _rows(path, set(_COLUMNS.values()))
    kind = "radial" if head[0] == "r" else "spectral"
    grid = _grid_from_points(data[:, 0], path)
    vals = data[:, 1] + 1j * data[:, 2]
    if not np.any(data[:, 2]):
        vals = data[:, 1]
    return Profile(grid=grid, values=vals, kind=kind, tag=Path(path).stem)


def write_profile_csv(path, profile: Profile, grid: RadialGrid | None = None):
    grid = grid if grid is not None else profile.grid
    vals = np.asarray(profile.samples(grid), dtype=complex)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(_COLUMNS[profile.kind])
        for x, v in zip(grid.points, vals):
            w.writerow([repr(float(x)), repr(float(v.real)), repr(float(v.imag))])


def read_filter_csv(path) -> CosineFilter:
    _, data = _rows(path, {("n", "g_re", "g_im")})
    n = data[:, 0]
    if not np.array_equal(n, np.arange(n.size)):
        raise SchemaError(f"{path}: n must run 0, 1, 2, ... without gaps")
    return CosineFilter(data[:, 1] + 1j * data[:, 2], orthonormal=True, name=Path(path).stem)


def write_filter_csv(path, G: CosineFilter):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "g_re", "g_im"])
        for n, g in enumerate(G.g):
            w.writerow([n, repr(float(g.real)), repr(float(g.imag))])


def write_cwt_csv(path, r, a, values):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "a", "re", "im"])
        for i, ri in enumerate(r):
            for m, am in enumerate(a):
                v = values[i, m]
                w.writerow([repr(float(ri)), repr(float(am)), repr(float(v.real)), repr(float(v.imag))])


def write_table_csv(path, header, columns):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in zip(*columns):
            w.writerow([repr(float(v)) for v in row])


# -- JSON -----------------------------------------------------------------

def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def write_json(path, doc: dict):
    out = {"schema": SCHEMA}
    out.update(doc)
    Path(path).write_text(json.dumps(_clean(out), indent=2) + "\n")


def read_json(path, expect_type: str | None = None) -> dict:
    text = Path(path).read_text()
    if not text.strip():
        raise SchemaError(f"{path}: empty file")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be an object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"{path}: missing or unsupported schema version {doc.get('schema')!r}")
    if expect_type is not None and doc.get("type") != expect_type:
        raise SchemaError(f"{path}: expected type {expect_type!r}, got {doc.get('type')!r}")
    return doc


def _need(doc, key, path="input"):
    if key not in doc:
        raise SchemaError(f"{path}: missing field {key!r}")
    return doc[key]


def profile_from_json(doc: dict) -> Profile:
    """Analyzing or input profile.

    Either sampled, ``{grid: {r_max, n_points}, kind, values: [[re, im], ...]}``,
    or a ``form`` among gaussian {width}, indicator {a, b} and zero.
    """
    kind = doc.get("kind", "spectral")
    if kind not in _COLUMNS:
        raise SchemaError(f"unknown profile kind {kind!r}")
    if "grid" in doc:
        gd = doc["grid"]
        try:
            grid = RadialGrid(float(_need(gd, "r_max", "grid")), int(_need(gd, "n_points", "grid")))
        except (TypeError, ValueError, ProfileError) as exc:
            raise SchemaError(f"grid: {exc}") from None
        vals = _pairs_to_complex(_need(doc, "values"), "values")
        if vals.size != grid.n_points:
            raise SchemaError(f"values: {vals.size} samples for a grid of {grid.n_points}")
        return Profile(grid=grid, values=vals if np.any(vals.imag) else vals.real, kind=kind)
    form = _need(doc, "form")
    if form == "gaussian":
        return gaussian(kind, float(doc.get("width", 1.0)))
    if form == "indicator":
        return indicator(float(_need(doc, "a")), float(_need(doc, "b")), kind)
    if form == "zero":
        return Profile(lambda x: np.zeros_like(np.asarray(x, dtype=float)), kind=kind, tag="zero",
                       support=(0.0, 1.0))
    raise SchemaError(f"unknown profile form {form!r}")


def profile_to_json(p: Profile) -> dict:
    if p.tag == "gaussian":
        return {"type": "profile", "kind": p.kind, "form": "gaussian", "width": p.params.get("width", 1.0)}
    if p.tag == "indicator":
        return {"type": "profile", "kind": p.kind, "form": "indicator", "a": p.params["a"], "b": p.params["b"]}
    if p.is_tabulated:
        return {"type": "profile", "kind": p.kind,
                "grid": {"r_max": p.grid.r_max, "n_points": p.grid.n_points},
                "values": complex_to_pairs(p.values)}
    raise ProfileError("only builtin or tabulated profiles can be serialized")


def scaling_from_recipe(recipe: dict) -> ScalingFunction:
    """Rebuild a scaling function from its recipe.

    kinds: shannon, meyer {smoothness}, hat-spline {n_max},
    from-classical {xi, F, band_limit | extent, breakpoints},
    orthogonalize {base, n_max}.
    """
    kind = _need(recipe, "kind", "recipe")
    if kind == "shannon":
        return shannon()
    if kind == "meyer":
        return meyer(int(recipe.get("smoothness", 7)))
    if kind == "hat-spline":
        return hat_spline(int(recipe.get("n_max", 64)))
    if kind == "from-classical":
        xi = np.asarray(_need(recipe, "xi", "recipe"), dtype=float)
        F = np.asarray(_need(recipe, "F", "recipe"), dtype=float)
        if xi.shape != F.shape or xi.size < 4:
            raise SchemaError("from-classical needs matching xi and F arrays of length >= 4")
        if np.any(np.diff(xi) <= 0) or xi[0] < 0:
            raise SchemaError("xi must be increasing and nonnegative")
        band = recipe.get("band_limit")
        ext = recipe.get("extent")
        x_end = xi[-1]

        def spectrum(x):
            x = np.abs(np.asarray(x, dtype=float))
            return np.where(x <= x_end, np.interp(x, xi, F), 0.0)

        return from_classical(spectrum, band_limit=band, extent=ext,
                              breakpoints=recipe.get("breakpoints", ()), name="from-classical")
    if kind == "orthogonalize":
        base = scaling_from_recipe(_need(recipe, "base", "recipe"))
        return orthogonalize(base, recipe.get("n_max"))
    raise SchemaError(f"unknown scaling kind {kind!r}")


def _pairs_to_complex(pairs, what="coefficients") -> np.ndarray:
    try:
        arr = np.asarray(pairs, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{what}: entries must be [re, im] number pairs") from None
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] == 0:
        raise SchemaError(f"{what}: expected a nonempty list of [re, im] pairs")
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{what}: non-finite entry")
    return arr[:, 0] + 1j * arr[:, 1]


def complex_to_pairs(v):
    v = np.asarray(v, dtype=complex)
    return np.stack([v.real, v.imag], axis=1)


def coeffs_from_json(doc: dict) -> np.ndarray:
    """``{"c": [[re, im], ...]}``."""
    return _pairs_to_complex(_need(doc, "c"))


def coeffs_to_json(c, j: int = 0) -> dict:
    return {"type": "coefficients", "j": j, "c": complex_to_pairs(c)}


def pyramid_to_json(p: CoefficientPyramid) -> dict:
    """``{j_top, depth, K, levels: [{c, d}, ...]}``, finest level first; K holds each level's input length."""
    levels = [{"c": complex_to_pairs(a), "d": complex_to_pairs(d)} for a, d in zip(p.approx, p.details)]
    return {"type": "pyramid", "j_top": p.j_top, "depth": p.depth, "K": list(p.lengths), "levels": levels}


def pyramid_from_json(doc: dict) -> CoefficientPyramid:
    levels = _need(doc, "levels")
    if not isinstance(levels, list):
        raise SchemaError("pyramid: levels must be a list")
    try:
        approx = [_pairs_to_complex(_need(lv, "c"), "pyramid level c") for lv in levels]
        details = [_pairs_to_complex(_need(lv, "d"), "pyramid level d") for lv in levels]
        return CoefficientPyramid(int(_need(doc, "j_top")), int(_need(doc, "depth")),
                                  [int(n) for n in _need(doc, "K")], approx, details)
    except (PyramidError, TypeError) as exc:
        raise SchemaError(f"pyramid: {exc}") from None
