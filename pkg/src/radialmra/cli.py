"""Command-line front end.

Exit codes: 0 success with all tolerances met, 1 a tolerance was missed,
2 malformed input, 3 a computation error.  Errors are reported as one JSON
object on stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import _kernels, io
from .cwt import (CwtGrid, FrameSpec, NotAdmissibleError, admissibility, build_frame, cwt,
                  cwt_energy, frame_energy, lattice_bounds, random_band_limited)
from .filters import CosineFilter, FilterError
from .fwt import decompose, qr_coefficients, reconstruct
from .hankel import hankel
from .hypergroup import translate_general, translate_half
from .mra import extract_filter, gram_matrix, periodize, validate_mra
from .profiles import ProfileError
from .wavelet import build_wavelet

EXIT_OK, EXIT_TOLERANCE, EXIT_SCHEMA, EXIT_COMPUTE = 0, 1, 2, 3


class ToleranceFailure(Exception):
    pass


def load_tolerances(override: str | None = None) -> dict:
    tol = json.loads(resources.files("radialmra").joinpath("tolerances.json").read_text())
    if override:
        extra = json.loads(Path(override).read_text())
        unknown = set(extra) - set(tol)
        if unknown:
            raise io.SchemaError(f"unknown tolerance keys: {sorted(unknown)}")
        tol.update(extra)
    return tol


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def _load_phi(path):
    doc = io.read_json(path, "scaling")
    return io.scaling_from_recipe(io._need(doc, "recipe", str(path))), doc


# -- subcommands ----------------------------------------------------------

def cmd_hankel(args, tol):
    f = io.read_profile_csv(args.inp)
    want = "spectral" if args.inverse else "radial"
    if f.kind != want:
        raise io.SchemaError(f"{args.inp}: expected a {want} profile for this direction")
    F = hankel(args.alpha, f)
    io.write_profile_csv(args.out, F)


def cmd_translate(args, tol):
    f = io.read_profile_csv(args.inp)
    if f.kind != "radial":
        raise io.SchemaError(f"{args.inp}: translation acts on radial profiles")
    g = translate_half(f, args.r) if args.alpha == 0.5 else translate_general(args.alpha, f, args.r)
    io.write_profile_csv(args.out, g)


def cmd_scaling_build(args, tol):
    if args.kind == "from-classical":
        if not args.spec:
            raise io.SchemaError("--spec is required for from-classical")
        recipe = io.read_json(args.spec)
        recipe["kind"] = "from-classical"
    else:
        recipe = {"kind": args.kind}
        if args.spec:
            recipe.update({k: v for k, v in io.read_json(args.spec).items() if k not in ("schema", "kind")})
    phi = io.scaling_from_recipe(recipe)
    recipe.pop("schema", None)
    io.write_json(args.out, {"type": "scaling", "name": phi.name, "orthonormal": phi.orthonormal,
                             "recipe": recipe})


def cmd_scaling_orthogonalize(args, tol):
    phi, doc = _load_phi(args.inp)
    recipe = {"kind": "orthogonalize", "base": doc["recipe"]}
    if args.n_max:
        recipe["n_max"] = args.n_max
    star = io.scaling_from_recipe(recipe)
    P = periodize(star)
    dev = float(np.max(np.abs(P.values - 1.0)))
    io.write_json(args.out, {"type": "scaling", "name": star.name, "orthonormal": True,
                             "recipe": recipe, "periodization_deviation": dev})
    if dev >= tol["periodization_after"]:
        raise ToleranceFailure(f"sup|P - 1| = {dev:.3g} after orthogonalization")


def cmd_scaling_validate(args, tol):
    phi, _ = _load_phi(args.inp)
    rep = validate_mra(phi, tol=tol["mra"])
    rep["name"] = phi.name
    io.write_json(args.report, {"type": "mra-report", **rep})
    if not rep["passed"]:
        raise ToleranceFailure("MRA conditions not met")


def cmd_filter_extract(args, tol):
    phi, _ = _load_phi(args.inp)
    G = extract_filter(phi, n_coeffs=args.n, tol=tol["mra"])
    io.write_filter_csv(args.out, G)


def _filter_with_exact(G: CosineFilter, phi):
    """Attach the closed-form filter of ``phi`` when the CSV holds its coefficients."""
    try:
        ref = extract_filter(phi, n_coeffs=G.N)
    except FilterError:
        return G
    if np.max(np.abs(ref.g - G.g)) < 1e-10:
        return ref
    return G


def cmd_wavelet_build(args, tol):
    phi, doc = _load_phi(args.phi)
    G = _filter_with_exact(io.read_filter_csv(args.filter), phi)
    psi = build_wavelet(phi, G, tol=tol["mra"])
    lam = (np.arange(1024) + 0.5) * (2.0 * phi.upper / 1024)
    v = np.asarray(psi(lam), dtype=complex)
    io.write_json(args.out, {"type": "wavelet", "name": psi.name, "phi": doc["recipe"],
                             "filter": io.complex_to_pairs(G.g),
                             "closed_form_filter": G.exact is not None,
                             "spectrum": {"lambda": lam, "values": io.complex_to_pairs(v)}})


def cmd_fwt_decompose(args, tol):
    G = io.read_filter_csv(args.filter)
    doc = io.read_json(args.inp)
    c = io.coeffs_from_json(doc)
    pyr = decompose(c, G, depth=args.depth, j_top=int(doc.get("j", 0)))
    io.write_json(args.out, io.pyramid_to_json(pyr))


def cmd_fwt_reconstruct(args, tol):
    G = io.read_filter_csv(args.filter)
    pyr = io.pyramid_from_json(io.read_json(args.inp, "pyramid"))
    if args.depth is not None and args.depth != pyr.depth:
        raise io.SchemaError(f"--depth {args.depth} does not match the pyramid depth {pyr.depth}")
    c = reconstruct(pyr, G)
    io.write_json(args.out, io.coeffs_to_json(c, pyr.j_top))


def cmd_fwt_qr(args, tol):
    G = io.read_filter_csv(args.filter)
    q, r = qr_coefficients(G, args.ell, args.k)
    print(f"q {q.real:.15g} {q.imag:.15g}")
    print(f"r {r.real:.15g} {r.imag:.15g}")


def _grid_from_json(doc) -> CwtGrid:
    keys = ("r_max", "n_r", "a_min", "a_max", "n_a")
    kw = {k: doc[k] for k in keys if k in doc}
    try:
        kw = {k: (int(v) if k.startswith("n_") else float(v)) for k, v in kw.items()}
    except (TypeError, ValueError) as exc:
        raise io.SchemaError(f"grid: {exc}") from None
    return CwtGrid.log_uniform(alpha=doc.get("alpha", 0.5), **kw)


def cmd_cwt_run(args, tol):
    g = io.profile_from_json(io.read_json(args.g, "profile"))
    f = io.profile_from_json(io.read_json(args.f, "profile"))
    gdoc = io.read_json(args.grid, "cwt-grid")
    gdoc["alpha"] = args.alpha
    grid = _grid_from_json(gdoc)
    vals = cwt(f, g, args.alpha, grid)
    io.write_cwt_csv(args.out, grid.r, grid.a, vals)
    E = cwt_energy(vals, grid)
    try:
        Cg = admissibility(g, args.alpha)
    except NotAdmissibleError:
        Cg = float("inf")
    print(json.dumps(io._clean({"energy_raw": E["raw"], "energy": E["corrected"], "C_g": Cg})))


def _frame_spec(doc, alpha) -> FrameSpec:
    if "Q" in doc:
        Q = doc["Q"]
    elif "base" in doc:
        k0 = int(doc.get("k0", 3))
        Q = [float(doc["base"]) ** k for k in range(-k0, k0 + 1)]
    else:
        raise io.SchemaError("frame spec needs Q or base")
    return FrameSpec(alpha, float(io._need(doc, "l")), Q, int(doc.get("n_max", 512)))


def cmd_frame_check(args, tol):
    g = io.profile_from_json(io.read_json(args.g, "profile"))
    sdoc = io.read_json(args.spec, "frame-spec")
    spec = _frame_spec(sdoc, args.alpha)
    frame = build_frame(g, spec, tol=tol["support"])
    A, B, Al, Bl = frame.bounds
    rng = np.random.default_rng(args.seed)
    lo, hi = sdoc.get("f_support", [0.5, 4.0])
    ratios = [frame_energy(random_band_limited(rng, lo, hi), frame)["ratio"] for _ in range(args.trials)]
    t = tol["frame_ratio"]
    ok = all(Al * (1 - t) <= x <= Bl * (1 + t) for x in ratios)
    report = {"type": "frame-report", "A_est": Al, "B_est": Bl, "l": spec.l, "alpha": spec.alpha,
              "energy_ratio": float(np.mean(ratios)), "energy_ratios": ratios,
              "lattice_sum_bounds": [A, B], "seed": args.seed, "sandwich_holds": ok}
    base = sdoc.get("base")
    if base is not None:
        try:
            report["lattice_bound"] = lattice_bounds(g, float(base), args.alpha)
            ok = ok and report["lattice_bound"]["holds"]
        except ValueError as exc:
            report["lattice_bound"] = {"error": str(exc)}
    io.write_json(args.report, report)
    if not ok:
        raise ToleranceFailure("frame sandwich or lattice bound violated")


def cmd_plotdata(args, tol):
    if args.what == "filter-identity":
        if str(args.inp).endswith(".csv"):
            G = io.read_filter_csv(args.inp)
        else:
            G = extract_filter(_load_phi(args.inp)[0])
        lam = np.linspace(0.0, 1.0, args.points)
        a, b = np.abs(G(lam)) ** 2, np.abs(G(lam + 1.0)) ** 2
        io.write_table_csv(args.out, ["lambda", "G2", "G2_shift", "sum"], [lam, a, b, a + b])
        return
    phi, _ = _load_phi(args.inp)
    if args.what == "gram":
        M = gram_matrix(phi, args.K)
        k, l = np.meshgrid(np.arange(1, args.K + 1), np.arange(1, args.K + 1), indexing="ij")
        io.write_table_csv(args.out, ["k", "l", "re", "im"], [k.ravel(), l.ravel(), M.real.ravel(), M.imag.ravel()])
    else:
        P = periodize(phi, args.points)
        io.write_table_csv(args.out, ["lambda", "P"], [P.lam, P.values])


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="radialmra", description="Radial multiresolution analysis tools.")
    p.add_argument("--threads", type=int, default=None,
                   help="worker cap for compiled loops (fallback: RADIAL_MRA_THREADS)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized test data")
    p.add_argument("--tolerances", default=None, help="JSON file overriding tolerances.json entries")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hankel", help="Hankel transform of a sampled profile")
    h.add_argument("--alpha", type=float, default=0.5)
    h.add_argument("--in", dest="inp", required=True)
    h.add_argument("--out", required=True)
    h.add_argument("--inverse", action="store_true")
    h.set_defaults(func=cmd_hankel)

    t = sub.add_parser("translate", help="hypergroup translation T_r f")
    t.add_argument("--alpha", type=float, default=0.5)
    t.add_argument("--r", type=float, required=True)
    t.add_argument("--in", dest="inp", required=True)
    t.add_argument("--out", required=True)
    t.set_defaults(func=cmd_translate)

    s = sub.add_parser("scaling", help="scaling functions").add_subparsers(dest="action", required=True)
    sb = s.add_parser("build")
    sb.add_argument("--kind", choices=["shannon", "meyer", "hat-spline", "from-classical"], required=True)
    sb.add_argument("--spec", default=None)
    sb.add_argument("--out", required=True)
    sb.set_defaults(func=cmd_scaling_build)
    so = s.add_parser("orthogonalize")
    so.add_argument("--in", dest="inp", required=True)
    so.add_argument("--out", required=True)
    so.add_argument("--n-max", type=int, default=None)
    so.set_defaults(func=cmd_scaling_orthogonalize)
    sv = s.add_parser("validate")
    sv.add_argument("--in", dest="inp", required=True)
    sv.add_argument("--report", required=True)
    sv.set_defaults(func=cmd_scaling_validate)

    f = sub.add_parser("filter", help="filter functions").add_subparsers(dest="action", required=True)
    fe = f.add_parser("extract")
    fe.add_argument("--in", dest="inp", required=True)
    fe.add_argument("--n", type=int, default=64)
    fe.add_argument("--out", required=True)
    fe.set_defaults(func=cmd_filter_extract)

    w = sub.add_parser("wavelet", help="wavelets").add_subparsers(dest="action", required=True)
    wb = w.add_parser("build")
    wb.add_argument("--phi", required=True)
    wb.add_argument("--filter", required=True)
    wb.add_argument("--out", required=True)
    wb.set_defaults(func=cmd_wavelet_build)

    fw = sub.add_parser("fwt", help="fast wavelet transform").add_subparsers(dest="action", required=True)
    for name, fn in (("decompose", cmd_fwt_decompose), ("reconstruct", cmd_fwt_reconstruct)):
        c = fw.add_parser(name)
        c.add_argument("--filter", required=True)
        c.add_argument("--in", dest="inp", required=True)
        c.add_argument("--depth", type=int, default=1 if name == "decompose" else None)
        c.add_argument("--out", required=True)
        c.set_defaults(func=fn)
    q = fw.add_parser("qr")
    q.add_argument("--filter", required=True)
    q.add_argument("--ell", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.set_defaults(func=cmd_fwt_qr)

    cw = sub.add_parser("cwt", help="continuous wavelet transform").add_subparsers(dest="action", required=True)
    cr = cw.add_parser("run")
    cr.add_argument("--alpha", type=float, default=0.5)
    cr.add_argument("--g", required=True)
    cr.add_argument("--f", required=True)
    cr.add_argument("--grid", required=True)
    cr.add_argument("--out", required=True)
    cr.set_defaults(func=cmd_cwt_run)

    fr = sub.add_parser("frame", help="Bessel frames").add_subparsers(dest="action", required=True)
    fc = fr.add_parser("check")
    fc.add_argument("--alpha", type=float, default=0.5)
    fc.add_argument("--g", required=True)
    fc.add_argument("--spec", required=True)
    fc.add_argument("--report", required=True)
    fc.add_argument("--trials", type=int, default=20)
    fc.set_defaults(func=cmd_frame_check)

    pd = sub.add_parser("plotdata", help="figure-ready tables")
    pd.add_argument("--what", choices=["gram", "periodization", "filter-identity"], required=True)
    pd.add_argument("--in", dest="inp", required=True)
    pd.add_argument("--out", required=True)
    pd.add_argument("--K", type=int, default=16)
    pd.add_argument("--points", type=int, default=1024)
    pd.set_defaults(func=cmd_plotdata)
    return p


def _threads(args) -> int | None:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("RADIAL_MRA_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise io.SchemaError(f"RADIAL_MRA_THREADS must be an integer, got {env!r}") from None
    return None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        n = _threads(args)
        if n is not None:
            if n < 1:
                raise io.SchemaError("--threads must be positive")
            _kernels.set_threads(n)
        tol = load_tolerances(args.tolerances)
        args.func(args, tol)
    except ToleranceFailure as exc:
        return _fail("tolerance", str(exc), EXIT_TOLERANCE)
    except (io.SchemaError, ProfileError, json.JSONDecodeError, FileNotFoundError) as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_SCHEMA)
    except (ValueError, ArithmeticError) as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_COMPUTE)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
