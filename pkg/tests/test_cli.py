import csv
import json
import math

import numpy as np
import pytest

from radialmra import _kernels
from radialmra.cli import main
from radialmra.filters import shannon_filter
from radialmra.io import write_filter_csv, write_json, write_profile_csv
from radialmra.profiles import RadialGrid, gaussian


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def error_of(err):
    return json.loads(err.strip().splitlines()[-1])


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


@pytest.fixture
def shannon_csv(tmp_path):
    p = tmp_path / "g.csv"
    write_filter_csv(p, shannon_filter(64))
    return p


@pytest.fixture
def gauss_csv(tmp_path):
    p = tmp_path / "f.csv"
    write_profile_csv(p, gaussian(), RadialGrid(40.0, 1024))
    return p


def test_hankel_forward_and_inverse(tmp_path, capsys, gauss_csv):
    F = tmp_path / "F.csv"
    back = tmp_path / "back.csv"
    assert run(capsys, "hankel", "--alpha", 0.5, "--in", gauss_csv, "--out", F)[0] == 0
    head, data = read_csv(F)
    assert head == ["lambda", "re", "im"]
    np.testing.assert_allclose(data[:, 1], np.exp(-data[:, 0] ** 2 / 2), atol=1e-6)
    assert run(capsys, "hankel", "--in", F, "--out", back, "--inverse")[0] == 0
    _, b = read_csv(back)
    _, a = read_csv(gauss_csv)
    assert np.max(np.abs(a[:, 1] - b[:, 1])) < 1e-6


def test_hankel_direction_mismatch(tmp_path, capsys, gauss_csv):
    code, _, err = run(capsys, "hankel", "--in", gauss_csv, "--out", tmp_path / "x.csv", "--inverse")
    assert code == 2
    assert error_of(err)["exit_code"] == 2


@pytest.mark.filterwarnings("ignore::radialmra.hypergroup.TruncationWarning")
def test_translate(tmp_path, capsys, gauss_csv):
    out = tmp_path / "t.csv"
    code, _, _ = run(capsys, "translate", "--r", 1.0, "--in", gauss_csv, "--out", out)
    assert code == 0
    _, data = read_csv(out)
    # T_r f at s: (1/(2 r s)) int_{|r-s|}^{r+s} f(t) t dt, closed form for the gaussian
    s = data[:, 0]
    ref = (np.exp(-(1 - s) ** 2 / 2) - np.exp(-(1 + s) ** 2 / 2)) / (2 * s)
    assert np.max(np.abs(data[:, 1] - ref)) < 1e-6


def test_empty_input_is_schema_error(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    code, _, err = run(capsys, "hankel", "--in", empty, "--out", tmp_path / "o.csv")
    assert code == 2
    e = error_of(err)
    assert e["error"] == "SchemaError" and "empty" in e["message"]


@pytest.mark.parametrize("text", ["x,y,z\n1,2,3\n", "r,re,im\n", "r,re,im\n0.5,1,0\n1.5,abc,0\n",
                                  "r,re,im\n0.5,1,0\n1.7,1,0\n"])
def test_malformed_profile_csv(tmp_path, capsys, text):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    assert run(capsys, "translate", "--r", 1, "--in", p, "--out", tmp_path / "o.csv")[0] == 2


def test_missing_file(tmp_path, capsys):
    assert run(capsys, "hankel", "--in", tmp_path / "nope.csv", "--out", tmp_path / "o.csv")[0] == 2


@pytest.mark.parametrize("doc", ["{", "[]", '{"type": "scaling"}', '{"schema": 2, "type": "scaling"}'])
def test_bad_json(tmp_path, capsys, doc):
    p = tmp_path / "phi.json"
    p.write_text(doc)
    assert run(capsys, "scaling", "validate", "--in", p, "--report", tmp_path / "r.json")[0] == 2


def test_scaling_build_and_validate_shannon(tmp_path, capsys):
    phi = tmp_path / "phi.json"
    rep = tmp_path / "report.json"
    assert run(capsys, "scaling", "build", "--kind", "shannon", "--out", phi)[0] == 0
    doc = json.loads(phi.read_text())
    assert doc["schema"] == 1 and doc["recipe"] == {"kind": "shannon"}
    assert run(capsys, "scaling", "validate", "--in", phi, "--report", rep)[0] == 0
    r = json.loads(rep.read_text())
    assert r["passed"]
    assert r["riesz"]["A"] == pytest.approx(1.0, abs=1e-6) and r["riesz"]["B"] == pytest.approx(1.0, abs=1e-6)
    assert r["phi_hat_at_zero"] == pytest.approx(1.0, abs=1e-12)


def test_hat_spline_validates_as_riesz_then_orthogonalizes(tmp_path, capsys):
    phi = tmp_path / "hat.json"
    star = tmp_path / "star.json"
    rep = tmp_path / "r.json"
    assert run(capsys, "scaling", "build", "--kind", "hat-spline", "--out", phi)[0] == 0
    # a Riesz basis is enough to generate an MRA; orthonormality is not required
    assert run(capsys, "scaling", "validate", "--in", phi, "--report", rep)[0] == 0
    r = json.loads(rep.read_text())
    assert r["rb"] and r["periodization_deviation"] > 0.1
    assert r["riesz"]["A"] == pytest.approx(1 / 3, abs=1e-6)
    assert run(capsys, "scaling", "orthogonalize", "--in", phi, "--out", star)[0] == 0
    assert json.loads(star.read_text())["periodization_deviation"] < 1e-6
    assert run(capsys, "scaling", "validate", "--in", star, "--report", tmp_path / "r2.json")[0] == 0


def test_from_classical_requires_spec(tmp_path, capsys):
    assert run(capsys, "scaling", "build", "--kind", "from-classical", "--out", tmp_path / "p.json")[0] == 2


def test_from_classical_recipe(tmp_path, capsys):
    # classical Shannon spectrum in xi units: (2 pi)^(-1/2) on [0, pi]
    xi = np.linspace(0, math.pi, 65)
    spec = tmp_path / "spec.json"
    write_json(spec, {"xi": xi, "F": np.full_like(xi, (2 * math.pi) ** -0.5), "band_limit": math.pi,
                      "breakpoints": [math.pi]})
    out = tmp_path / "phi.json"
    assert run(capsys, "scaling", "build", "--kind", "from-classical", "--spec", spec, "--out", out)[0] == 0
    assert run(capsys, "scaling", "validate", "--in", out, "--report", tmp_path / "r.json")[0] == 0
    assert json.loads((tmp_path / "r.json").read_text())["periodization_deviation"] < 1e-12


def test_from_classical_without_riesz_basis(tmp_path, capsys):
    # band limit 1 in xi units leaves gaps in the lattice sum
    xi = np.linspace(0, 1, 65)
    spec = tmp_path / "spec.json"
    write_json(spec, {"xi": xi, "F": np.ones_like(xi), "band_limit": 1.0})
    code, _, err = run(capsys, "scaling", "build", "--kind", "from-classical", "--spec", spec, "--out",
                       tmp_path / "p.json")
    assert code == 3 and error_of(err)["error"] == "RieszError"


def test_filter_extract_wavelet_build(tmp_path, capsys):
    phi, g, psi = tmp_path / "phi.json", tmp_path / "g.csv", tmp_path / "psi.json"
    run(capsys, "scaling", "build", "--kind", "meyer", "--out", phi)
    assert run(capsys, "filter", "extract", "--in", phi, "--n", 64, "--out", g)[0] == 0
    head, data = read_csv(g)
    assert head == ["n", "g_re", "g_im"] and data.shape == (65, 3)
    assert math.sqrt(2) * data[:, 1].sum() == pytest.approx(1.0, abs=1e-6)
    assert run(capsys, "wavelet", "build", "--phi", phi, "--filter", g, "--out", psi)[0] == 0
    doc = json.loads(psi.read_text())
    assert doc["closed_form_filter"] is True
    lam = np.asarray(doc["spectrum"]["lambda"])
    v = np.asarray(doc["spectrum"]["values"])
    assert np.all(np.abs(v[lam < 0.5]) < 1e-12)


def test_filter_extract_rejects_gaussian(tmp_path, capsys):
    xi = np.linspace(0, 40, 257)
    spec = tmp_path / "spec.json"
    write_json(spec, {"xi": xi, "F": np.exp(-xi ** 2 / 50), "extent": 40.0})
    phi = tmp_path / "phi.json"
    assert run(capsys, "scaling", "build", "--kind", "from-classical", "--spec", spec, "--out", phi)[0] == 0
    code, _, err = run(capsys, "filter", "extract", "--in", phi, "--out", tmp_path / "g.csv")
    assert code == 3
    assert error_of(err)["exit_code"] == 3


def test_fwt_qr_prints_table_entry(capsys, shannon_csv):
    code, out, _ = run(capsys, "fwt", "qr", "--filter", shannon_csv, "--ell", 2, "--k", 1)
    assert code == 0
    q = [line for line in out.splitlines() if line.startswith("q ")][0].split()
    assert float(q[1]) == pytest.approx(-8 * math.sqrt(2) / (15 * math.pi), abs=1e-12)
    assert float(q[2]) == 0.0


def test_fwt_roundtrip(tmp_path, capsys, shannon_csv, rng):
    g = tmp_path / "meyer.csv"
    phi = tmp_path / "phi.json"
    run(capsys, "scaling", "build", "--kind", "meyer", "--out", phi)
    run(capsys, "filter", "extract", "--in", phi, "--out", g)
    c = rng.normal(size=256) + 1j * rng.normal(size=256)
    cin, pyr, back = tmp_path / "c.json", tmp_path / "pyr.json", tmp_path / "back.json"
    write_json(cin, {"type": "coefficients", "j": 0, "c": np.stack([c.real, c.imag], axis=1)})
    assert run(capsys, "fwt", "decompose", "--filter", g, "--in", cin, "--depth", 2, "--out", pyr)[0] == 0
    p = json.loads(pyr.read_text())
    assert p["depth"] == 2 and len(p["levels"]) == 2
    assert run(capsys, "fwt", "reconstruct", "--filter", g, "--in", pyr, "--out", back)[0] == 0
    r = np.asarray(json.loads(back.read_text())["c"])
    assert np.max(np.abs(r[:, 0] + 1j * r[:, 1] - c)[16:-16]) < 1e-5
    assert run(capsys, "fwt", "reconstruct", "--filter", g, "--in", pyr, "--depth", 1,
               "--out", back)[0] == 2


def test_fwt_bad_pyramid(tmp_path, capsys, shannon_csv):
    p = tmp_path / "pyr.json"
    write_json(p, {"type": "pyramid", "j_top": 0, "depth": 1, "K": [8], "levels": [{"c": [[1, 0]]}]})
    assert run(capsys, "fwt", "reconstruct", "--filter", shannon_csv, "--in", p, "--out", tmp_path / "o")[0] == 2


def _write_cwt_inputs(tmp_path):
    g, f, grid = tmp_path / "g.json", tmp_path / "f.json", tmp_path / "grid.json"
    write_json(g, {"type": "profile", "kind": "spectral", "form": "indicator", "a": 1.0, "b": 2.0})
    write_json(f, {"type": "profile", "kind": "spectral", "form": "gaussian", "width": 1.0})
    write_json(grid, {"type": "cwt-grid", "r_max": 10.0, "n_r": 16, "n_a": 8})
    return g, f, grid


def test_cwt_run(tmp_path, capsys):
    g, f, grid = _write_cwt_inputs(tmp_path)
    out = tmp_path / "cwt.csv"
    code, stdout, _ = run(capsys, "cwt", "run", "--alpha", 0.5, "--g", g, "--f", f, "--grid", grid, "--out", out)
    assert code == 0
    head, data = read_csv(out)
    assert head == ["r", "a", "re", "im"] and data.shape == (16 * 8, 4)
    summary = json.loads(stdout)
    assert summary["C_g"] == pytest.approx(math.log(2), rel=1e-12)


def test_cwt_bad_grid(tmp_path, capsys):
    g, f, grid = _write_cwt_inputs(tmp_path)
    write_json(grid, {"type": "cwt-grid", "n_r": "many"})
    assert run(capsys, "cwt", "run", "--g", g, "--f", f, "--grid", grid, "--out", tmp_path / "o.csv")[0] == 2


def test_frame_check_tight(tmp_path, capsys):
    g = tmp_path / "g.json"
    spec = tmp_path / "frame.json"
    rep = tmp_path / "rep.json"
    write_json(g, {"type": "profile", "kind": "spectral", "form": "indicator", "a": 1.0, "b": 2.0})
    write_json(spec, {"type": "frame-spec", "l": 2.0, "base": 2.0, "k0": 3, "n_max": 512})
    code = run(capsys, "--seed", 7, "frame", "check", "--g", g, "--spec", spec, "--report", rep, "--trials", 4)[0]
    assert code == 0
    r = json.loads(rep.read_text())
    assert r["A_est"] == pytest.approx(8.0) and r["B_est"] == pytest.approx(8.0)
    assert all(abs(x / 8 - 1) < 0.01 for x in r["energy_ratios"])
    assert r["seed"] == 7 and r["lattice_bound"]["holds"]


def test_frame_check_support_violation(tmp_path, capsys):
    g = tmp_path / "g.json"
    spec = tmp_path / "frame.json"
    write_json(g, {"type": "profile", "kind": "spectral", "form": "indicator", "a": 1.0, "b": 3.0})
    write_json(spec, {"type": "frame-spec", "l": 2.0, "base": 2.0})
    code, _, err = run(capsys, "frame", "check", "--g", g, "--spec", spec, "--report", tmp_path / "r.json")
    assert code == 3 and error_of(err)["error"] == "SupportError"


def test_deterministic_given_seed(tmp_path, capsys):
    g = tmp_path / "g.json"
    spec = tmp_path / "frame.json"
    write_json(g, {"type": "profile", "kind": "spectral", "form": "indicator", "a": 1.0, "b": 2.0})
    write_json(spec, {"type": "frame-spec", "l": 2.0, "base": 2.0, "n_max": 256})
    reports = []
    for name in ("a.json", "b.json"):
        run(capsys, "--seed", 3, "frame", "check", "--g", g, "--spec", spec, "--report", tmp_path / name,
            "--trials", 2)
        reports.append((tmp_path / name).read_text())
    assert reports[0] == reports[1]


@pytest.mark.parametrize("what", ["gram", "periodization", "filter-identity"])
def test_plotdata(tmp_path, capsys, what, shannon_csv):
    phi = tmp_path / "phi.json"
    run(capsys, "scaling", "build", "--kind", "shannon", "--out", phi)
    src = shannon_csv if what == "filter-identity" else phi
    out = tmp_path / "t.csv"
    assert run(capsys, "plotdata", "--what", what, "--in", src, "--out", out, "--K", 4, "--points", 64)[0] == 0
    head, data = read_csv(out)
    if what == "gram":
        assert data.shape == (16, 4)
        M = data[:, 2].reshape(4, 4)
        assert np.max(np.abs(M - np.eye(4))) < 1e-5
    elif what == "periodization":
        assert head == ["lambda", "P"]
        assert np.max(np.abs(data[:, 1] - 1)) < 1e-12
    else:
        assert head[-1] == "sum"


def test_threads_flag_and_env(tmp_path, capsys, monkeypatch):
    before = _kernels.get_threads()
    phi = tmp_path / "phi.json"
    try:
        assert run(capsys, "--threads", 2, "scaling", "build", "--kind", "shannon", "--out", phi)[0] == 0
        assert _kernels.get_threads() == 2
        monkeypatch.setenv("RADIAL_MRA_THREADS", "3")
        assert run(capsys, "scaling", "build", "--kind", "shannon", "--out", phi)[0] == 0
        assert _kernels.get_threads() == 3
        monkeypatch.setenv("RADIAL_MRA_THREADS", "lots")
        assert run(capsys, "scaling", "build", "--kind", "shannon", "--out", phi)[0] == 2
        assert run(capsys, "--threads", 0, "scaling", "build", "--kind", "shannon", "--out", phi)[0] == 2
    finally:
        _kernels.set_threads(before)


def test_tolerance_override(tmp_path, capsys):
    phi = tmp_path / "hat.json"
    star = tmp_path / "star.json"
    tol = tmp_path / "tol.json"
    run(capsys, "scaling", "build", "--kind", "hat-spline", "--out", phi)
    tol.write_text(json.dumps({"periodization_after": 1e-30}))
    assert run(capsys, "--tolerances", tol, "scaling", "orthogonalize", "--in", phi, "--out", star)[0] == 1
    tol.write_text(json.dumps({"no_such_key": 1}))
    assert run(capsys, "--tolerances", tol, "scaling", "build", "--kind", "shannon", "--out", phi)[0] == 2
