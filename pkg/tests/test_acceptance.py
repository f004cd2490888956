"""Acceptance suite: one printed PASS/FAIL line per criterion, thresholds as fixed by the contract."""
import math

import numpy as np
import pytest

from radialmra.cwt import (CwtGrid, FrameSpec, admissibility, build_frame, cwt, cwt_energy, frame_energy,
                           lattice_bounds, random_band_limited)
from radialmra.filters import shannon_filter
from radialmra.fwt import (classical_tail_check, decompose, qr_coefficients, reconstruct, trig_integral,
                           trig_integral_formula)
from radialmra.hankel import hankel, hankel_half, inverse_hankel, norm
from radialmra.hypergroup import TruncationWarning, translate_half
from radialmra.mra import (basis_spectrum, chebyshev_check, extract_filter, hat_spline, meyer, orthogonalize,
                           periodize, shannon, spectral_gram, spectral_inner)
from radialmra.profiles import RadialGrid, gaussian, indicator
from radialmra.special import bessel_j
from radialmra.wavelet import shannon_wavelet, wavelet_spectrum

import oracles

GRID = RadialGrid(40.0, 4096)
CHI12 = indicator(1.0, 2.0)


@pytest.fixture(scope="module")
def gauss():
    return gaussian().sample(GRID)


def test_criterion_01_hankel_round_trip(gauss, acceptance):
    F = hankel_half(gauss)
    back = inverse_hankel(0.5, F)
    rt = norm(back - gauss) / norm(gauss)
    iso = abs(norm(F) - norm(gauss)) / norm(gauss)
    ok = acceptance(1, "Hankel round trip and isometry", rt < 1e-6 and iso < 1e-6,
                    f"round-trip rel L2 {rt:.2e} (< 1e-6), norm deviation {iso:.2e} (< 1e-6)")
    assert ok


@pytest.mark.filterwarnings("ignore::radialmra.hypergroup.TruncationWarning")
def test_criterion_02_translation_multiplier(gauss, acceptance):
    errs = []
    for r in (0.5, math.pi, 5.0):
        F = hankel(0.5, translate_half(gauss, r))
        lam = F.grid.points
        target = bessel_j(0.5, lam * r) * np.exp(-lam ** 2 / 2)
        err = math.sqrt(np.sum(np.abs(F.values - target) ** 2 * oracles.haar(0.5, lam)) * F.grid.spacing)
        errs.append(err / norm(gauss))
    ok = acceptance(2, "translation multiplier", max(errs) < 1e-5,
                    "r = 0.5, pi, 5 -> " + ", ".join(f"{e:.2e}" for e in errs) + " (< 1e-5)")
    assert ok


def test_criterion_03_shannon_orthonormality(acceptance):
    phi = shannon()
    psi = shannon_wavelet()
    sets = {
        "phi_0k": [basis_spectrum(phi, 0, k) for k in range(1, 17)],
        "psi_0k": [wavelet_spectrum(psi, 0, k) for k in range(1, 17)],
        "psi_jk": [wavelet_spectrum(psi, j, k) for j in (-1, 0, 1) for k in range(1, 7)],
    }
    devs = {name: float(np.max(np.abs(spectral_gram(s) - np.eye(len(s))))) for name, s in sets.items()}
    ok = acceptance(3, "Shannon Gram matrices", max(devs.values()) < 1e-5,
                    ", ".join(f"{k} {v:.2e}" for k, v in devs.items()) + " (< 1e-5)")
    assert ok


def test_criterion_04_orthogonalization(acceptance):
    hat = hat_spline()
    before = float(np.max(np.abs(periodize(hat).values - 1)))
    after = float(np.max(np.abs(periodize(orthogonalize(hat)).values - 1)))
    ok = acceptance(4, "orthogonalization", before > 0.1 and after < 1e-6,
                    f"sup|P-1| before {before:.3f} (> 0.1), after {after:.2e} (< 1e-6)")
    assert ok


def test_criterion_05_filter_identity(acceptance):
    G_sh = shannon_filter(64)
    G_me = extract_filter(meyer(), n_coeffs=64)
    qmf_sh = G_sh.qmf_residual(4096)
    qmf_me = G_me.qmf_residual(4096)
    qmf_series = G_me.qmf_residual(4096, exact=False)
    me0, me1 = (abs(v) for v in G_me.sum_identities())
    sh0, sh1 = (abs(v) for v in G_sh.sum_identities())
    bound = 2.0 / ((G_sh.N + 1) * math.pi)
    ok = (qmf_sh == 0.0 and qmf_me < 1e-8 and me0 < 1e-6 and me1 < 1e-6 and sh0 <= bound and sh1 <= bound)
    acceptance(5, "filter identity", ok,
               f"Meyer sup-residual {qmf_me:.1e} (< 1e-8; 64-term series {qmf_series:.1e}), Shannon {qmf_sh:.0e}; "
               f"Meyer sums {me0:.1e}, {me1:.1e} (< 1e-6); Shannon sums {sh0:.2e}, {sh1:.2e} (<= {bound:.2e})")
    assert ok


def test_criterion_06_table_vs_oracle(acceptance):
    phi = shannon()
    psi = shannon_wavelet()
    G = shannon_filter(64)
    worst = 0.0
    for ell in range(1, 9):
        for k in range(1, 9):
            q, r = qr_coefficients(G, ell, k)
            q_ref = spectral_inner(basis_spectrum(phi, 1, k), basis_spectrum(phi, 0, ell))
            r_ref = spectral_inner(basis_spectrum(phi, 1, k), wavelet_spectrum(psi, 0, ell))
            worst = max(worst, abs(q - q_ref), abs(r - r_ref))
    trig = max(abs(trig_integral(k, t, n) - trig_integral_formula(k, t, n))
               for n in range(0, 11) for k in range(1, 11) for t in range(1, 11))
    ok = acceptance(6, "q/r table vs quadrature", worst < 1e-5 and trig < 1e-10,
                    f"table {worst:.2e} (< 1e-5), delta pattern {trig:.2e} (< 1e-10)")
    assert ok


def test_criterion_07_perfect_reconstruction(acceptance):
    G = extract_filter(meyer(), n_coeffs=64)
    N, K = 64, 256
    interior = slice(N + 1, K - N)
    rng = np.random.default_rng(7)
    c = rng.normal(size=K) + 1j * rng.normal(size=K)
    e1 = float(np.max(np.abs(reconstruct(decompose(c, G), G) - c)[interior]))
    P2 = decompose(c, G, depth=2)
    e2 = float(np.max(np.abs(reconstruct(P2, G) - c)[interior]))
    n2 = np.sum(np.abs(c) ** 2)
    en = max(abs(decompose(c, G).energy() / n2 - 1), abs(P2.energy() / n2 - 1))
    ok = acceptance(7, "perfect reconstruction", e1 < 1e-6 and e2 < 1e-5 and en < 1e-6,
                    f"one level {e1:.1e} (< 1e-6), two levels {e2:.1e} (< 1e-5), energy {en:.1e} (< 1e-6)")
    assert ok


def test_criterion_08_classical_tail(acceptance):
    G_me = extract_filter(meyer(), n_coeffs=64)
    G_sh = shannon_filter(64)
    rows = [33, 34, 40, 64, 100]
    ok = all(classical_tail_check(G, ell) for G in (G_me, G_sh) for ell in rows)
    acceptance(8, "classical tail", ok, f"exact equality for N = 64, rows {rows}, Meyer and Shannon")
    assert ok


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
def test_criterion_09_cwt_plancherel(alpha, acceptance):
    grid = CwtGrid.log_uniform(alpha=alpha)
    E = cwt_energy(cwt(gaussian(kind="spectral"), CHI12, alpha, grid), grid)
    Cg = admissibility(CHI12, alpha)
    target = Cg * oracles.gaussian_norm_sq(alpha)
    dev = abs(E["corrected"] / target - 1)
    raw = abs(E["raw"] / target - 1)
    passed = dev < 0.02 and abs(Cg - math.log(2)) < 1e-12
    test_criterion_09_cwt_plancherel.results[alpha] = (passed, dev, raw)
    res = test_criterion_09_cwt_plancherel.results
    acceptance(9, "CWT Plancherel", all(p for p, _, _ in res.values()) and len(res) == 3,
               "; ".join(f"alpha {a:g}: {d:.2%} (raw {r:.2%})" for a, (_, d, r) in sorted(res.items()))
               + f" (< 2%), C_g {Cg:.6f}")
    assert passed


test_criterion_09_cwt_plancherel.results = {}


def test_criterion_10_frame_sandwich(acceptance):
    frame = build_frame(CHI12, FrameSpec.dyadic(alpha=0.5, l=2.0, k0=3, n_max=512))
    rng = np.random.default_rng(10)
    ratios = np.array([frame_energy(random_band_limited(rng, 0.5, 4.0), frame)["ratio"] for _ in range(20)])
    lat = lattice_bounds(CHI12, 2.0, 0.5, 4096)
    worst = float(np.max(np.abs(ratios / 8.0 - 1)))
    ok = acceptance(10, "frame sandwich", worst < 0.01 and lat["holds"],
                    f"ratio {ratios.min():.4f}..{ratios.max():.4f} (8 +- 1%), "
                    f"lattice sum in [{lat['S_min']:g}, {lat['S_max']:g}] vs [sigma^2, M tau^2] = "
                    f"[{lat['sigma'] ** 2:g}, {lat['M'] * lat['tau'] ** 2:g}]")
    assert ok


def test_criterion_11_chebyshev_containment(acceptance):
    phi = shannon()
    res = [chebyshev_check(phi, k) for k in range(1, 6)]
    ok = acceptance(11, "Chebyshev containment", max(res) < 1e-10,
                    f"k = 1..5 max residual {max(res):.1e} (< 1e-10)")
    assert ok
