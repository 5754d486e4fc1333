"""Data recipes for each figure: every function writes the tables behind one
figure and returns the list of files written. No plotting happens here."""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .bounds import bound_row, eta_qsl, qsl_rate_bound, thermal_moments
from .inflection import eta_scan, find_inflection
from .io import emit_table
from .kickedtop import CHAOTIC, REGULAR, KickedTopConfig, averaged_pseudo_sff, kicked_top_ensemble
from .sff import (
    EnsembleModel,
    GUEAnnealedModel,
    ProductHOModel,
    dip_ramp_features,
    ensemble_neighbor_decomposition,
    sff_ho_rate,
)
from .spectra import GUEConfig, ThermalParams, cs_frequencies, gue_ensemble, ho_levels_needed, ho_spectrum
from .strip import strip_scan

TEMPERATURES = (2.0, 0.5, 0.1)  # beta*hbar (times omega where there is one)
ETA_BETAS = np.geomspace(0.01, 10.0, 40)


def ho_truncated(beta, omega=1.0, hbar=1.0, min_levels=200):
    return ho_spectrum(omega, max(min_levels, ho_levels_needed(beta, omega, hbar)), hbar)


def _curve(model, times, label):
    """Rows ``t, S, Sdot/S`` plus the inflection point for the ``exp(-eta t)`` guide."""
    s, l1, _ = model.log_derivs(times)
    res = find_inflection(model)
    s0 = float(model.sff(np.array([res.t0]))[0]) if math.isfinite(res.t0) else float("nan")
    meta = {"label": label, "t0": res.t0, "eta": res.eta, "S_t0": s0, "bound": res.bound}
    return np.column_stack([times, s, l1]), meta


def _eta_row(res):
    return [res.beta, res.t0, res.eta, res.bound, res.ratio]


def _emit_curves(out_dir, stem, curves, fmt, extra_meta=None):
    """Stack several ``(rows, meta)`` curves into one long table keyed by ``curve``."""
    rows = []
    for idx, (data, _) in enumerate(curves):
        rows += [[idx, *r] for r in data]
    meta = {"curves": [m for _, m in curves]}
    meta.update(extra_meta or {})
    return emit_table(out_dir, stem, ["curve", "t", "S", "Sdot_over_S"], rows, meta, fmt, "sff-curves")


def figure_2(out_dir, fmt="both", seed=0, beta_hbar_omega=1.0, resolution=(301, 201)):
    written = []
    cases = [("ho", [1.0], 1), ("ho4", [1.0] * 4, 4), ("cs4", cs_frequencies(1.0, 4), 4)]
    for name, freqs, d in cases:
        params = ThermalParams(beta_hbar_omega, 1.0, d)
        scan = strip_scan(ProductHOModel(freqs, params, name), params,
                          t_range=(-2 * math.pi, 2 * math.pi), resolution=resolution)
        written += emit_table(out_dir, f"fig2_{name}", ["t", "tau", "magnitude"], scan.long_rows(),
                              scan.summary(), fmt, "strip-scan")
    return written


def figure_3(out_dir, fmt="both", seed=0):
    times = np.linspace(0.0, 4 * math.pi, 801)
    ho = [_curve(ProductHOModel([1.0], ThermalParams(b)), times, f"ho beta_hbar_omega={b:g}")
          for b in TEMPERATURES]
    cs = [_curve(ProductHOModel(cs_frequencies(1.0, 10), ThermalParams(b, 1.0, 10)), times,
                 f"cs N=10 beta_hbar_omega={b:g}") for b in TEMPERATURES]
    inset = [_curve(ProductHOModel(cs_frequencies(1.0, n), ThermalParams(0.1, 1.0, n)), times,
                    f"cs N={n} beta_hbar_omega=0.1") for n in (10, 30, 100)]
    return (_emit_curves(out_dir, "fig3a_ho", ho, fmt)
            + _emit_curves(out_dir, "fig3b_cs", cs, fmt)
            + _emit_curves(out_dir, "fig3b_inset", inset, fmt))


def figure_4(out_dir, fmt="both", seed=0, betas=ETA_BETAS):
    rows = [bound_row(ho_truncated(b), ThermalParams(b)) for b in betas]
    header = ["beta", "eta", "bound_analyticity", "eta_qsl", "eta_b"]
    written = emit_table(out_dir, "fig4a_ho_bounds", header, [[r[k] for k in header] for r in rows],
                         {"omega": 1.0, "hbar": 1.0}, fmt, "bound-comparison")
    cs_rows = []
    for n in (10, 30, 100):
        res = eta_scan(lambda b: ProductHOModel(cs_frequencies(1.0, n), ThermalParams(b, 1.0, n)), betas)
        cs_rows += [[n, r.beta, r.eta, r.eta / n, r.bound, r.ratio] for r in res]
    written += emit_table(out_dir, "fig4b_cs_eta", ["particles", "beta", "eta", "eta_over_d", "bound", "ratio"],
                          cs_rows, {"omega": 1.0, "d": "particles"}, fmt, "eta-scan")
    return written


def _gue_curves(dim, nav, seed, times):
    spectra = gue_ensemble(GUEConfig(dim, 1.0, nav, seed))
    curves = []
    for b in TEMPERATURES:
        params = ThermalParams(b)
        mc = EnsembleModel(spectra, params, "exact")
        an = GUEAnnealedModel(dim, params)
        s_mc = mc.sff(times)
        data, meta = _curve(an, times, f"gue N={dim} beta_hbar={b:g}")
        meta["plateau_annealed"] = an.plateau
        curves.append((np.column_stack([data, s_mc]), meta))
    return curves


def figure_5(out_dir, fmt="both", seed=0, gue_nav=100, kt_nav=30):
    times = np.geomspace(1e-2, 1e2, 600)
    curves = _gue_curves(30, gue_nav, seed, times)
    rows = []
    for idx, (data, _) in enumerate(curves):
        rows += [[idx, *r] for r in data]
    written = emit_table(out_dir, "fig5a_gue", ["curve", "t", "S_annealed", "Sdot_over_S_annealed", "S_exact_mc"],
                         rows, {"curves": [m for _, m in curves], "nav": gue_nav, "seed": seed}, fmt, "sff-curves")
    kt_times = np.geomspace(1e-1, 1e4, 2000)
    kt_curves = []
    for name, par in (("regular", REGULAR), ("chaotic", CHAOTIC)):
        cfg = KickedTopConfig(30, n_av=kt_nav, seed=seed, **par)
        spectra = kicked_top_ensemble(cfg)
        model = EnsembleModel(spectra, ThermalParams(0.1))
        data, meta = _curve(model, kt_times, f"kicked-top {name}")
        meta.update(dip_ramp_features(kt_times, data[:, 1], model.plateau).as_dict())
        meta["plateau"] = model.plateau
        kt_curves.append((data, meta))
    written += _emit_curves(out_dir, "fig5b_kicked_top", kt_curves, fmt, {"spin": 30, "nav": kt_nav, "seed": seed})
    return written


def kicked_top_eta_rows(regime, betas, branch="positive", seed=0, n_av=30):
    cfg = KickedTopConfig(30, n_av=n_av, seed=seed, branch=branch, **(CHAOTIC if regime == "chaotic" else REGULAR))
    spectra = kicked_top_ensemble(cfg)
    return eta_scan(lambda b: EnsembleModel(spectra, ThermalParams(b)), betas)


def figure_6(out_dir, fmt="both", seed=0, betas=ETA_BETAS):
    header = ["beta", "t0", "eta", "bound", "ratio"]
    res = eta_scan(lambda b: GUEAnnealedModel(30, ThermalParams(b)), betas)
    written = emit_table(out_dir, "fig6a_gue_eta", header, [_eta_row(r) for r in res],
                         {"dim": 30, "average": "annealed"}, fmt, "eta-scan")
    for branch in ("positive", "symmetric"):
        rows = []
        for regime in ("regular", "chaotic"):
            rows += [[regime, *_eta_row(r)] for r in kicked_top_eta_rows(regime, betas, branch, seed)]
        written += emit_table(out_dir, f"fig6b_kicked_top_{branch}", ["regime", *header], rows,
                              {"spin": 30, "nav": 30, "branch": branch, "seed": seed}, fmt, "eta-scan")
    return written


def figure_s1(out_dir, fmt="both", seed=0, betas=ETA_BETAS):
    rows = []
    for dim in (2, 5, 10, 30, 50):
        rows += [[dim, *_eta_row(r)] for r in eta_scan(lambda b: GUEAnnealedModel(dim, ThermalParams(b)), betas)]
    return emit_table(out_dir, "figS1_gue_eta_scaling", ["dim", "beta", "t0", "eta", "bound", "ratio"], rows,
                      {"average": "annealed"}, fmt, "eta-scan")


def figure_s2(out_dir, fmt="both", seed=0, nav=300, j_max=4):
    spectra = gue_ensemble(GUEConfig(5, 1.0, nav, seed))
    times = np.geomspace(1e-2, 1e2, 400)
    written = []
    for b in (0.0, 2.0):
        params = ThermalParams(b)
        dec = ensemble_neighbor_decomposition(spectra, params, times, j_max)
        full = EnsembleModel(spectra, params).sff(times)
        cols = dec.columns()
        parts = ["diagonal"] + [f"S_j{j}" for j in range(1, j_max + 1)]
        header = ["t", "S", *parts]
        data = np.column_stack([times, full, *[cols[k] for k in parts]])
        plateau = EnsembleModel(spectra, params).plateau
        written += emit_table(out_dir, f"figS2_neighbors_beta{b:g}", header, data,
                              {"dim": 5, "nav": nav, "seed": seed, "plateau": plateau, "j_shown": j_max},
                              fmt, "neighbor-decomposition")
    return written


def figure_s3(out_dir, fmt="both", seed=0):
    times = np.linspace(0.0, 2 * math.pi, 1001)
    rows, stars = [], []
    for b in TEMPERATURES:
        params = ThermalParams(b)
        spec = ho_truncated(b)
        bound = qsl_rate_bound(thermal_moments(spec, params))
        rate = sff_ho_rate(b, 1.0, 1.0, times)
        rows += [[b, t, r, bound] for t, r in zip(times, rate)]
        res = find_inflection(spec, params)
        stars.append({"beta": b, "t0": res.t0, "rate_t0": float(sff_ho_rate(b, 1.0, 1.0, res.t0)),
                      "qsl_bound": bound, "eta_qsl": eta_qsl(spec, params, res.t0)})
    return emit_table(out_dir, "figS3_qsl", ["beta", "t", "abs_Sdot", "qsl_bound"], rows,
                      {"omega": 1.0, "inflection_points": stars}, fmt, "qsl-curve")


FIGURES = {
    "2": figure_2, "3": figure_3, "4": figure_4, "5": figure_5, "6": figure_6,
    "S1": figure_s1, "S2": figure_s2, "S3": figure_s3,
}


def make_figure(fig_id: str, out_dir, fmt="both", seed=0):
    key = str(fig_id).upper()
    if key not in FIGURES:
        raise KeyError(f"unknown figure {fig_id!r}; choose from {sorted(FIGURES)}")
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    return FIGURES[key](out_dir, fmt=fmt, seed=seed)
