"""Acceptance criteria as executable checks.

Each ``criterion_*`` function returns a :class:`CriterionResult`; runtime
limits are part of the verdict.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .bounds import bound_row, qsl_rate_bound, thermal_moments
from .errors import SFFError
from .inflection import energy_at_complex_beta, eta_ho, find_inflection
from .kickedtop import CHAOTIC, REGULAR, KickedTopConfig, averaged_pseudo_sff, kicked_top_ensemble, pseudo_frequencies
from .sff import (
    EnsembleModel,
    GUEAnnealedModel,
    ProductHOModel,
    SpectrumModel,
    avg_z_gue,
    dip_ramp_features,
    gue_connected,
    neighbor_decomposition,
)
from .spectra import (
    GUEConfig,
    ThermalParams,
    cs_frequencies,
    explicit_spectrum,
    gue_ensemble,
    gue_sample,
    ho_levels_needed,
    ho_spectrum,
)
from .strip import VIOLATION_TOL, schwarz_pick_samples, strip_scan

BOUND_TOL = 1e-9
MC_BOUND_TOL = 1e-3


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f} s)"


def _timed(number, name, limit=None):
    """Decorator: time the check, fold the runtime limit into the verdict and
    turn library errors into a failed criterion instead of a crash."""
    def wrap(fn):
        def run(**kwargs):
            t0 = time.perf_counter()
            try:
                passed, detail = fn(**kwargs)
            except SFFError as exc:
                passed, detail = False, f"raised {type(exc).__name__}: {exc}"
            dt = time.perf_counter() - t0
            if limit is not None and dt > limit:
                passed = False
                detail += f"; runtime {dt:.1f} s exceeds {limit:g} s"
            return CriterionResult(number, name, bool(passed), detail, dt)
        run.number = number
        run.criterion_name = name
        return run
    return wrap


def _ho_auto(beta, omega=1.0, min_levels=200):
    return ho_spectrum(omega, max(min_levels, ho_levels_needed(beta, omega)), 1.0)


@_timed(1, "HO exponent exactness", limit=5.0)
def criterion_1():
    x = np.geomspace(0.05, 5.0, 50)
    errs, errs_fixed = [], []
    for b in x:
        exact = eta_ho(b, 1.0)
        errs.append(abs(find_inflection(_ho_auto(b), ThermalParams(b)).eta / exact - 1))
    # the literal fixed truncation, reported for reference
    for b in (x[0], x[-1]):
        errs_fixed.append(abs(find_inflection(ho_spectrum(1.0, 200), ThermalParams(b)).eta / eta_ho(b, 1.0) - 1))
    worst = max(errs)
    return worst <= 1e-8, (f"max rel err {worst:.2e} over 50 betas (levels = max(200, auto cutoff)); "
                           f"fixed 200 levels: {errs_fixed[0]:.1e} at 0.05, {errs_fixed[1]:.1e} at 5")


def _worst_ratio(results, per_d=1.0):
    return max(r.eta / r.bound for r in results if math.isfinite(r.bound))


@_timed(2, "universal bound property", limit=600.0)
def criterion_2(betas=None, kicked_top_branches=("positive", "symmetric"), kicked_top_nav=30):
    betas = np.geomspace(0.01, 10.0, 20) if betas is None else np.asarray(betas)
    parts, ok = [], True

    def check(name, results, tol):
        nonlocal ok
        worst = max(r.eta / r.bound for r in results)
        good = worst <= 1 + tol
        ok &= good
        parts.append(f"{name} max eta/bound {worst:.3f}{'' if good else ' VIOLATED'}")

    hb = np.geomspace(0.05, 5.0, 20)
    check("HO", [find_inflection(_ho_auto(b), ThermalParams(b)) for b in hb], BOUND_TOL)
    for n in (10, 30, 100):
        res = [find_inflection(ProductHOModel(cs_frequencies(1.0, n), ThermalParams(b, 1.0, n))) for b in hb]
        check(f"CS N={n}", res, BOUND_TOL)
    for dim in (2, 5, 10, 30, 50):
        check(f"GUE N={dim}", [find_inflection(GUEAnnealedModel(dim, ThermalParams(b))) for b in betas], BOUND_TOL)
    for branch in kicked_top_branches:
        for regime, par in (("regular", REGULAR), ("chaotic", CHAOTIC)):
            spectra = kicked_top_ensemble(KickedTopConfig(30, n_av=kicked_top_nav, branch=branch, **par))
            res = [find_inflection(EnsembleModel(spectra, ThermalParams(b))) for b in betas]
            check(f"kicked-top {regime}/{branch}", res, MC_BOUND_TOL)
    return ok, "; ".join(parts)


@_timed(3, "HO high-temperature asymptote")
def criterion_3():
    b = 0.01
    res = find_inflection(_ho_auto(b), ThermalParams(b))
    val = b * res.eta
    return abs(val - 1) <= 0.01, f"beta*hbar*eta = {val:.6f} at beta*hbar*omega = 0.01"


def _gue_assembled(times, dim):
    # sampled sigma = 1 corresponds to the Laguerre argument sqrt(2) (beta + i t/hbar)
    out = []
    for t in times:
        s = math.sqrt(2) * (0.0 + 1j * t)
        out.append((avg_z_gue(0.0, dim).real + abs(avg_z_gue(s, dim)) ** 2 + gue_connected(s, dim)) / dim**2)
    return np.array(out)


@_timed(4, "GUE annealed vs exact", limit=120.0)
def criterion_4(nav=300, seed=0):
    dim = 5
    times = np.geomspace(1e-2, 1e2, 50)
    spectra = gue_ensemble(GUEConfig(dim, 1.0, nav, seed))
    params = ThermalParams(0.0)
    per = np.array([SpectrumModel(s, params).sff(times) for s in spectra])
    mean = per.mean(axis=0)
    se = per.std(axis=0, ddof=1) / math.sqrt(nav)
    analytic = _gue_assembled(times, dim)
    z = np.abs(analytic - mean) / np.maximum(se, 1e-12)
    late = times >= 30
    plateau_an = analytic[late].mean()
    plateau_mc = mean[late].mean()
    ok = np.all(z <= 3) and abs(plateau_an * dim - 1) <= 0.02 and abs(plateau_mc * dim - 1) <= 0.02
    return ok, (f"max |analytic - MC|/SE = {z.max():.2f} over 50 times (N_av={nav}, seed={seed}); "
                f"late-time mean analytic {plateau_an:.4f}, MC {plateau_mc:.4f} vs 1/N = {1 / dim:.4f}")


@_timed(5, "neighbor decomposition identity")
def criterion_5(seed=0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    times = np.linspace(0, 50, 200)
    cases = [explicit_spectrum(np.sort(rng.normal(size=n) * 3)) for n in (2, 7, 30)]
    cases += [gue_sample(GUEConfig(n, 1.0, 1, seed), 0) for n in (3, 10, 30)]
    for spec in cases:
        for b in (0.0, 0.7, 2.0):
            params = ThermalParams(b)
            dec = neighbor_decomposition(spec, params, times, spec.energies.size - 1)
            ref = SpectrumModel(spec, params).sff(times)
            worst = max(worst, float(np.max(np.abs(dec.total() - ref))))
    return worst <= 1e-12, f"max |diagonal + sum_j S_j - S| = {worst:.1e} ({len(cases)} spectra x 3 betas)"


@_timed(6, "strip scans", limit=180.0)
def criterion_6(resolution=(301, 201), beta_hbar_omega=1.0):
    parts, ok = [], True
    for name, freqs, d in (("HO", [1.0], 1), ("HO^4", [1.0] * 4, 4), ("CS N=4", cs_frequencies(1.0, 4), 4)):
        params = ThermalParams(beta_hbar_omega, 1.0, d)
        t0 = time.perf_counter()
        scan = strip_scan(ProductHOModel(freqs, params), params, (-2 * math.pi, 2 * math.pi), None, resolution)
        dt = time.perf_counter() - t0
        full, ren = scan.max_full_strip, scan.max_renormalized
        if d == 1:
            good = full <= 1 + VIOLATION_TOL
        else:
            good = full > 1 + VIOLATION_TOL and ren <= 1 + VIOLATION_TOL
        good &= dt < 60
        ok &= good
        parts.append(f"{name}: full {full:.6f}, |tau|<=bh/{d} {ren:.6f}")
    return ok, "; ".join(parts)


@_timed(7, "Schwarz-Pick sampling")
def criterion_7():
    cases = [
        ("HO bh=0.5", ProductHOModel([1.0], ThermalParams(0.5)), np.linspace(0, 2 * math.pi, 1000)),
        ("CS N=10 bh=0.5 d=10", ProductHOModel(cs_frequencies(1.0, 10), ThermalParams(0.5, 1.0, 10)),
         np.linspace(0, 2 * math.pi, 1000)),
        ("GUE annealed N=30 bh=0.5", GUEAnnealedModel(30, ThermalParams(0.5)), np.linspace(0, 20, 1000)),
    ]
    parts, ok = [], True
    for name, model, t in cases:
        sp = schwarz_pick_samples(model, model.params, t)
        ok &= sp.violations == 0
        parts.append(f"{name}: {sp.violations} violations, max lhs/rhs {sp.lhs.max() / sp.rhs:.3f}")
    return ok, "; ".join(parts)


@_timed(8, "complex-temperature energy identity")
def criterion_8(seed=0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    cases = [(_ho_auto(b), ThermalParams(b)) for b in (0.1, 0.5, 1.0, 3.0)]
    cases += [(explicit_spectrum(np.sort(rng.uniform(0, 5, n))), ThermalParams(b)) for n, b in ((5, 0.3), (20, 1.0), (40, 2.0))]
    for spec, params in cases:
        res = find_inflection(spec, params)
        val = abs(energy_at_complex_beta(spec, params, res.t0))
        worst = max(worst, abs(val - res.eta) / res.eta)
    return worst <= 1e-10, f"max rel |E(t0) - eta| = {worst:.1e} over {len(cases)} spectra"


@_timed(9, "bound comparison")
def criterion_9():
    x = np.geomspace(0.01, 5.0, 60)
    rows = [bound_row(_ho_auto(b), ThermalParams(b)) for b in x]
    diff = np.array([r["bound_analyticity"] - r["eta_qsl"] for r in rows])
    sign_change = np.nonzero(np.diff(np.sign(diff)))[0]
    if sign_change.size != 1:
        return False, f"expected one crossing, found {sign_change.size}"
    i = sign_change[0]
    cross = x[i] - diff[i] * (x[i + 1] - x[i]) / (diff[i + 1] - diff[i])
    ordered = np.all(diff[: i + 1] < 0) and np.all(diff[i + 1:] > 0)
    qsl_asym = rows[0]["eta_qsl"] * x[0] / (2 * math.sqrt(2))
    zb = [1 / (2 * math.sinh(b / 2)) for b in x]
    eb_err = max(abs(r["eta_b"] / (2 * z) - 1) for r, z in zip(rows, zb))
    ok = ordered and 1.5 <= cross <= 2.5 and abs(qsl_asym - 1) <= 0.02 and eb_err <= 1e-10
    return ok, (f"analyticity tighter below / looser above crossing at beta*hbar*omega = {cross:.3f}; "
                f"beta*hbar*eta_QSL/(2 sqrt 2) = {qsl_asym:.5f} at 0.01; eta_B rel err {eb_err:.1e}")


@_timed(10, "kicked-top oracle", limit=180.0)
def criterion_10(nav=30, seed=0):
    spin = 30
    m = spin - np.arange(2 * spin + 1)
    worst = 0.0
    for branch, lo in (("positive", 0.0), ("symmetric", -math.pi)):
        cfg = KickedTopConfig(spin, p=(0, 0, 10), k=(0, 0, 1), branch=branch)
        expected = np.sort(np.mod(10 * m + m * m / (2 * spin + 1) - lo, 2 * math.pi) + lo)
        worst = max(worst, float(np.max(np.abs(pseudo_frequencies(cfg) - expected))))
    times = np.geomspace(1e-1, 1e4, 4000)
    feats = {}
    for name, par in (("chaotic", CHAOTIC), ("regular", REGULAR)):
        cfg = KickedTopConfig(spin, n_av=nav, seed=seed, **par)
        spectra = kicked_top_ensemble(cfg)
        series = averaged_pseudo_sff(cfg, 0.1, times, spectra=spectra)
        plateau = EnsembleModel(spectra, ThermalParams(0.1)).plateau
        feats[name] = dip_ramp_features(times, series.values, plateau)
    c, r = feats["chaotic"], feats["regular"]
    ok = worst <= 1e-9 and c.has_dip_ramp and not r.has_dip_ramp
    return ok, (f"integrable phase err {worst:.1e}; chaotic dip {c.dip_ratio:.2f}x plateau, ramp {c.ramp_decades:.2f} dec; "
                f"regular dip {r.dip_ratio:.2f}x plateau, return within {r.ramp_decades:.2f} dec")


@_timed(11, "QSL curve")
def criterion_11():
    times = np.linspace(0, 4 * math.pi, 10_000)
    parts, ok = [], True
    for b in (2.0, 0.5, 0.1):
        spec = _ho_auto(b)
        params = ThermalParams(b)
        _, sdot, _ = SpectrumModel(spec, params).raw_derivs(times)
        bound = qsl_rate_bound(thermal_moments(spec, params))
        n_bad = int(np.count_nonzero(np.abs(sdot) > bound))
        ok &= n_bad == 0
        parts.append(f"bh={b:g}: {n_bad} violations, max |Sdot|/bound {np.abs(sdot).max() / bound:.3f}")
    return ok, "; ".join(parts)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def run_all(only=None, echo=print):
    results = []
    for fn in CRITERIA:
        if only and fn.number not in only:
            continue
        res = fn()
        if echo:
            echo(res.line())
        results.append(res)
    return results
