"""Command-line front end.

Exit codes: 0 success, 1 acceptance criteria failed, 2 bad configuration,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .config import MODELS, TimeGrid, merge, parse_float_list, parse_vector, read_config_file
from .errors import DomainError, InvalidArgument, NumericalFailure
from .io import emit_table

EXIT_OK, EXIT_CRITERIA, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


def _add_common(p):
    p.add_argument("--config", help="INI file; flags override its values")
    p.add_argument("--seed", type=int, default=None, help="master seed for ensembles (default 0)")
    p.add_argument("--out-dir", default=None, help="output directory (default ./out)")
    p.add_argument("--format", dest="fmt", choices=("csv", "json", "both"), default=None)


def _add_model(p):
    g = p.add_argument_group("model")
    g.add_argument("--model", choices=MODELS, default=None)
    g.add_argument("--beta", type=float)
    g.add_argument("--hbar", type=float)
    g.add_argument("--d", type=int, help="extensivity (defaults to the particle number for cs)")
    g.add_argument("--omega", type=float)
    g.add_argument("--levels", type=int, help="ho: number of levels, 0 = closed form / auto cutoff")
    g.add_argument("--particles", type=int)
    g.add_argument("--dim", type=int)
    g.add_argument("--sigma", type=float)
    g.add_argument("--nav", type=int, help="number of realizations")
    g.add_argument("--mode", choices=("exact", "annealed", "analytic"))
    g.add_argument("--spin", type=float)
    g.add_argument("--p", help="kicked top precession vector 'px,py,pz'")
    g.add_argument("--k", help="kicked top torsion vector 'kx,ky,kz'")
    g.add_argument("--window-frac", type=float)
    g.add_argument("--tau-p", type=float)
    g.add_argument("--sampling", choices=("random", "stratified"))
    g.add_argument("--branch", choices=("positive", "symmetric"))
    g.add_argument("--energies", help="explicit spectrum 'e1,e2,...'")
    t = p.add_argument_group("time grid")
    t.add_argument("--t-start", type=float)
    t.add_argument("--t-stop", type=float)
    t.add_argument("--t-count", type=int)
    t.add_argument("--t-spacing", choices=("linear", "log"))


def build_parser():
    ap = argparse.ArgumentParser(prog="sffbound", description="Spectral form factors and the analyticity bound on their decay.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sff", help="SFF time series for one model")
    _add_common(p)
    _add_model(p)

    p = sub.add_parser("eta-scan", help="inflection exponent and bound over a beta grid")
    _add_common(p)
    _add_model(p)
    p.add_argument("--betas", help="explicit list 'b1,b2,...'")
    p.add_argument("--beta-min", type=float, default=0.01)
    p.add_argument("--beta-max", type=float, default=10.0)
    p.add_argument("--beta-count", type=int, default=40)

    p = sub.add_parser("bounds", help="analyticity, QSL and Bhattacharyya bounds over a beta grid")
    _add_common(p)
    _add_model(p)
    p.add_argument("--betas")
    p.add_argument("--beta-min", type=float, default=0.01)
    p.add_argument("--beta-max", type=float, default=5.0)
    p.add_argument("--beta-count", type=int, default=40)

    p = sub.add_parser("strip", help="|modified SFF| over the analyticity strip")
    _add_common(p)
    _add_model(p)
    p.add_argument("--t-res", type=int, default=301)
    p.add_argument("--tau-res", type=int, default=201)

    p = sub.add_parser("spectrum", help="write the model's spectra")
    _add_common(p)
    _add_model(p)

    p = sub.add_parser("figure", help="data files behind one figure")
    _add_common(p)
    p.add_argument("id", help="one of 2, 3, 4, 5, 6, S1, S2, S3")

    p = sub.add_parser("acceptance", help="run the acceptance criteria")
    _add_common(p)
    p.add_argument("--only", help="comma-separated criterion numbers")
    return ap


def resolve(args) -> dict:
    """Merge defaults, config file and flags into plain dicts."""
    file_values = read_config_file(args.config) if getattr(args, "config", None) else {}
    run = file_values.get("run", {})
    out = {
        "seed": args.seed if args.seed is not None else int(run.get("seed", 0)),
        "out_dir": args.out_dir or run.get("out_dir", "out"),
        "fmt": args.fmt or run.get("format", "both"),
    }
    if out["fmt"] not in ("csv", "json", "both"):
        raise InvalidArgument(f"unknown format {out['fmt']!r}")
    if not hasattr(args, "model"):
        return out
    model = args.model or run.get("model", "ho")
    if model not in MODELS:
        raise InvalidArgument(f"unknown model {model!r}")
    flags = vars(args)
    out["model"] = model
    out["thermal"] = merge("thermal", file_values, {"beta": flags.get("beta"), "hbar": flags.get("hbar"), "d": flags.get("d")})
    out["d_given"] = flags.get("d") is not None or "d" in file_values.get("thermal", {})
    out["grid"] = merge("grid", file_values, {"start": flags.get("t_start"), "stop": flags.get("t_stop"),
                                              "count": flags.get("t_count"), "spacing": flags.get("t_spacing")})
    keys = {k for k in merge(model, {}, {})}
    out["block"] = merge(model, file_values, {k: flags.get(k) for k in keys})
    return out


def _params(cfg, beta=None):
    from .spectra import ThermalParams
    th = cfg["thermal"]
    d = th["d"]
    if cfg["model"] == "cs" and not cfg["d_given"]:
        d = cfg["block"]["particles"]
    return ThermalParams(th["beta"] if beta is None else beta, th["hbar"], d)


def _kicked_top_config(cfg):
    from .kickedtop import KickedTopConfig
    b = cfg["block"]
    return KickedTopConfig(b["spin"], parse_vector(b["p"]), parse_vector(b["k"]), b["tau_p"], b["window_frac"],
                           b["nav"], cfg["seed"], cfg["thermal"]["hbar"], b["sampling"], b["branch"])


def build_spectra(cfg, beta=None):
    """Spectra of the configured model (a list), or ``None`` for closed-form-only models."""
    from .kickedtop import kicked_top_ensemble
    from .spectra import GUEConfig, explicit_spectrum, gue_ensemble, ho_levels_needed, ho_spectrum
    b = cfg["block"]
    hbar = cfg["thermal"]["hbar"]
    beta = cfg["thermal"]["beta"] if beta is None else beta
    m = cfg["model"]
    if m == "ho":
        n = b["levels"] or max(200, ho_levels_needed(beta, b["omega"], hbar))
        return [ho_spectrum(b["omega"], n, hbar)]
    if m == "explicit":
        vals = parse_float_list(b["energies"])
        if not vals:
            raise InvalidArgument("explicit model needs --energies")
        return [explicit_spectrum(sorted(vals))]
    if m == "gue":
        return gue_ensemble(GUEConfig(b["dim"], b["sigma"], b["nav"], cfg["seed"]))
    if m == "kicked-top":
        return kicked_top_ensemble(_kicked_top_config(cfg))
    return None


def _needs_spectra(cfg):
    m, b = cfg["model"], cfg["block"]
    if m == "ho":
        return bool(b["levels"])
    if m == "gue":
        return b["mode"] != "analytic"
    return m in ("kicked-top", "explicit")


def build_model(cfg, beta=None, spectra=None):
    from .sff import EnsembleModel, GUEAnnealedModel, ProductHOModel, SpectrumModel
    from .spectra import cs_frequencies
    params = _params(cfg, beta)
    b = cfg["block"]
    m = cfg["model"]
    if m == "cs":
        return ProductHOModel(cs_frequencies(b["omega"], b["particles"]), params, f"cs(N={b['particles']})")
    if m == "ho" and not b["levels"]:
        return ProductHOModel([b["omega"]], params, "ho")
    if m == "gue" and b["mode"] == "analytic":
        return GUEAnnealedModel(b["dim"], params, b["sigma"])
    spectra = spectra if spectra is not None else build_spectra(cfg, params.beta)
    if len(spectra) == 1:
        return SpectrumModel(spectra[0], params)
    mode = b.get("mode", "exact")
    return EnsembleModel(spectra, params, "annealed" if mode == "annealed" else "exact")


def _meta(cfg, **extra):
    meta = {k: cfg[k] for k in ("model", "thermal", "block", "grid", "seed") if k in cfg}
    meta.update(extra)
    return meta


def _betas(args):
    if args.betas:
        vals = parse_float_list(args.betas)
        if not vals or any(v <= 0 for v in vals):
            raise InvalidArgument("betas must be positive")
        return np.array(vals)
    if not 0 < args.beta_min < args.beta_max or args.beta_count < 1:
        raise InvalidArgument("need 0 < beta-min < beta-max and beta-count >= 1")
    return np.geomspace(args.beta_min, args.beta_max, args.beta_count)


def cmd_sff(args, cfg):
    from .inflection import find_inflection
    times = TimeGrid(**cfg["grid"]).values()
    spectra = build_spectra(cfg) if _needs_spectra(cfg) else None
    model = build_model(cfg, spectra=spectra)
    s, l1, _ = model.log_derivs(times)
    try:
        res = find_inflection(model)
        infl = {"t0": res.t0, "eta": res.eta, "bound": res.bound, "ratio": res.ratio}
    except NumericalFailure as exc:
        infl = {"error": str(exc)}
    written = emit_table(cfg["out_dir"], "sff", ["t", "S", "Sdot_over_S"], np.column_stack([times, s, l1]),
                         _meta(cfg, label=model.label, inflection=infl), cfg["fmt"], "sff-series")
    if spectra is not None and len(spectra) > 1:
        from .sff import SpectrumModel
        per = [SpectrumModel(sp, model.params).sff(times) for sp in spectra]
        rows = [[k, t, v] for k, row in enumerate(per) for t, v in zip(times, row)]
        written += emit_table(cfg["out_dir"], "sff_realizations", ["realization", "t", "S"], rows,
                              _meta(cfg), cfg["fmt"], "sff-realizations")
    return written


def cmd_eta_scan(args, cfg):
    from .inflection import eta_scan
    betas = _betas(args)
    # the same realizations at every beta; ho spectra depend on beta through the cutoff
    spectra = build_spectra(cfg) if _needs_spectra(cfg) and cfg["model"] != "ho" else None
    results = eta_scan(lambda b: build_model(cfg, b, spectra), betas)
    d = results[0].bound * 2 * betas[0] * cfg["thermal"]["hbar"] / math.pi if results else 1
    rows = [[r.beta, r.t0, r.eta, r.bound, r.ratio, r.eta / d] for r in results]
    return emit_table(cfg["out_dir"], "eta_scan", ["beta", "t0", "eta", "bound", "ratio", "eta_over_d"], rows,
                      _meta(cfg, d=d, method=results[0].method if results else ""), cfg["fmt"], "eta-scan")


def cmd_bounds(args, cfg):
    from .bounds import bound_row
    if cfg["model"] not in ("ho", "explicit"):
        raise InvalidArgument("bounds need a single spectrum: use --model ho or explicit")
    rows = []
    for b in _betas(args):
        spec = build_spectra(cfg, b)[0]
        r = bound_row(spec, _params(cfg, b))
        rows.append([r["beta"], r["eta"], r["bound_analyticity"], r["eta_qsl"], r["eta_b"]])
    return emit_table(cfg["out_dir"], "bounds", ["beta", "eta", "bound_analyticity", "eta_qsl", "eta_b"], rows,
                      _meta(cfg), cfg["fmt"], "bound-comparison")


def cmd_strip(args, cfg):
    from .strip import strip_scan
    model = build_model(cfg)
    if len(getattr(model, "members", [])) > 1 or cfg["block"].get("mode") == "analytic":
        raise InvalidArgument("strip scans need a single spectrum or an oscillator model")
    grid = cfg["grid"]
    scan = strip_scan(model, model.params, (grid["start"], grid["stop"]), None, (args.t_res, args.tau_res))
    written = []
    if cfg["fmt"] in ("csv", "both"):
        written += emit_table(cfg["out_dir"], "strip", ["t", "tau", "magnitude"], scan.long_rows(), {}, "csv")
    from .io import write_json
    written.append(write_json(f"{cfg['out_dir']}/strip_summary.json", {"summary": scan.summary(), "metadata": _meta(cfg)},
                              "strip-scan"))
    return written


def cmd_spectrum(args, cfg):
    spectra = build_spectra(cfg)
    if spectra is None:
        raise InvalidArgument(f"model {cfg['model']} is defined by its frequencies; use --model ho")
    rows = [[k, e] for k, sp in enumerate(spectra) for e in sp.energies]
    return emit_table(cfg["out_dir"], "spectrum", ["realization", "energy"], rows,
                      _meta(cfg, labels=[s.label for s in spectra]), cfg["fmt"], "spectrum")


def cmd_figure(args, cfg):
    from .figures import FIGURES, make_figure
    if args.id.upper() not in FIGURES:
        raise InvalidArgument(f"unknown figure {args.id!r}; choose from {', '.join(FIGURES)}")
    return make_figure(args.id, cfg["out_dir"], cfg["fmt"], cfg["seed"])


def cmd_acceptance(args, cfg):
    from .acceptance import run_all
    from .io import write_json
    only = {int(x) for x in parse_float_list(args.only)} if args.only else None
    results = run_all(only)
    write_json(f"{cfg['out_dir']}/acceptance.json",
               {"results": [r.__dict__ for r in results], "all_passed": all(r.passed for r in results)}, "acceptance")
    return results


COMMANDS = {"sff": cmd_sff, "eta-scan": cmd_eta_scan, "bounds": cmd_bounds, "strip": cmd_strip,
            "spectrum": cmd_spectrum, "figure": cmd_figure, "acceptance": cmd_acceptance}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args)
        out = COMMANDS[args.command](args, cfg)
    except (InvalidArgument, DomainError, ValueError, KeyError, OSError) as exc:
        print(f"sffbound: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalFailure, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"sffbound: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.command == "acceptance":
        return EXIT_OK if all(r.passed for r in out) else EXIT_CRITERIA
    for path in out:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
