"""Command-line surface: parameter classification, spectra, kernels,
simulations, sweeps and figure-data reproduction with deterministic
(%.12e) serialization and exit codes 0 (ok), 2 (domain), 3 (numerical)."""

import argparse
import json
import os
import sys

import numpy as np

from . import absspec, greens, regions, simulate, spectra
from .errors import DomainError, NumericalError
from .params import Params

FLOAT_FMT = "%.12e"


# ---------------------------------------------------------------------------
# serialization

def _fmt(x):
    return FLOAT_FMT % float(x)


def _jsonable(obj):
    """Round floats through the fixed format so JSON output is byte-stable."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, complex):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if x != x or x in (float("inf"), float("-inf")):
            return str(x)
        return float(_fmt(x))
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit_json(obj, out):
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"
    _write(text, out)


def _emit_csv(header, rows, out):
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, str):
                cells.append(v)
            elif isinstance(v, (int, np.integer)) and not isinstance(v, bool):
                cells.append(str(int(v)))
            else:
                cells.append(_fmt(v))
        lines.append(",".join(cells))
    _write("\n".join(lines) + "\n", out)


def _write(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(result, args):
    """result = {'json': obj} and/or {'csv': (header, rows)}."""
    fmt = getattr(args, "format", "json")
    if fmt == "csv" and "csv" in result:
        _emit_csv(*result["csv"], getattr(args, "out", None))
    else:
        _emit_json(result["json"] if "json" in result
                   else {"rows": result["csv"][1]}, getattr(args, "out", None))


def _params(args):
    return Params(d=args.d, alpha=args.alpha, mu=args.mu,
                  beta=getattr(args, "beta", 0.0),
                  s=getattr(args, "s", None))


# ---------------------------------------------------------------------------
# commands

def cmd_classify(args):
    lab = regions.classify(args.d, args.alpha, args.mu)
    return {"json": {"d": args.d, "alpha": args.alpha, "mu": args.mu,
                     "label": lab.label, "margins": lab.margins}}


def cmd_boundaries(args):
    b = spectra.region_boundaries(args.alpha, args.d)
    obj = {"alpha": args.alpha, "d": args.d, "mu_rem": b.mu_rem,
           "mu_abs0": b.mu_abs0, "mu_pw": b.mu_pw}
    rows = [(args.alpha, args.d, b.mu_rem, b.mu_abs0,
             b.mu_pw if b.mu_pw is not None else float("nan"))]
    return {"json": obj,
            "csv": (["alpha", "d", "mu_rem", "mu_abs0", "mu_pw"], rows)}


def cmd_ess_spectrum(args):
    p = _params(args)
    curve = spectra.ess_curve(args.component, args.eta, p,
                              k_max=args.k_max, n=args.n)
    rows = list(curve.rows())
    return {"csv": (["k", "re_lambda", "im_lambda", "component", "eta"], rows),
            "json": {"component": curve.component, "eta": curve.eta,
                     "k": list(curve.k), "re_lambda": list(curve.lam.real),
                     "im_lambda": list(curve.lam.imag)}}


def _spec_payload(spec):
    rows = []
    for i, br in enumerate(spec.curves):
        for k, lam, nu in zip(br.k, br.lam, br.nu):
            rows.append((i, k, lam.real, lam.imag, nu.real, nu.imag))
    sing = []
    for sp in spec.singular_points:
        if isinstance(sp, absspec.TriplePoint):
            sing.append({"kind": "triple_point", "lam": sp.lam,
                         "eta": sp.eta, "k_v": sp.k_v})
        else:
            sing.append({"kind": sp.kind, "lam": sp.lam, "nu": sp.nu,
                         "pinched": sp.pinched})
    return rows, sing


def cmd_abs_spectrum(args):
    p = _params(args)
    spec = absspec.trace_abs_spectrum(p, coarse=args.coarse)
    rows, sing = _spec_payload(spec)
    header = ["branch_id", "k", "re_lambda", "im_lambda", "re_nu", "im_nu"]
    return {"csv": (header, rows),
            "json": {"max_re": spec.max_re, "lambda_u_bp": spec.lambda_u_bp,
                     "singular_points": sing,
                     "n_branches": len(spec.curves)}}


def cmd_double_roots(args):
    p = _params(args)
    if args.numeric:
        box = tuple(float(v) for v in args.box.split(","))
        drs = absspec.double_roots_numeric(p, box, grid=args.grid)
    elif p.at_sstar:
        drs = absspec.double_roots_closed(p)
    else:
        drs = absspec.double_roots_generic(p)
    items = [{"lam": dr.lam, "nu": dr.nu, "kind": dr.kind,
              "pinched": dr.pinched} for dr in drs]
    rows = [(dr.kind, dr.lam.real, dr.lam.imag, dr.nu.real, dr.nu.imag,
             int(dr.pinched)) for dr in drs]
    header = ["kind", "re_lambda", "im_lambda", "re_nu", "im_nu", "pinched"]
    return {"json": {"double_roots": items}, "csv": (header, rows)}


def cmd_triple_point(args):
    p = _params(args)
    tp = absspec.full_triple_point(p)
    return {"json": {"lam": tp.lam, "eta": tp.eta, "k_v": tp.k_v,
                     "members": list(tp.members)}}


def cmd_sh_abs(args):
    p = _params(args)
    sh = absspec.sh_abs_closed(p)
    etas = np.linspace(sh.eta_tr, sh.eta_dr, args.n)
    lam = sh.branch(etas)
    rows = [(e, l.real, l.imag) for e, l in zip(etas, np.atleast_1d(lam))]
    return {"json": {"eta_tr": sh.eta_tr, "lambda_tr": sh.lambda_tr,
                     "eta_dr": sh.eta_dr,
                     "lambda_dr": list(sh.lambda_dr)},
            "csv": (["eta", "re_lambda", "im_lambda"], rows)}


def cmd_sabs(args):
    p = _params(args)
    val = absspec.s_abs(p, tol=args.tol)
    return {"json": {"d": args.d, "alpha": args.alpha, "mu": args.mu,
                     "s_abs": val, "s_star": p.s_star}}


def cmd_gamma_v(args):
    p = _params(args)
    g = regions.gamma_v(p)
    return {"json": {"gamma_v": g, "M_l": regions.default_omega(p).M_l}}


def cmd_check_pi(args):
    p = _params(args)
    res = regions.check_decay_condition(p)
    return {"json": res}


def cmd_greens(args):
    p = _params(args)
    lam = complex(args.lam_re, args.lam_im)
    xs = np.linspace(args.x_min, args.x_max, args.n)
    rows = []
    for x in xs:
        v22 = greens.g22(lam, float(x), args.y, p)
        v12 = greens.g12_infty(lam, float(x), args.y, p).value
        rows.append((x, v22.real, v22.imag, v12.real, v12.imag))
    header = ["x", "re_g22", "im_g22", "re_g12", "im_g12"]
    return {"csv": (header, rows),
            "json": {"lam": lam, "y": args.y, "rows": rows}}


def _sim_config(args, p):
    return simulate.SimConfig(
        params=p, L=args.L, dx=args.dx, dt=args.dt, T=args.T,
        s_frame=args.s_frame, coupling=args.coupling, ell=args.ell,
        front_ic=args.ic, v_amp=args.v_amp, v_width=args.v_width,
        dt_out=args.dt_out, edge_threshold=args.edge_threshold)


def cmd_simulate(args):
    p = _params(args)
    if args.coupling == "cosine" and args.ell is None:
        args.ell = simulate.ell_star(p)["ell"]
    cfg = _sim_config(args, p)
    res = simulate.run(cfg)
    tr = res.trace
    rows = list(zip(tr.times, tr.core_pos, tr.edge_pos,
                    tr.weighted_norm, tr.v_sup))
    header = ["t", "core_pos", "edge_pos", "weighted_norm", "v_sup"]
    summary = {"final_time": tr.times[-1]}
    try:
        t1 = tr.times[-1]
        fit = simulate.fit_speed(tr, (t1 / 2.0, t1), which="edge")
        summary["edge_speed_frame"] = fit["speed"]
        summary["edge_speed_lab"] = fit["speed"] + cfg.s_frame
        summary["fit_r2"] = fit["r2"]
    except DomainError:
        pass
    if args.snapshot_out:
        _emit_csv(["x", "u", "v"],
                  list(zip(res.x, res.u, res.v)), args.snapshot_out)
    if args.format == "csv" and args.out:
        # trace CSV goes to --out; the summary is still reported on stdout
        _emit_csv(header, rows, args.out)
        _emit_json(summary, None)
        return None
    return {"csv": (header, rows), "json": summary}


def cmd_delay_scan(args):
    p = _params(args)
    betas = [float(b) for b in args.betas.split(",")]
    if args.ell is None:
        args.ell = simulate.ell_star(p)["ell"]
    args.coupling = "cosine"
    cfg = _sim_config(args, Params(p.d, p.alpha, p.mu, 1.0, p.s))
    res = simulate.delay_scan(p, betas, cfg)
    rows = [(b, dly, int(c)) for b, dly, c in
            zip(res["betas"], res["delays"], res["censored"])]
    return {"json": res, "csv": (["beta", "delay", "censored"], rows)}


def cmd_sweep(args):
    x_range = tuple(float(v) for v in args.x_range.split(","))
    y_range = tuple(float(v) for v in args.y_range.split(","))
    table = regions.sweep(args.plane, x_range, y_range, args.res,
                          args.fixed, jobs=args.jobs)
    header = ["x", "y", "label", "mu_rem", "mu_abs0", "mu_pw"]
    rows = [(r["x"], r["y"], r["label"], r["mu_rem"], r["mu_abs0"],
             r["mu_pw"]) for r in table]
    return {"csv": (header, rows), "json": {"rows": table}}


# ---------------------------------------------------------------------------
# figure-data reproduction

def _fig_regions(outdir, res, jobs):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    files = {}
    planes = [("alpha_d", (0.1, 6.0), (0.1, 4.0), -1.0 / 3.0,
               "region map in the (alpha, d) plane at mu = -1/3"),
              ("mu_d", (-8.0, -0.05), (0.1, 4.0), 3.0,
               "region map in the (mu, d) plane at alpha = 3")]
    colors = {"Rst": 0, "Rrem": 1, "Rabs": 2, "Rpw": 3, "invalid": 4}
    fig, axes = plt.subplots(1, 2, figsize=(11, 4.5))
    for (plane, xr, yr, fixed, desc), ax in zip(planes, axes):
        table = regions.sweep(plane, xr, yr, res, fixed, jobs=jobs)
        name = f"regions_{plane}.csv"
        header = ["x", "y", "label", "mu_rem", "mu_abs0", "mu_pw"]
        rows = [(r["x"], r["y"], r["label"], r["mu_rem"], r["mu_abs0"],
                 r["mu_pw"]) for r in table]
        _emit_csv(header, rows, os.path.join(outdir, name))
        files[name] = desc
        z = np.array([colors[r["label"]] for r in table]).reshape(res, res)
        ax.imshow(z.T, origin="lower", aspect="auto",
                  extent=[*xr, *yr], cmap="viridis", vmin=0, vmax=4)
        ax.set_title(desc, fontsize=8)
        ax.set_xlabel("alpha" if plane == "alpha_d" else "mu")
        ax.set_ylabel("d")
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "regions.png"), dpi=130)
    files["regions.png"] = "rendered region maps"
    return files


def _fig_sh_abs(outdir, n):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    files = {}
    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    for s, ax in zip((0.5, 2.0, 10.0), axes):
        p = Params(d=1.0, alpha=1.0, mu=-0.5, s=s)
        sh = absspec.sh_abs_closed(p)
        etas = np.linspace(sh.eta_tr, sh.eta_dr, n)
        lam = sh.branch(etas)
        name = f"sh_abs_s{s:g}.csv"
        rows = [(e, l.real, l.imag) for e, l in zip(etas, lam)]
        _emit_csv(["eta", "re_lambda", "im_lambda"], rows,
                  os.path.join(outdir, name))
        files[name] = (f"absolute-spectrum branch of the fourth-order "
                       f"subsystem at s={s:g}, mu=-1/2")
        for sign in (1, -1):
            ax.plot(lam.real, sign * lam.imag, "b-")
        ax.plot([sh.lambda_tr], [0.0], "ko")
        ax.plot([sh.lambda_dr[0].real, sh.lambda_dr[1].real],
                [sh.lambda_dr[0].imag, sh.lambda_dr[1].imag], "r*")
        ax.set_title(f"s = {s:g}")
        ax.set_xlabel("Re lambda")
        ax.set_ylabel("Im lambda")
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "sh_abs.png"), dpi=130)
    files["sh_abs.png"] = "rendered branches with triple point and double roots"
    return files


def _fig_abs_spec(outdir):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    files = {}
    fig, axes = plt.subplots(1, 2, figsize=(10, 4.5))
    for (d, a, mu), ax in zip(((1.0, 1.0, -1.0), (0.5, 2.0, -1.0)), axes):
        p = Params(d=d, alpha=a, mu=mu)
        spec = absspec.trace_abs_spectrum(p)
        rows, sing = _spec_payload(spec)
        tag = f"d{d:g}_a{a:g}_mu{mu:g}"
        name = f"abs_spec_{tag}.csv"
        _emit_csv(["branch_id", "k", "re_lambda", "im_lambda",
                   "re_nu", "im_nu"], rows, os.path.join(outdir, name))
        files[name] = (f"absolute spectrum of the full system at "
                       f"(d,alpha,mu)=({d:g},{a:g},{mu:g}), s=s_star")
        _emit_json({"singular_points": sing, "max_re": spec.max_re},
                   os.path.join(outdir, f"abs_spec_{tag}_singular.json"))
        files[f"abs_spec_{tag}_singular.json"] = \
            "double roots, resonance poles and triple points"
        for br in spec.curves:
            lam = np.array(br.lam)
            ax.plot(lam.real, lam.imag, "b.", ms=2)
            ax.plot(lam.real, -lam.imag, "b.", ms=2)
        for sp in sing:
            mk = "ko" if sp["kind"] == "triple_point" else "r*"
            ax.plot([sp["lam"].real], [sp["lam"].imag], mk)
            ax.plot([sp["lam"].real], [-sp["lam"].imag], mk)
        ax.axvline(0.0, color="gray", lw=0.5)
        ax.set_title(f"(d,alpha,mu)=({d:g},{a:g},{mu:g})", fontsize=9)
        ax.set_xlabel("Re lambda")
        ax.set_ylabel("Im lambda")
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "abs_spec.png"), dpi=130)
    files["abs_spec.png"] = "rendered absolute spectra"
    return files


def _fig_checking(outdir, n):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    p = Params(d=1.0, alpha=1.0, mu=-1.0)
    omega = regions.default_omega(p)
    rows = []
    for re in np.linspace(p.mu, -1e-6, n):
        best = -np.inf
        for im in np.linspace(0.0, 3.0, 121):
            lam = complex(re, im)
            if regions._right_of_weighted(lam, p):
                break
            if abs(lam) >= omega.M_l:
                break
            best = max(best, regions._max_re_nu12(lam, p))
        if np.isfinite(best):
            rows.append((re, -best))
    _emit_csv(["re_lambda", "gamma"], rows,
              os.path.join(outdir, "checking_hypothesis.csv"))
    arr = np.array(rows)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(arr[:, 0], 3.0 * arr[:, 1], "b-",
            label="3x decay rate of the resolvent modes")
    ax.axhline(p.s_star / (2.0 * p.d), color="r", ls="--",
               label="advection rate s*/(2d)")
    ax.set_xlabel("Re lambda")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "checking_hypothesis.png"), dpi=130)
    return {
        "checking_hypothesis.csv":
            "decay rate of the two left-decaying modes along Omega at "
            "(d,alpha,mu)=(1,1,-1)",
        "checking_hypothesis.png": "rendered decay-rate condition check",
    }


def _fig_sim_grid(outdir, T):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    p = Params(d=1.0, alpha=1.0, mu=-0.5, beta=1.0)
    ell = simulate.ell_star(p)["ell"]
    cfg = simulate.SimConfig(params=p, L=200.0, dx=0.2, dt=0.05, T=T,
                             coupling="cosine", ell=ell)
    res = simulate.run(cfg, snapshot_times=(T / 2.0, T))
    tr = res.trace
    _emit_csv(["t", "core_pos", "edge_pos", "v_sup"],
              list(zip(tr.times, tr.core_pos, tr.edge_pos, tr.v_sup)),
              os.path.join(outdir, "sim_trace.csv"))
    _emit_csv(["x", "u", "v"], list(zip(res.x, res.u, res.v)),
              os.path.join(outdir, "sim_final_profile.csv"))
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    axes[0].plot(tr.times, tr.core_pos, label="core (u = 1/2)")
    axes[0].plot(tr.times, tr.edge_pos, label="edge (|u| = 1e-3)")
    axes[0].set_xlabel("t")
    axes[0].set_ylabel("position (comoving frame)")
    axes[0].legend(fontsize=8)
    axes[1].semilogy(res.x, np.maximum(np.abs(res.u), 1e-18), label="|u|")
    axes[1].semilogy(res.x, np.maximum(np.abs(res.v), 1e-18), label="|v|")
    axes[1].set_xlabel("x")
    axes[1].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "sim_grid.png"), dpi=130)
    return {
        "sim_trace.csv": "front trackers of the resonantly coupled run at "
                         "(1,1,-1/2), beta=1",
        "sim_final_profile.csv": "final u and v profiles",
        "sim_grid.png": "rendered front trajectories and log profiles",
    }


def _fig_delay(outdir, T):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    p = Params(d=1.0, alpha=1.0, mu=-0.5)
    ell = simulate.ell_star(p)["ell"]
    cfg = simulate.SimConfig(params=p, L=200.0, dx=0.2, dt=0.05, T=T,
                             coupling="cosine", ell=ell)
    res = simulate.delay_scan(p, [1.0, 1e-8, 1e-16], cfg)
    rows = [(b, dly, int(c)) for b, dly, c in
            zip(res["betas"], res["delays"], res["censored"])]
    _emit_csv(["beta", "delay", "censored"], rows,
              os.path.join(outdir, "delay.csv"))
    _emit_json({"slope_vs_log10beta": res["slope_vs_log10beta"]},
               os.path.join(outdir, "delay_fit.json"))
    fig, ax = plt.subplots(figsize=(5.5, 4))
    lx = np.log10(res["betas"])
    ax.plot(lx, res["delays"], "bo-")
    ax.set_xlabel("log10 beta")
    ax.set_ylabel("onset delay of the resonant mode")
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "delay.png"), dpi=130)
    return {
        "delay.csv": "mode-onset delay vs coupling strength at (1,1,-1/2)",
        "delay_fit.json": "fitted slope of delay vs log10 beta",
        "delay.png": "rendered delay law",
    }


def cmd_repro_figure(args):
    outdir = args.out or f"figure_{args.id}"
    os.makedirs(outdir, exist_ok=True)
    jobs = args.jobs
    if args.id == "regions":
        files = _fig_regions(outdir, args.res or 80, jobs)
    elif args.id == "sh-abs":
        files = _fig_sh_abs(outdir, args.res or 200)
    elif args.id == "abs-spec":
        files = _fig_abs_spec(outdir)
    elif args.id == "checking-hypothesis":
        files = _fig_checking(outdir, args.res or 101)
    elif args.id == "sim-grid":
        files = _fig_sim_grid(outdir, args.T or 150.0)
    elif args.id == "delay":
        files = _fig_delay(outdir, args.T or 280.0)
    else:
        raise DomainError(f"unknown figure id {args.id!r}")
    _emit_json({"figure": args.id, "files": files},
               os.path.join(outdir, "manifest.json"))
    sys.stdout.write(f"wrote {len(files) + 1} files to {outdir}\n")
    return None


# ---------------------------------------------------------------------------
# parser

def _add_params(sp, mu_default=-1.0):
    sp.add_argument("--d", type=float, default=1.0)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--mu", type=float, default=mu_default)
    sp.add_argument("--beta", type=float, default=0.0)
    sp.add_argument("--s", type=float, default=None,
                    help="frame speed (default: s_star)")


def _add_io(sp):
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("csv", "json"), default="json")


def _add_sim_flags(sp):
    sp.add_argument("--L", type=float, default=200.0)
    sp.add_argument("--dx", type=float, default=0.1)
    sp.add_argument("--dt", type=float, default=0.05)
    sp.add_argument("--T", type=float, default=150.0)
    sp.add_argument("--s-frame", type=float, default=None)
    sp.add_argument("--coupling", choices=("constant", "cosine"),
                    default="constant")
    sp.add_argument("--ell", type=float, default=None)
    sp.add_argument("--ic", choices=("tanh", "matched", "none"),
                    default="tanh")
    sp.add_argument("--v-amp", type=float, default=0.1)
    sp.add_argument("--v-width", type=float, default=2.0)
    sp.add_argument("--dt-out", type=float, default=1.0)
    sp.add_argument("--edge-threshold", type=float, default=1e-3)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="frontlab",
        description="Spectral analysis and simulation of invasion fronts "
                    "coupled to a pattern-forming field.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="stability-region label")
    _add_params(sp)
    _add_io(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("boundaries", help="closed-form region boundaries")
    sp.add_argument("--d", type=float, default=1.0)
    sp.add_argument("--alpha", type=float, default=1.0)
    _add_io(sp)
    sp.set_defaults(func=cmd_boundaries)

    sp = sub.add_parser("ess-spectrum", help="weighted essential spectrum")
    _add_params(sp)
    sp.add_argument("--component", choices=("U", "V"), default="V")
    sp.add_argument("--eta", type=float, default=0.0)
    sp.add_argument("--k-max", type=float, default=None)
    sp.add_argument("--n", type=int, default=2001)
    _add_io(sp)
    sp.set_defaults(func=cmd_ess_spectrum, format="csv")

    sp = sub.add_parser("abs-spectrum", help="trace the absolute spectrum")
    _add_params(sp)
    sp.add_argument("--coarse", action="store_true")
    _add_io(sp)
    sp.set_defaults(func=cmd_abs_spectrum)

    sp = sub.add_parser("double-roots", help="double roots and resonance poles")
    _add_params(sp)
    sp.add_argument("--numeric", action="store_true")
    sp.add_argument("--box", default="-3,1,-3,3",
                    help="re_min,re_max,im_min,im_max for --numeric")
    sp.add_argument("--grid", type=int, default=8)
    _add_io(sp)
    sp.set_defaults(func=cmd_double_roots)

    sp = sub.add_parser("triple-point", help="real triple point")
    _add_params(sp)
    _add_io(sp)
    sp.set_defaults(func=cmd_triple_point)

    sp = sub.add_parser("sh-abs",
                        help="closed-form fourth-order subsystem spectrum")
    _add_params(sp)
    sp.add_argument("--n", type=int, default=200)
    _add_io(sp)
    sp.set_defaults(func=cmd_sh_abs)

    sp = sub.add_parser("sabs", help="absolute spreading speed")
    _add_params(sp)
    sp.add_argument("--tol", type=float, default=1e-3)
    _add_io(sp)
    sp.set_defaults(func=cmd_sabs)

    sp = sub.add_parser("gamma-v", help="resolvent-mode decay rate")
    _add_params(sp)
    _add_io(sp)
    sp.set_defaults(func=cmd_gamma_v)

    sp = sub.add_parser("check-pi", help="decay-rate condition 3*gamma_v > s*/(2d)")
    _add_params(sp)
    _add_io(sp)
    sp.set_defaults(func=cmd_check_pi)

    sp = sub.add_parser("greens", help="pointwise resolvent kernels")
    _add_params(sp)
    sp.add_argument("--lam-re", type=float, default=1.0)
    sp.add_argument("--lam-im", type=float, default=0.5)
    sp.add_argument("--y", type=float, default=1.0)
    sp.add_argument("--x-min", type=float, default=-10.0)
    sp.add_argument("--x-max", type=float, default=10.0)
    sp.add_argument("--n", type=int, default=401)
    _add_io(sp)
    sp.set_defaults(func=cmd_greens, format="csv", beta=1.0)

    sp = sub.add_parser("simulate", help="run the time stepper")
    _add_params(sp)
    _add_sim_flags(sp)
    sp.add_argument("--snapshot-out", default=None)
    _add_io(sp)
    sp.set_defaults(func=cmd_simulate, format="csv")

    sp = sub.add_parser("delay-scan", help="mode-onset delay vs beta")
    _add_params(sp, mu_default=-0.5)
    _add_sim_flags(sp)
    sp.add_argument("--betas", default="1,1e-8,1e-16")
    _add_io(sp)
    sp.set_defaults(func=cmd_delay_scan)

    sp = sub.add_parser("sweep", help="region map over a parameter plane")
    sp.add_argument("--plane", choices=("alpha_d", "mu_d"), required=True)
    sp.add_argument("--x-range", required=True, help="lo,hi")
    sp.add_argument("--y-range", required=True, help="lo,hi")
    sp.add_argument("--res", type=int, default=50)
    sp.add_argument("--fixed", type=float, required=True,
                    help="the held-fixed parameter (mu or alpha)")
    sp.add_argument("--jobs", type=int, default=None)
    _add_io(sp)
    sp.set_defaults(func=cmd_sweep, format="csv")

    sp = sub.add_parser("repro-figure",
                        help="write the data and figures behind a named plot")
    sp.add_argument("--id", required=True,
                    choices=("regions", "sh-abs", "abs-spec",
                             "checking-hypothesis", "sim-grid", "delay"))
    sp.add_argument("--out", default=None, help="output directory")
    sp.add_argument("--res", type=int, default=None)
    sp.add_argument("--T", type=float, default=None)
    sp.add_argument("--jobs", type=int, default=None)
    sp.set_defaults(func=cmd_repro_figure)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "jobs", None) is None and hasattr(args, "jobs"):
        env = os.environ.get("FRONTLAB_JOBS")
        if env:
            args.jobs = int(env)
    try:
        result = args.func(args)
    except DomainError as exc:
        sys.stderr.write(f"error: domain: {exc}\n")
        return 2
    except NumericalError as exc:
        sys.stderr.write(f"error: numerical: {exc}\n")
        return 3
    if result is not None:
        _emit(result, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
