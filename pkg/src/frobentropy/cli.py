"""Command line interface: experiment runner, CSV emitters, oracle harness.

Exit codes: 0 success (including inconclusive verdicts, with a warning),
2 configuration errors, 3 window insufficiency, 4 enumeration caps.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import entropy as entropy_mod
from . import oracle as oracle_mod
from . import report as report_mod
from . import spectrum as spectrum_mod
from .config import (
    ExperimentConfig,
    build_endomorphism,
    build_ring,
    parse_config,
)
from .entropy import (
    canonical_generator,
    certificate,
    closed_form,
    entropy_estimate,
    generator_bound_constants,
    local_entropy,
    pushforward_invariants,
)
from .errors import (
    ConfigError,
    EnumerationCapError,
    FrobentropyError,
    UnsupportedConfigurationError,
    UnsupportedOperationError,
    WindowInsufficiencyError,
)
from .field import p_degree
from .grmod import GradedModule, pushforward
from .grring import length_sequence, multiplicity
from .homcalc import KoszulComplex, koszul_homology_lengths, minimal_resolution
from .monoid import ExponentSet


def _build_object(ring, phi, name: str, e: int):
    """Objects addressable from the CLI: k, R, eR, R/xR, G."""
    if name == "k":
        return GradedModule.residue_field(ring)
    if name == "R":
        return GradedModule.ring_module(ring)
    if name == "eR":
        return pushforward(GradedModule.ring_module(ring), phi, e)
    if name == "R/xR":
        from .homcalc import annihilator_element
        x = annihilator_element(ring)
        return GradedModule.quotient_by_ideal(
            ring, ExponentSet(ring.monoid, (x,)))
    if name == "G":
        return canonical_generator(ring).module
    raise ConfigError(f"unknown object {name!r}; use k, R, eR, R/xR, or G")


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

def run_experiment(cfg: ExperimentConfig, workers: int | None = None,
                   figures: bool | None = None, output_dir=None):
    """Execute the full pipeline; returns (report dict, outdir path)."""
    ring = build_ring(cfg)
    phi = build_endomorphism(cfg, ring)
    workers = cfg.workers if workers is None else workers
    figures = cfg.figures if figures is None else figures
    outdir = Path(cfg.output_dir if output_dir is None else output_dir)
    outdir.mkdir(parents=True, exist_ok=True)

    window = None
    if cfg.window_cutoff is not None:
        if len(cfg.window_cutoff) != ring.dim:
            raise ConfigError(
                f"window cutoff needs {ring.dim} axis entries")
        margin = cfg.window_margin or (2,) * ring.dim
        if len(margin) != ring.dim:
            raise ConfigError(f"window margin needs {ring.dim} axis entries")
        from .homcalc import TruncationWindow
        window = TruncationWindow(tuple(cfg.window_cutoff), tuple(margin))

    lengths = length_sequence(ring, phi, cfg.e_max, cap=cfg.enumeration_cap)
    growth = local_entropy(ring, phi, cfg.e_max,
                           ratio_bound=cfg.ratio_bound,
                           drift_factor=cfg.drift_factor,
                           cap=cfg.enumeration_cap)
    gen = canonical_generator(ring)
    consts = generator_bound_constants(ring, gen, window=window)
    mult_report = multiplicity(ring, tol=cfg.multiplicity_tol,
                               cap=cfg.enumeration_cap)

    t_grid = tuple(float(t) for t in cfg.t_grid)

    def row_for(e: int) -> dict:
        mu, betti = pushforward_invariants(ring, phi, e,
                                           class_cap=cfg.class_cap,
                                           window=window)
        bounds = {t: certificate(ring, phi, gen, consts, lengths[e], e, t,
                                 betti) for t in t_grid}
        return {"e": e, "L_e": lengths[e], "mu_eR": mu, "betti": betti,
                "bounds": bounds}

    exponents = list(range(cfg.e_max + 1))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row_for, exponents))
    else:
        rows = [row_for(e) for e in exponents]

    certs = [c for row in rows for c in row["bounds"].values()]
    cf = closed_form("pushforward_Db", ring, phi)
    estimates = [entropy_estimate(certs, t, cf, tol=cfg.rate_tol)
                 for t in t_grid]

    closed_forms = {}
    if phi.kind == "frobenius":
        for functor in entropy_mod.FUNCTORS:
            c = closed_form(functor, ring, phi)
            closed_forms[functor] = {"value": c.value, "exact": c.exact,
                                     "description": c.description}
    else:
        closed_forms["pushforward_Db"] = {
            "value": cf.value, "exact": cf.exact, "description": cf.description}

    report = {
        "version": report_mod.VERSION,
        "fingerprint": report_mod.fingerprint(cfg.raw_text),
        "config": cfg.as_dict(),
        "ring": ring.describe(),
        "endomorphism": phi.describe(),
        "invariants": {
            "dim": ring.dim,
            "edim": ring.edim,
            "char": ring.char,
            "p_degree": p_degree(ring.field),
            "regular": ring.is_regular,
            "multiplicity": {
                "value": mult_report.value,
                "residual": mult_report.residual,
                "stabilized": mult_report.stabilized,
                "window": list(mult_report.window),
            },
        },
        "length_sequence": list(lengths),
        "local_entropy": {
            "alpha_hat": growth.alpha_hat,
            "target": growth.target_log,
            "classification": growth.classification,
            "tail": list(growth.tail),
            "witness": growth.witness,
            "fekete_submultiplicative": growth.fekete_submultiplicative,
        },
        "generator": {
            "kind": gen.kind,
            "description": gen.describe(),
            "N": consts.N,
            "B": consts.B,
            "koszul_lengths": list(consts.lengths),
        },
        "certificates": [
            {"e": row["e"], "L_e": row["L_e"], "mu_eR": row["mu_eR"],
             "betti": list(row["betti"]),
             "bounds": {repr(t): row["bounds"][t].as_dict() for t in t_grid}}
            for row in rows
        ],
        "estimates": [est.as_dict() for est in estimates],
        "closed_forms": closed_forms,
        "csv_columns": report_mod.entropy_csv_columns(ring.dim, t_grid),
        "csv_file": "entropy_run.csv",
    }

    report_mod.write_entropy_csv(outdir / "entropy_run.csv", ring.dim,
                                 t_grid, rows)
    figure_files = []
    if figures:
        from . import figures as figures_mod
        figure_files = figures_mod.render_run_figures(
            outdir, lengths, phi.u, ring.dim, rows, estimates, cf.value,
            ring.describe())
    report["figures"] = figure_files
    report_mod.write_json(report, outdir / "report.json")
    return report, outdir


def _cmd_run(args) -> int:
    cfg = parse_config(args.config)
    figures = False if args.no_figures else None
    report, outdir = run_experiment(cfg, workers=args.workers,
                                    figures=figures,
                                    output_dir=args.output_dir)
    print(f"ring: {report['ring']}   endomorphism: {report['endomorphism']}")
    le = report["local_entropy"]
    print(f"local entropy: alpha_hat={le['alpha_hat']} "
          f"target={le['target']} [{le['classification']}]")
    inconclusive = False
    for est in report["estimates"]:
        if est["verdict"] == "inconclusive":
            inconclusive = True
            print(f"t={est['t']}: inconclusive (need >= 4 usable exponents)")
            continue
        tag = " (partial: proven lower bound only)" if est["partial"] else ""
        print(f"t={est['t']}: lower-rate={est['alpha_low']:.6f} "
              f"upper-rate={est['alpha_high']:.6f} "
              f"closed={est['closed_form']:.6f} verdict={est['verdict']}{tag}")
    print(f"report: {outdir / 'report.json'}")
    if inconclusive:
        print("warning: some estimates inconclusive; raise e_max", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# betti / koszul
# ---------------------------------------------------------------------------

def _cmd_betti(args) -> int:
    cfg = parse_config(args.config)
    ring = build_ring(cfg)
    phi = build_endomorphism(cfg, ring)
    module = _build_object(ring, phi, args.object, args.e)
    steps = args.steps if args.steps is not None else 2 * ring.dim
    table = minimal_resolution(module, steps)
    label = args.object if args.object != "eR" else f"eR[e={args.e}]"
    rows = [
        (label, col.index, col.value,
         report_mod.degrees_cell(col.degrees), col.stabilized)
        for col in table.columns
    ]
    header = ["object", "i", "beta_i", "degrees", "stabilized"]
    if args.output:
        report_mod.write_table_csv(args.output, header, rows)
        print(f"wrote {args.output}")
    else:
        report_mod.write_table_csv("/dev/stdout", header, rows)
    if not table.all_stabilized:
        print("warning: unstabilized Betti column; enlarge the window",
              file=sys.stderr)
        return 3
    return 0


def _cmd_koszul(args) -> int:
    cfg = parse_config(args.config)
    ring = build_ring(cfg)
    phi = build_endomorphism(cfg, ring)
    module = _build_object(ring, phi, args.object, args.e)
    kos = KoszulComplex.of_maximal_ideal(ring)
    rep = koszul_homology_lengths(module, kos)
    label = args.object if args.object != "eR" else f"eR[e={args.e}]"
    rows = []
    for i in range(len(rep.lengths)):
        rows.append((label, -i, rep.lengths[i],
                     report_mod.degrees_cell(rep.degree_support[i]), True))
    header = ["object", "i", "len_H_i", "degrees", "stabilized"]
    if args.output:
        report_mod.write_table_csv(args.output, header, rows)
        print(f"wrote {args.output}")
    else:
        report_mod.write_table_csv("/dev/stdout", header, rows)
    return 0


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def _cmd_spectrum(args) -> int:
    if args.action != "check":
        raise ConfigError(f"unknown spectrum action {args.action!r}")
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read prime file: {exc}") from exc
    system = spectrum_mod.parse_prime_file(text)
    graph = spectrum_mod.graph_and_connectivity(system)
    out = {
        "nvars": system.nvars,
        "p": system.p,
        "primes": [pr.describe() for pr in system.primes],
        "graph": graph.as_dict(),
    }
    if graph.connected:
        out["beta"] = spectrum_mod.beta_constant(system)
    else:
        out["beta_per_component"] = [
            spectrum_mod.beta_constant(spectrum_mod.PrimeSystem(
                system.nvars, system.p,
                tuple(system.primes[i] for i in comp)))
            for comp in graph.components
        ]
    checks = []
    for i, small in enumerate(system.primes):
        for j, large in enumerate(system.primes):
            if i != j and small.contains(large):
                c = spectrum_mod.check_height_alpha(small, large)
                checks.append({
                    "small": small.describe(), "large": large.describe(),
                    "constant_ok": c.constant_ok, "kunz_ok": c.kunz_ok,
                })
    out["height_alpha_checks"] = checks
    text_out = json.dumps(out, indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text_out)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text_out)
    return 0


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def _ints_arg(raw: str):
    return tuple(int(x) for x in raw.replace("{", "").replace("}", "")
                 .split(",") if x.strip())


def _cmd_oracle(args) -> int:
    sub = args.oracle_command
    if sub == "gaps":
        gaps, frob, conductor = oracle_mod.oracle_gaps(_ints_arg(args.generators))
        print(json.dumps({"gaps": list(gaps), "frobenius_number": frob,
                          "conductor": conductor}))
        return 0
    if sub == "complement":
        out = oracle_mod.oracle_complement(_ints_arg(args.generators),
                                           list(_ints_arg(args.ideal)))
        print(json.dumps({"complement": out, "count": len(out)}))
        return 0
    if sub == "pushforward-decompose":
        classes = oracle_mod.oracle_pushforward_decompose(
            _ints_arg(args.generators), args.u, args.e)
        print(json.dumps({str(j): d for j, d in sorted(classes.items())}))
        return 0
    cfg = parse_config(args.config)
    ring = build_ring(cfg)
    phi = build_endomorphism(cfg, ring)
    module = _build_object(ring, phi, args.object, args.e)
    if sub == "koszul-bruteforce":
        kos = KoszulComplex.of_maximal_ideal(ring)
        lengths = oracle_mod.oracle_koszul_lengths(module, kos.x, args.cap)
        print(json.dumps({"lengths_by_position": {
            str(-i): lengths[i] for i in range(len(lengths))}}))
        return 0
    if sub == "resolution-bruteforce":
        betti = oracle_mod.oracle_resolution_betti(module, args.steps, args.cap)
        print(json.dumps({"betti": list(betti)}))
        return 0
    raise ConfigError(f"unknown oracle subcommand {sub!r}")


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobentropy",
        description="certified growth bounds for pushforward functors over "
                    "graded local rings")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a full experiment from a config")
    p_run.add_argument("config")
    p_run.add_argument("--workers", type=int, default=None)
    p_run.add_argument("--output-dir", default=None)
    p_run.add_argument("--no-figures", action="store_true")
    p_run.set_defaults(func=_cmd_run)

    p_betti = sub.add_parser("betti", help="Betti table CSV for an object")
    p_betti.add_argument("config")
    p_betti.add_argument("--object", default="k")
    p_betti.add_argument("--e", type=int, default=1)
    p_betti.add_argument("--steps", type=int, default=None)
    p_betti.add_argument("--output", default=None)
    p_betti.set_defaults(func=_cmd_betti)

    p_kos = sub.add_parser("koszul", help="Koszul homology length CSV")
    p_kos.add_argument("config")
    p_kos.add_argument("--object", default="R")
    p_kos.add_argument("--e", type=int, default=1)
    p_kos.add_argument("--output", default=None)
    p_kos.set_defaults(func=_cmd_koszul)

    p_spec = sub.add_parser("spectrum", help="minimal-prime system checks")
    p_spec.add_argument("action", choices=["check"])
    p_spec.add_argument("input")
    p_spec.add_argument("--output", default=None)
    p_spec.set_defaults(func=_cmd_spectrum)

    p_or = sub.add_parser("oracle", help="brute-force cross-check oracles")
    or_sub = p_or.add_subparsers(dest="oracle_command", required=True)
    o_gaps = or_sub.add_parser("gaps")
    o_gaps.add_argument("generators")
    o_comp = or_sub.add_parser("complement")
    o_comp.add_argument("generators")
    o_comp.add_argument("ideal")
    o_dec = or_sub.add_parser("pushforward-decompose")
    o_dec.add_argument("generators")
    o_dec.add_argument("u", type=int)
    o_dec.add_argument("e", type=int)
    for name in ("koszul-bruteforce", "resolution-bruteforce"):
        o_x = or_sub.add_parser(name)
        o_x.add_argument("config")
        o_x.add_argument("--object", default="R")
        o_x.add_argument("--e", type=int, default=1)
        o_x.add_argument("--cap", type=int, default=24)
        if name == "resolution-bruteforce":
            o_x.add_argument("--steps", type=int, default=2)
    p_or.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error [config]: {exc}", file=sys.stderr)
        return 2
    except WindowInsufficiencyError as exc:
        stage = getattr(exc, "stage", None) or "window"
        print(f"error [{stage}]: {exc}", file=sys.stderr)
        return 3
    except EnumerationCapError as exc:
        stage = getattr(exc, "stage", None) or "enumeration"
        print(f"error [{stage}]: {exc}", file=sys.stderr)
        return 4
    except (UnsupportedOperationError, UnsupportedConfigurationError) as exc:
        print(f"error [config]: {exc}", file=sys.stderr)
        return 2
    except FrobentropyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
