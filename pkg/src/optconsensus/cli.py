"""Command-line front end: scenario files, trace files, subcommands.

Scenario files are strict JSON (unknown keys rejected at every level):

    {
      "plant":     {"A": [[...]], "B": [[...]], "C": [[...]]},
      "exosystem": {"S": [[...]], "E": [[...]]},            # optional
      "graph":     {"weights": [[...]]},
      "costs":     {"suite": "reference" | "quadratic(a1,...,aN)"},
      "generator": "auto" | {"alpha": a, "beta": b, "gamma": g},
      "gains":     {"K": [[...]], "L1": [[...]], "L2": [[...]]}
                   | {"synthesis": {"Q": ..., "R": ..., "Qo": ..., "Ro": ...}},
      "sim":       {"horizon": T, "k2_off_window": [lo, hi],
                    "x0": ..., "w0": ..., "z0": ..., "lambda0": ...}
    }

Traces are CSV with the fixed header ``t,agent,y,z,lambda,u,e,est_err,xi,V``
(one row per step and agent, numeric cells at 12 significant digits; for
multi-input plants the u and xi cells carry Euclidean norms).

Exit codes: 0 success, 1 usage or malformed scenario, 2 assumption
violation (graph, regulator, stabilizability), 3 divergence.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .costs import builtin_suite, validate_assumption1
from .errors import (
    AssumptionViolated,
    DimensionMismatch,
    Diverged,
    InfeasibleDual,
    NoBracket,
    OptConsensusError,
    ScenarioFormatError,
    StabilizationFailed,
    UnknownSuite,
    Unsolvable,
)
from .generator import GeneratorParams, default_params, meets_step_size_condition
from .graphs import Digraph, is_strongly_connected, is_weight_balanced, spectrum
from .linalg import is_schur, schur_certificate
from .plant import Exosystem, PlantModel
from .sim import Scenario, metrics, simulate, validate_scenario
from .synthesis import (
    check_composite_observability,
    compose_gains,
    composite_matrices,
    design_feedback,
    design_observer,
    solve_regulator,
)

__all__ = ["build_scenario", "scenario_to_dict", "builtin_scenario_doc",
           "builtin_scenario", "write_trace", "read_trace", "main"]

TRACE_HEADER = ["t", "agent", "y", "z", "lambda", "u", "e", "est_err", "xi", "V"]


# ---------------------------------------------------------------------------
# Scenario parsing
# ---------------------------------------------------------------------------

def _require_keys(section, allowed, required, where):
    if not isinstance(section, dict):
        raise ScenarioFormatError("%s must be an object" % where)
    unknown = set(section) - set(allowed)
    if unknown:
        raise ScenarioFormatError(
            "unknown key(s) %s in %s" % (sorted(unknown), where))
    missing = set(required) - set(section)
    if missing:
        raise ScenarioFormatError(
            "missing key(s) %s in %s" % (sorted(missing), where))


def _matrix(doc, key, where):
    try:
        return np.asarray(doc[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ScenarioFormatError("%s.%s is not numeric" % (where, key)) from exc


def build_scenario(doc):
    """Assemble a validated :class:`Scenario` from a scenario document.

    Always solves the regulator equations (the feedforward gains need
    them); synthesizes feedback/observer gains when requested, otherwise
    validates the supplied gains with Schur certificates before accepting
    them.
    """
    _require_keys(doc, ["plant", "exosystem", "graph", "costs", "generator",
                        "gains", "sim"],
                  ["plant", "graph", "costs", "generator", "gains", "sim"],
                  "scenario")

    _require_keys(doc["plant"], ["A", "B", "C"], ["A", "B", "C"], "plant")
    try:
        model = PlantModel(A=_matrix(doc["plant"], "A", "plant"),
                           B=_matrix(doc["plant"], "B", "plant"),
                           C=_matrix(doc["plant"], "C", "plant"))
    except DimensionMismatch as exc:
        raise ScenarioFormatError("plant: %s" % exc) from exc

    if "exosystem" in doc:
        _require_keys(doc["exosystem"], ["S", "E"], ["S", "E"], "exosystem")
        try:
            exo = Exosystem(S=_matrix(doc["exosystem"], "S", "exosystem"),
                            E=_matrix(doc["exosystem"], "E", "exosystem"))
        except DimensionMismatch as exc:
            raise ScenarioFormatError("exosystem: %s" % exc) from exc
        if exo.E.shape[0] != model.n_x:
            raise ScenarioFormatError("exosystem.E rows must equal plant n_x")
    else:
        exo = Exosystem.empty(model.n_x)

    _require_keys(doc["graph"], ["weights"], ["weights"], "graph")
    try:
        graph = Digraph(weights=_matrix(doc["graph"], "weights", "graph"))
    except (DimensionMismatch, AssumptionViolated) as exc:
        raise ScenarioFormatError("graph: %s" % exc) from exc

    _require_keys(doc["costs"], ["suite"], ["suite"], "costs")
    suite = builtin_suite(doc["costs"]["suite"])
    if suite.n != graph.n:
        raise ScenarioFormatError(
            "suite %r has %d costs for %d agents"
            % (doc["costs"]["suite"], suite.n, graph.n))

    regulator = solve_regulator(model, exo)

    gains_doc = doc["gains"]
    if not isinstance(gains_doc, dict):
        raise ScenarioFormatError("gains must be an object")
    if "synthesis" in gains_doc:
        _require_keys(gains_doc, ["synthesis"], ["synthesis"], "gains")
        _require_keys(gains_doc["synthesis"], ["Q", "R", "Qo", "Ro"], [],
                      "gains.synthesis")
        syn = gains_doc["synthesis"]
        pick = lambda key: (_matrix(syn, key, "gains.synthesis")
                            if key in syn else None)
        k = design_feedback(model, pick("Q"), pick("R"))
        l1, l2 = design_observer(model, exo, pick("Qo"), pick("Ro"))
    else:
        allowed = ["K", "L1", "L2"]
        _require_keys(gains_doc, allowed, ["K", "L1"], "gains")
        k = _matrix(gains_doc, "K", "gains")
        l1 = _matrix(gains_doc, "L1", "gains")
        l2 = (_matrix(gains_doc, "L2", "gains") if "L2" in gains_doc
              else np.zeros((exo.n_w, 1)))
        if k.shape != (model.n_u, model.n_x):
            raise ScenarioFormatError("gains.K must be (n_u, n_x)")
        if l1.shape != (model.n_x, 1) or l2.shape != (exo.n_w, 1):
            raise ScenarioFormatError("gains.L1/L2 must be column vectors")
        if not is_schur(model.A + model.B @ k):
            raise AssumptionViolated("supplied K does not make A + B K Schur")
        a_tilde, c_tilde = composite_matrices(model, exo)
        if not is_schur(a_tilde + np.vstack([l1, l2]) @ c_tilde):
            raise AssumptionViolated(
                "supplied (L1, L2) do not make the observer error matrix Schur")
    gains = compose_gains(k, l1, l2, regulator)

    gen_doc = doc["generator"]
    if gen_doc == "auto":
        spec = spectrum(graph)
        if spec.lambda2 <= 0.0:
            raise AssumptionViolated(
                "automatic step sizes need a connected multi-agent graph")
        params = default_params(suite.l_lower, suite.l_upper,
                                spec.lambda2, spec.lambda_n)
    else:
        _require_keys(gen_doc, ["alpha", "beta", "gamma"],
                      ["alpha", "beta", "gamma"], "generator")
        try:
            certified = False
            try:
                s = spectrum(graph)
                certified = meets_step_size_condition(
                    GeneratorParams(float(gen_doc["alpha"]),
                                    float(gen_doc["beta"]),
                                    float(gen_doc["gamma"])),
                    suite.l_lower, suite.l_upper, s.lambda2, s.lambda_n)
            except AssumptionViolated:
                pass
            params = GeneratorParams(alpha=float(gen_doc["alpha"]),
                                     beta=float(gen_doc["beta"]),
                                     gamma=float(gen_doc["gamma"]),
                                     certified=certified)
        except (TypeError, ValueError) as exc:
            raise ScenarioFormatError("generator: %s" % exc) from exc

    sim_doc = doc["sim"]
    _require_keys(sim_doc, ["horizon", "k2_off_window", "x0", "w0", "z0",
                            "lambda0"], ["horizon"], "sim")
    try:
        horizon = int(sim_doc["horizon"])
    except (TypeError, ValueError) as exc:
        raise ScenarioFormatError("sim.horizon must be an integer") from exc
    window = None
    if "k2_off_window" in sim_doc and sim_doc["k2_off_window"] is not None:
        raw = sim_doc["k2_off_window"]
        if (not isinstance(raw, (list, tuple)) or len(raw) != 2):
            raise ScenarioFormatError("sim.k2_off_window must be [start, end]")
        window = (int(raw[0]), int(raw[1]))
    n = graph.n

    def initial(key, shape):
        if key in sim_doc and sim_doc[key] is not None:
            arr = _matrix(sim_doc, key, "sim")
        else:
            arr = np.zeros(shape)
        if arr.shape != shape:
            raise ScenarioFormatError(
                "sim.%s must have shape %r, got %r" % (key, shape, arr.shape))
        return arr

    try:
        return Scenario(
            plant=model, exo=exo, graph=graph, costs=suite, params=params,
            gains=gains, regulator=regulator, horizon=horizon,
            x0=initial("x0", (n, model.n_x)),
            w0=initial("w0", (n, exo.n_w)),
            z0=initial("z0", (n,)),
            lambda0=initial("lambda0", (n,)),
            k2_off_window=window)
    except DimensionMismatch as exc:
        raise ScenarioFormatError(str(exc)) from exc


def scenario_to_dict(scenario):
    """Canonical document form of an assembled scenario.

    All synthesis requests and defaults are resolved to explicit numbers,
    so re-parsing the document reproduces the scenario exactly.
    """
    doc = {
        "plant": {"A": scenario.plant.A.tolist(),
                  "B": scenario.plant.B.tolist(),
                  "C": scenario.plant.C.tolist()},
        "graph": {"weights": scenario.graph.weights.tolist()},
        "costs": {"suite": scenario.costs.name},
        "generator": {"alpha": scenario.params.alpha,
                      "beta": scenario.params.beta,
                      "gamma": scenario.params.gamma},
        "gains": {"K": scenario.gains.K.tolist(),
                  "L1": scenario.gains.L1.tolist(),
                  "L2": scenario.gains.L2.tolist()},
        "sim": {"horizon": scenario.horizon,
                "x0": scenario.x0.tolist(),
                "w0": scenario.w0.tolist(),
                "z0": scenario.z0.tolist(),
                "lambda0": scenario.lambda0.tolist()},
    }
    if scenario.exo.n_w > 0:
        doc["exosystem"] = {"S": scenario.exo.S.tolist(),
                            "E": scenario.exo.E.tolist()}
    else:
        del doc["gains"]["L2"]
    if scenario.k2_off_window is not None:
        doc["sim"]["k2_off_window"] = list(scenario.k2_off_window)
    return doc


# ---------------------------------------------------------------------------
# Builtin demo experiment
# ---------------------------------------------------------------------------

def builtin_scenario_doc():
    """Document for the bundled four-agent disturbance-rejection demo.

    Double-integrator-like agents on a unit-weight directed 4-ring track
    the minimizer of the reference suite while rejecting a rotating
    sinusoidal disturbance; K2 is switched off on [2000, 2250] to expose
    what the rejection term contributes. The w_i(0) phases are staggered
    a quarter turn apart so the shutdown visibly breaks consensus.
    """
    c1, s1 = float(np.cos(1.0)), float(np.sin(1.0))
    ring = [[0.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0]]
    return {
        "plant": {"A": [[1.0, 1.0], [0.0, 1.0]],
                  "B": [[0.5], [1.0]],
                  "C": [[1.0, 0.0]]},
        "exosystem": {"S": [[c1, s1], [-s1, c1]],
                      "E": [[0.5, 0.5], [s1 - c1, -c1 - s1]]},
        "graph": {"weights": ring},
        "costs": {"suite": "reference"},
        "generator": {"alpha": 1.0, "beta": 15.0, "gamma": 0.004},
        "gains": {"K": [[-0.4345, -1.0285]],
                  "L1": [[-1.8184], [-0.3543]],
                  "L2": [[-0.1527], [-0.3141]]},
        "sim": {"horizon": 3000,
                "k2_off_window": [2000, 2250],
                "w0": [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]},
    }


def builtin_scenario(horizon=None):
    """Assembled form of the bundled demo, optionally with another horizon."""
    doc = builtin_scenario_doc()
    if horizon is not None:
        doc["sim"]["horizon"] = int(horizon)
    return build_scenario(doc)


# ---------------------------------------------------------------------------
# Trace files
# ---------------------------------------------------------------------------

def _sig12(v):
    return "%.11e" % float(v)


def _scalar_channel(arr_t_i):
    # signed scalar for single-input plants, Euclidean norm otherwise
    if arr_t_i.shape[0] == 1:
        return float(arr_t_i[0])
    return float(np.linalg.norm(arr_t_i))


def write_trace(path, trace):
    """Write a trace as CSV (header + one row per step and agent)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_HEADER)
        for t in range(trace.steps):
            for i in range(trace.n):
                writer.writerow([
                    int(trace.t[t]), i + 1,
                    _sig12(trace.y[t, i]), _sig12(trace.z[t, i]),
                    _sig12(trace.lam[t, i]),
                    _sig12(_scalar_channel(trace.u[t, i])),
                    _sig12(trace.e[t, i]), _sig12(trace.est_err[t, i]),
                    _sig12(_scalar_channel(trace.xi[t, i])),
                    _sig12(trace.v[t]),
                ])


def read_trace(path):
    """Read a trace CSV back into flat column arrays keyed by header name."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != TRACE_HEADER:
            raise ScenarioFormatError("unexpected trace header %r" % header)
        rows = list(reader)
    data = {}
    for idx, name in enumerate(TRACE_HEADER):
        col = [row[idx] for row in rows]
        if name in ("t", "agent"):
            data[name] = np.array([int(v) for v in col])
        else:
            data[name] = np.array([float(v) for v in col])
    return data


def _write_profile(path, t, per_agent, label):
    """CSV with one column per agent for plotting a per-agent quantity."""
    n = per_agent.shape[1]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + ["%s_%d" % (label, i + 1) for i in range(n)])
        for row in range(per_agent.shape[0]):
            writer.writerow([int(t[row])]
                            + [_sig12(v) for v in per_agent[row]])


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def _fmt_matrix(m):
    return np.array2string(np.asarray(m, dtype=float), precision=10,
                           suppress_small=False, separator=", ")


def assumption_report(scenario):
    """One line per standing assumption, each ending in True/False."""
    balanced = is_weight_balanced(scenario.graph)
    connected = is_strongly_connected(scenario.graph)
    moduli_ok = all(bool(validate_assumption1(c)) for c in scenario.costs)
    lines = [
        "assumption checks:",
        "  graph weight-balanced: %s" % balanced,
        "  graph strongly connected: %s" % connected,
        "  cost moduli hold on the sampled interval: %s" % moduli_ok,
        "  exosystem modes persistent: %s" % scenario.exo.modes_persistent(),
        "  plant realization minimal: %s" % scenario.plant.is_minimal(),
        "  composite observer pair observable: %s"
        % check_composite_observability(scenario.plant, scenario.exo),
        "  step sizes satisfy the sufficient convergence condition: %s"
        % scenario.params.certified,
    ]
    return "\n".join(lines)


def gains_report(scenario):
    """Human-readable synthesis report: gains, residuals, certificates."""
    g, reg = scenario.gains, scenario.regulator
    a_tilde, c_tilde = composite_matrices(scenario.plant, scenario.exo)
    fb_ok, fb_pivot = schur_certificate(
        scenario.plant.A + scenario.plant.B @ g.K)
    ob_ok, ob_pivot = schur_certificate(
        a_tilde + np.vstack([g.L1, g.L2]) @ c_tilde)
    lines = [
        "feedback gain K:\n%s" % _fmt_matrix(g.K),
        "observer gain L1:\n%s" % _fmt_matrix(g.L1),
        "observer gain L2:\n%s" % _fmt_matrix(g.L2),
        "feedforward K1:\n%s" % _fmt_matrix(g.K1),
        "feedforward K2:\n%s" % _fmt_matrix(g.K2),
        "regulator X1:\n%s" % _fmt_matrix(reg.X1),
        "regulator U1:\n%s" % _fmt_matrix(reg.U1),
        "regulator X2:\n%s" % _fmt_matrix(reg.X2),
        "regulator U2:\n%s" % _fmt_matrix(reg.U2),
        "regulator residuals: " + ", ".join(
            "%s=%.3e" % (k, v) for k, v in reg.residuals.items()),
        "Schur certificate A+BK: %s (min Cholesky pivot %s)"
        % (fb_ok, "%.6e" % fb_pivot if fb_pivot is not None else "n/a"),
        "Schur certificate observer: %s (min Cholesky pivot %s)"
        % (ob_ok, "%.6e" % ob_pivot if ob_pivot is not None else "n/a"),
        "generator params: alpha=%g beta=%g gamma=%g (certified=%s)"
        % (scenario.params.alpha, scenario.params.beta,
           scenario.params.gamma, scenario.params.certified),
        assumption_report(scenario),
    ]
    return "\n".join(lines) + "\n"


def summary_report(trace, scenario, notes):
    m = metrics(trace, scenario.k2_off_window)
    lines = [
        "aggregate minimizer y* = %.10g" % m.y_star,
        "steps recorded: %d (horizon %d, %d agents)"
        % (trace.steps, scenario.horizon, trace.n),
        "terminal output spread: %.6e" % m.terminal_spread,
        "tail max |e| (last 10%% of steps): %.6e" % m.tail_max_e,
        "tail max |Xi| (last 10%% of steps): %.6e" % m.tail_max_xi,
    ]
    if m.window is not None:
        lines += [
            "K2 off window %s:" % (list(scenario.k2_off_window),),
            "  pre-window tail max |e|: %.6e" % m.window.pre_tail_max_e,
            "  in-window max |e|:       %.6e" % m.window.window_max_e,
            "  final max |e|:           %.6e" % m.window.final_max_e,
            "  pre-window output spread: %.6e" % m.window.pre_spread,
            "  in-window output spread:  %.6e" % m.window.window_spread,
        ]
    for note in notes:
        lines.append("warning: %s" % note)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _apply_overrides(doc, overrides):
    for item in overrides or []:
        if "=" not in item:
            raise ScenarioFormatError("override %r is not key=value" % item)
        key, raw = item.split("=", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        target = doc
        parts = key.split(".")
        for part in parts[:-1]:
            if part not in target or not isinstance(target[part], dict):
                target[part] = {}
            target = target[part]
        target[parts[-1]] = value


def _load_doc(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ScenarioFormatError("cannot read scenario %r: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError("scenario %r is not valid JSON: %s" % (path, exc))


def _run_and_write(scenario, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    notes = validate_scenario(scenario)
    trace = simulate(scenario, emit_warnings=False)
    write_trace(out / "trace.csv", trace)
    (out / "gains.txt").write_text(gains_report(scenario))
    (out / "summary.txt").write_text(summary_report(trace, scenario, notes))
    return trace


def cmd_run(args):
    doc = _load_doc(args.scenario)
    _apply_overrides(doc, args.override)
    if args.horizon is not None:
        doc.setdefault("sim", {})["horizon"] = args.horizon
    scenario = build_scenario(doc)
    if args.dump_canonical:
        Path(args.dump_canonical).write_text(
            json.dumps(scenario_to_dict(scenario), indent=2) + "\n")
        return 0
    if args.out is None:
        raise ScenarioFormatError("--out is required unless --dump-canonical is given")
    trace = _run_and_write(scenario, args.out)
    m = metrics(trace, scenario.k2_off_window)
    print("run complete: %d steps, %d agents, tail max |e| = %.3e"
          % (trace.steps, trace.n, m.tail_max_e))
    return 0


def cmd_demo(args):
    doc = builtin_scenario_doc()
    if args.horizon is not None:
        doc["sim"]["horizon"] = args.horizon
    scenario = build_scenario(doc)
    if args.dump_canonical:
        Path(args.dump_canonical).write_text(
            json.dumps(scenario_to_dict(scenario), indent=2) + "\n")
        return 0
    if args.out is None:
        raise ScenarioFormatError("--out is required unless --dump-canonical is given")
    trace = _run_and_write(scenario, args.out)
    out = Path(args.out)
    _write_profile(out / "fig_generator_z.csv", trace.t, trace.z, "z")
    _write_profile(out / "fig_generator_lambda.csv", trace.t, trace.lam, "lambda")
    _write_profile(out / "fig_outputs.csv", trace.t, trace.y, "y")
    m = metrics(trace, scenario.k2_off_window)
    print("demo complete: y* = %.6g, tail max |e| = %.3e, window max |e| = %.3e"
          % (m.y_star, m.tail_max_e,
             m.window.window_max_e if m.window else float("nan")))
    return 0


def cmd_synthesize(args):
    doc = _load_doc(args.scenario)
    _apply_overrides(doc, args.override)
    scenario = build_scenario(doc)
    report = gains_report(scenario)
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "gains.txt").write_text(report)
    sys.stdout.write(report)
    return 0


class _ArgumentParser(argparse.ArgumentParser):
    # the spec'd exit-code table reserves 2 for assumption violations
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        raise SystemExit(1)


def _build_parser():
    parser = _ArgumentParser(
        prog="optconsensus",
        description="Distributed optimal output consensus with disturbance rejection")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    run = sub.add_parser("run", help="simulate a scenario file")
    run.add_argument("--scenario", required=True, help="scenario JSON path")
    run.add_argument("--out", default=None, help="output directory")
    run.add_argument("--horizon", type=int, default=None,
                     help="override sim.horizon")
    run.add_argument("--override", action="append", default=[],
                     metavar="KEY=VALUE",
                     help="dotted-path scenario override, repeatable")
    run.add_argument("--dump-canonical", default=None, metavar="PATH",
                     help="write the canonical scenario JSON and exit")
    run.set_defaults(func=cmd_run)

    demo = sub.add_parser("demo", help="run the bundled four-agent experiment")
    demo.add_argument("--out", default=None, help="output directory")
    demo.add_argument("--horizon", type=int, default=None,
                      help="override the 3000-step default horizon")
    demo.add_argument("--dump-canonical", default=None, metavar="PATH",
                      help="write the demo scenario JSON and exit")
    demo.set_defaults(func=cmd_demo)

    syn = sub.add_parser("synthesize",
                         help="solve the regulator equations and report gains")
    syn.add_argument("--scenario", required=True, help="scenario JSON path")
    syn.add_argument("--out", default=None, help="optional output directory")
    syn.add_argument("--override", action="append", default=[],
                     metavar="KEY=VALUE",
                     help="dotted-path scenario override, repeatable")
    syn.set_defaults(func=cmd_synthesize)
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ScenarioFormatError, UnknownSuite) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except Diverged as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except (AssumptionViolated, Unsolvable, StabilizationFailed,
            InfeasibleDual, NoBracket) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OptConsensusError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
