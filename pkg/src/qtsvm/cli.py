"""Command-line interface.

Subcommands: datagen, train, predict, compare, error-report.  Data goes
to stdout (or --output); diagnostics go to stderr.  Exit codes:

    0  success
    2  parse error (bad flags, malformed CSV, bad generation spec)
    3  numerical failure (singular system, degenerate hyperplane, ...)
    4  qubit cap exceeded
    5  dimension mismatch between model and samples

The seed is taken from --seed, else the QTSVM_SEED environment variable,
else the fixed constant 1234.  Nothing is ever time-seeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classical import predict_classical, train_classical
from .datagen import Line, SynthSpec, default_spec, generate_crossplanes
from .exceptions import (
    CsvFormatError,
    DimensionMismatch,
    InvalidSpec,
    QtsvmError,
    QubitCapExceeded,
)
from .hhl import HHLConfig, solve_qls, train_quantum
from .hamiltonian import trotter_error_report
from .linalg import condition_number
from .model_io import (
    ModelRecord,
    load_model,
    read_dataset_csv,
    read_samples_csv,
    save_model,
    write_dataset_csv,
)
from .prediction import PredictionConfig, predict_quantum, swap_test
from .prep import classical_hyperplane_state, prepare_sample_state
from .states import DEFAULT_QUBIT_CAP, fidelity

DEFAULT_SEED = 1234
SEED_ENV_VAR = "QTSVM_SEED"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_QUBITS = 4
EXIT_DIMENSION = 5


@dataclass(frozen=True)
class RunConfig:
    """All pipeline knobs a single CLI invocation can set."""

    c1: float = 1.0
    c2: float = 1.0
    ridge: float = 0.0
    clock_qubits: int = 8
    t0: float | None = None
    exact_evolution: bool = True
    trotter_steps_per_unit: int = 64
    shots: int = 10_000
    seed: int = DEFAULT_SEED
    max_qubits: int = DEFAULT_QUBIT_CAP

    def hhl_config(self) -> HHLConfig:
        return HHLConfig(
            clock_qubits=self.clock_qubits,
            t0=self.t0,
            evolution="exact" if self.exact_evolution else "trotter",
            trotter_steps_per_unit=self.trotter_steps_per_unit,
        )

    def prediction_config(self, exact: bool) -> PredictionConfig:
        return PredictionConfig(
            shots=self.shots, seed=self.seed, exact=exact, max_qubits=self.max_qubits
        )


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InvalidSpec(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from exc
    return DEFAULT_SEED


def _run_config(args) -> RunConfig:
    return RunConfig(
        c1=args.c1,
        c2=args.c2,
        ridge=getattr(args, "ridge", 0.0),
        clock_qubits=args.clock_qubits,
        t0=args.t0,
        exact_evolution=not args.trotter_steps,
        trotter_steps_per_unit=args.trotter_steps or 64,
        shots=args.shots,
        seed=_resolve_seed(args.seed),
        max_qubits=args.max_qubits,
    )


def _parse_line(text: str) -> Line:
    try:
        direction, offset = text.split("@")
        return Line(
            np.array([float(v) for v in direction.split(",")]),
            np.array([float(v) for v in offset.split(",")]),
        )
    except (ValueError, InvalidSpec) as exc:
        raise argparse.ArgumentTypeError(
            f"expected 'dx,dy,...@ox,oy,...', got {text!r}: {exc}"
        )


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_datagen(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.line1 or args.line2:
        if not (args.line1 and args.line2):
            raise InvalidSpec("give both --line1 and --line2 or neither")
        m1 = args.m1 if args.m1 else args.m // 2
        m2 = args.m2 if args.m2 else args.m - args.m // 2
        spec = SynthSpec(
            n_features=args.n,
            m1=m1,
            m2=m2,
            line1=args.line1,
            line2=args.line2,
            noise_sigma=args.sigma,
        )
    else:
        spec = default_spec(args.m, args.n, args.sigma)
        if args.m1 or args.m2:
            spec = SynthSpec(
                n_features=spec.n_features,
                m1=args.m1 or spec.m1,
                m2=args.m2 or spec.m2,
                line1=spec.line1,
                line2=spec.line2,
                noise_sigma=spec.noise_sigma,
            )
    data = generate_crossplanes(spec, seed)
    write_dataset_csv(args.output, data)
    _note(
        f"wrote {data.A.shape[0]}+{data.B.shape[0]} samples "
        f"({data.n_features} features) to {args.output}"
    )
    return EXIT_OK


def _train_record(path: str, cfg: RunConfig, mode: str) -> tuple[ModelRecord, dict]:
    data, fingerprint = read_dataset_csv(path)
    if mode == "classical":
        model = train_classical(data, cfg.c1, cfg.c2, ridge=cfg.ridge)
        record = ModelRecord(classical=model, dataset_fingerprint=fingerprint)
        report = {
            "mode": "classical",
            "w1": [float(v) for v in model.w1],
            "b1": model.b1,
            "w2": [float(v) for v in model.w2],
            "b2": model.b2,
        }
        return record, report
    result = train_quantum(
        data, cfg.c1, cfg.c2, cfg.hhl_config(), cfg.seed, max_qubits=cfg.max_qubits
    )
    record = ModelRecord(
        classical=result.classical_model,
        dataset_fingerprint=fingerprint,
        quantum_state1=result.state1,
        quantum_state2=result.state2,
        quantum_report=result.report(),
    )
    report = {"mode": "quantum", **result.report()}
    return record, report


def cmd_train(args) -> int:
    cfg = _run_config(args)
    record, report = _train_record(args.dataset, cfg, args.mode)
    save_model(args.output, record)
    _note(f"model written to {args.output}")
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_predict(args) -> int:
    cfg = _run_config(args)
    record = load_model(args.model)
    X = read_samples_csv(args.samples)
    n = record.classical.w1.shape[0]
    if X.shape[1] != n:
        raise DimensionMismatch(
            f"model expects {n} features, samples have {X.shape[1]}"
        )
    lines = []
    if record.is_quantum and not args.classical:
        pconf = cfg.prediction_config(args.exact)
        labels, estimates = predict_quantum(
            X, record.quantum_state1, record.quantum_state2, pconf
        )
        lines.append("label,ratio1,ratio2,margin")
        for label, est in zip(labels, estimates):
            lines.append(
                f"{label},{est.ratio1!r},{est.ratio2!r},{est.margin!r}"
            )
    else:
        lines.append("label,d1_sq,d2_sq")
        for row in X:
            label, d1, d2 = predict_classical(record.classical, row)
            lines.append(f"{label},{d1**2!r},{d2**2!r}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _run_config(args)
    data, fingerprint = read_dataset_csv(args.dataset)
    _note("training quantum pipeline...")
    result = train_quantum(
        data, cfg.c1, cfg.c2, cfg.hhl_config(), cfg.seed, max_qubits=cfg.max_qubits
    )
    classical = result.classical_model
    if args.test:
        X = read_samples_csv(args.test)
    else:
        X = np.vstack([data.A, data.B])
    if X.shape[1] != data.n_features:
        raise DimensionMismatch(
            f"test samples have {X.shape[1]} features, dataset has {data.n_features}"
        )
    ref = np.array([predict_classical(classical, row)[0] for row in X])

    exact_labels, exact_est = predict_quantum(
        X, result.state1, result.state2, cfg.prediction_config(exact=True)
    )
    sampled_labels, _ = predict_quantum(
        X, result.state1, result.state2, cfg.prediction_config(exact=False)
    )
    tie_mask = np.array([est.margin <= 1e-9 for est in exact_est])
    n_effective = int((~tie_mask).sum())
    agreement_exact = (
        float((exact_labels[~tie_mask] == ref[~tie_mask]).mean()) if n_effective else 1.0
    )
    agreement_sampled = float((sampled_labels == ref).mean())
    report = {
        "dataset": {
            "path": args.dataset,
            "fingerprint": fingerprint,
            "m1": int(data.A.shape[0]),
            "m2": int(data.B.shape[0]),
            "n_features": int(data.n_features),
        },
        "config": {
            "c1": cfg.c1,
            "c2": cfg.c2,
            "clock_qubits": cfg.clock_qubits,
            "evolution": "exact" if cfg.exact_evolution else "trotter",
            "shots": cfg.shots,
            "seed": cfg.seed,
        },
        **result.report(),
        "agreement": {
            "n_test": int(X.shape[0]),
            "ties_skipped": int(tie_mask.sum()),
            "exact_mode": agreement_exact,
            "sampled_mode": agreement_sampled,
        },
    }
    _emit(json.dumps(report, indent=2) + "\n", args.output)
    return EXIT_OK


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])


def cmd_error_report(args) -> int:
    from .classical import build_augmented
    from .hamiltonian import assemble_hamiltonians
    from .prep import postselect_input_state, prepare_density_k

    cfg = _run_config(args)
    data, _ = read_dataset_csv(args.dataset)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)

    aug = build_augmented(data, cfg.c1, cfg.c2)
    pair = assemble_hamiltonians(
        prepare_density_k(aug.E),
        prepare_density_k(aug.F),
        float(np.trace(aug.K1)),
        float(np.trace(aug.K2)),
        cfg.c1,
        cfg.c2,
        data.n_features + 1,
    )
    classical = train_classical(data, cfg.c1, cfg.c2)
    steps_list = [int(s) for s in args.steps_list.split(",")]
    clock_list = [int(c) for c in args.clock_list.split(",")]
    shots_list = [int(s) for s in args.shots_list.split(",")]

    summary = []
    trotter_rows = []
    for which in (1, 2):
        t0 = HHLConfig(clock_qubits=cfg.clock_qubits).resolve(
            pair.hamiltonian(which)
        ).t0
        rep = trotter_error_report(pair, which, t0, steps_list)
        for row in rep.rows:
            trotter_rows.append(
                [which, row.steps, row.dt, row.step_error, row.total_error]
            )
        slope = "none (commuting)" if rep.slope is None else f"{rep.slope:.3f}"
        summary.append(f"plane {which}: trotter step-error slope vs dt = {slope}")
    _write_csv(
        outdir / "trotter_error.csv",
        ["plane", "steps", "dt", "step_error", "total_error"],
        trotter_rows,
    )

    clock_rows = []
    preps = {
        1: postselect_input_state(aug.F, cfg.seed),
        2: postselect_input_state(aug.E, cfg.seed + 1),
    }
    for which in (1, 2):
        reference = classical_hyperplane_state(classical, which)
        for c in clock_list:
            conf = HHLConfig(
                clock_qubits=c,
                t0=cfg.t0,
                evolution="exact" if cfg.exact_evolution else "trotter",
                trotter_steps_per_unit=cfg.trotter_steps_per_unit,
            )
            res = solve_qls(
                pair.hamiltonian(which),
                preps[which].state,
                conf,
                cfg.seed,
                pair=pair,
                which=which,
            )
            clock_rows.append(
                [
                    which,
                    c,
                    fidelity(res.solution_state, reference),
                    res.success_probability,
                ]
            )
        final = clock_rows[-1]
        summary.append(
            f"plane {which}: fidelity {final[2]:.6f} at {final[1]} clock qubits"
        )
    _write_csv(
        outdir / "clock_fidelity.csv",
        ["plane", "clock_qubits", "fidelity_vs_classical", "success_probability"],
        clock_rows,
    )

    best = HHLConfig(clock_qubits=max(clock_list))
    states = {
        which: solve_qls(
            pair.hamiltonian(which), preps[which].state, best, cfg.seed,
            pair=pair, which=which,
        ).solution_state
        for which in (1, 2)
    }
    X = np.vstack([data.A, data.B])[: min(5, data.A.shape[0] + data.B.shape[0])]
    shot_rows = []
    rng = np.random.default_rng(cfg.seed)
    for shots in shots_list:
        errs = []
        for row in X:
            sample = prepare_sample_state(row)
            for which in (1, 2):
                for _ in range(args.repeats):
                    r = swap_test(states[which], sample, shots, int(rng.integers(2**63)))
                    errs.append(abs(r.estimate - r.overlap_sq_exact))
        shot_rows.append([shots, float(np.mean(errs)), float(np.max(errs))])
    _write_csv(
        outdir / "shot_error.csv",
        ["shots", "mean_abs_error", "max_abs_error"],
        shot_rows,
    )
    summary.append(
        "shot sweep: mean |estimate - exact| "
        + ", ".join(f"{r[0]}: {r[1]:.4f}" for r in shot_rows)
    )

    for which in (1, 2):
        kappa = condition_number(pair.cropped(which))
        summary.append(f"plane {which}: condition number {kappa:.3f}")
    _note(f"tables written to {outdir}")
    sys.stdout.write("\n".join(summary) + "\n")
    return EXIT_OK


def _add_run_flags(p: argparse.ArgumentParser, ridge: bool = True) -> None:
    p.add_argument("--c1", type=float, default=1.0, help="penalty on plane 1 slack")
    p.add_argument("--c2", type=float, default=1.0, help="penalty on plane 2 slack")
    if ridge:
        p.add_argument("--ridge", type=float, default=0.0, help="diagonal regularization")
    p.add_argument("--clock-qubits", type=int, default=8, dest="clock_qubits")
    p.add_argument("--t0", type=float, default=None, help="evolution time (default: pi/lambda_max)")
    group = p.add_mutually_exclusive_group()
    group.add_argument(
        "--exact-evolution",
        action="store_true",
        help="exact eigendecomposition evolution (default)",
    )
    group.add_argument(
        "--trotter-steps",
        type=int,
        default=None,
        dest="trotter_steps",
        help="product-formula evolution with this many steps per unit time",
    )
    p.add_argument("--shots", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-qubits", type=int, default=DEFAULT_QUBIT_CAP, dest="max_qubits")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtsvm",
        description="Least-squares twin SVM, classical and quantum-simulated",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("datagen", help="generate a two-line synthetic dataset CSV")
    p.add_argument("--output", required=True)
    p.add_argument("--m", type=int, default=32, help="total samples (balanced split)")
    p.add_argument("--m1", type=int, default=None)
    p.add_argument("--m2", type=int, default=None)
    p.add_argument("--n", type=int, default=2, help="feature count")
    p.add_argument("--sigma", type=float, default=0.0, help="noise width")
    p.add_argument("--line1", type=_parse_line, default=None, metavar="DIR@OFF")
    p.add_argument("--line2", type=_parse_line, default=None, metavar="DIR@OFF")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_datagen)

    p = sub.add_parser("train", help="train and save a model file")
    p.add_argument("dataset")
    p.add_argument("--mode", choices=("classical", "quantum"), default="classical")
    p.add_argument("--output", required=True)
    _add_run_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="label samples with a saved model")
    p.add_argument("model")
    p.add_argument("samples")
    p.add_argument("--classical", action="store_true", help="force the classical rule")
    p.add_argument("--exact", action="store_true", help="exact probabilities, no sampling")
    p.add_argument("--output", default=None)
    _add_run_flags(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("compare", help="train both ways and report agreement")
    p.add_argument("dataset")
    p.add_argument("--test", default=None, help="samples CSV to evaluate on")
    p.add_argument("--output", default=None)
    _add_run_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("error-report", help="sweep error knobs and write CSV tables")
    p.add_argument("dataset")
    p.add_argument("--output", required=True, help="directory for the CSV tables")
    p.add_argument("--steps-list", default="4,8,16,32,64", dest="steps_list")
    p.add_argument("--clock-list", default="4,6,8,10", dest="clock_list")
    p.add_argument("--shots-list", default="100,1000,10000", dest="shots_list")
    p.add_argument("--repeats", type=int, default=5)
    _add_run_flags(p)
    p.set_defaults(func=cmd_error_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CsvFormatError, InvalidSpec) as exc:
        _note(f"error: {exc}")
        return EXIT_PARSE
    except QubitCapExceeded as exc:
        _note(f"error: {exc}")
        return EXIT_QUBITS
    except DimensionMismatch as exc:
        _note(f"error: {exc}")
        return EXIT_DIMENSION
    except (QtsvmError, np.linalg.LinAlgError, ValueError) as exc:
        _note(f"error: {exc}")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
