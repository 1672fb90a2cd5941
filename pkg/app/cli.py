"""
Command line of the scan-order lab: ``gibbs-scan-lab <subcommand>``.

Lab errors print their message to stderr and exit with status 2; violated
inequalities make ``verify`` exit with status 1.
"""

import logging
from pathlib import Path
from typing import Annotated

import orjson
import typer
from pydantic import ValidationError

from app.chain import mixing_time
from app.choices import BridgeMode, ChainSpace, ExperimentId, ModelName, OutputFormat, VerifyTarget
from app.conductance.augmented import augment_systematic
from app.conductance.flow import chain_conductance
from app.config import DEFAULT_EPSILON, FIG3B_ITERATIONS, FIG3B_RECORD_EVERY, LOG_LEVEL, MAX_STEPS, WORKERS
from app.exceptions import LabError
from app.harness.csvio import write_csv
from app.harness.experiments import FIG3A_MODELS, run_experiment, sweep_perms
from app.harness.verification import VERIFICATION_HEADER, run_verifications
from app.scan.permutations import format_permutation, parse_permutation
from app.scan.schedule import ScanSchedule, lazy, random_schedule, random_scan_kernel, systematic_schedule
from app.schemas.experiment import ExperimentSpec, PermutationPolicy
from app.schemas.model import ModelInfo
from app.zoo.islands import bridge_efficiency, measure_bridge_efficiency
from app.zoo.registry import build_model
from app.zoo.sequence import sweep_success_probability

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("CLI")

app = typer.Typer(help="Exact mixing-time laboratory for Gibbs sampler scan orders.", no_args_is_help=True)
figure_app = typer.Typer(help="Reproduce the scan-order figures as CSV.", no_args_is_help=True)
verify_app = typer.Typer(help="Verify the conductance bounds exactly.", no_args_is_help=True)
app.add_typer(figure_app, name="figure")
app.add_typer(verify_app, name="verify")

ModelOption = Annotated[ModelName, typer.Option("--model", help="Model family.")]
SizeOption = Annotated[int, typer.Option("--n", help="Size parameter.", min=1)]
EpsilonOption = Annotated[float, typer.Option("--epsilon", help="Mixing threshold.")]
PermOption = Annotated[
    str | None,
    typer.Option("--perm", help="Comma-separated 1-based order, or a name such as best or worst."),
]
PriorOption = Annotated[float | None, typer.Option("--M", help="Prior strength, 100 * n by default.")]
BridgeOption = Annotated[float | None, typer.Option("--bridge-mass", help="Bridge mass of two-islands models.")]
MaxStepsOption = Annotated[int, typer.Option("--max-steps", help="Mixing-time step cap.", min=0)]
OutOption = Annotated[Path | None, typer.Option("--out", help="Output file, stdout by default.")]
FormatOption = Annotated[OutputFormat, typer.Option("--format", help="Output format.")]
WorkersOption = Annotated[int, typer.Option("--workers", help="Worker processes.", min=1)]
SeedOption = Annotated[int, typer.Option("--seed", help="Sampling seed.", min=0)]
SampleOption = Annotated[int | None, typer.Option("--sample", help="Evaluate this many random permutations.", min=1)]
OverrideOption = Annotated[
    bool,
    typer.Option("--override-enumeration-limit", help="Enumerate every permutation above the limit."),
]


def _fail(error: LabError) -> None:
    typer.echo(error.msg, err=True)
    raise typer.Exit(code=2)


def _emit(header, rows, out: Path | None) -> None:
    write_csv(header, rows, out)


def _emit_json(payload: bytes, out: Path | None) -> None:
    if out is None:
        typer.echo(payload.decode())
    else:
        out.write_bytes(payload + b"\n")


def _schedule(model, perm: str | None, is_lazy: bool) -> ScanSchedule:
    if perm is None or perm == "random":
        schedule = random_schedule(model)
    else:
        schedule = systematic_schedule(model, parse_permutation(perm, model.name, model.num_vars))
    return lazy(schedule) if is_lazy else schedule


def _run(**fields) -> dict:
    try:
        spec = ExperimentSpec(**fields)
    except ValidationError as error:
        typer.echo("; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in error.errors()), err=True)
        raise typer.Exit(code=2)
    try:
        return run_experiment(spec)
    except LabError as error:
        _fail(error)


def _policy(sample: int | None, seed: int, override: bool) -> PermutationPolicy:
    if sample is not None:
        return PermutationPolicy.sample(sample, seed)
    return PermutationPolicy(override_enumeration_limit=override)


@app.command("model-info")
def model_info(
    model: ModelOption,
    n: SizeOption,
    M: PriorOption = None,
    bridge_mass: BridgeOption = None,
    output_format: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
):
    """
    Prints the size, parameters, pi_min and holding probability of a model.
    """
    try:
        info = ModelInfo(**build_model(model.value, n, M, bridge_mass).describe())
    except LabError as error:
        _fail(error)

    if output_format is OutputFormat.JSON:
        _emit_json(orjson.dumps(info.model_dump(), option=orjson.OPT_INDENT_2), out)
    else:
        rows = [[key, value] for key, value in info.model_dump(exclude={"params"}).items()]
        rows.extend([key, value] for key, value in info.params.items())
        _emit(["key", "value"], rows, out)


@app.command("mixing-time")
def mixing_time_command(
    model: ModelOption,
    n: SizeOption,
    perm: PermOption = None,
    is_lazy: Annotated[bool, typer.Option("--lazy", help="Hold with probability 1/2 at every step.")] = False,
    epsilon: EpsilonOption = DEFAULT_EPSILON,
    M: PriorOption = None,
    bridge_mass: BridgeOption = None,
    max_steps: MaxStepsOption = MAX_STEPS,
    out: OutOption = None,
):
    """
    Worst-case mixing time of random scan (no --perm) or a systematic scan.
    """
    try:
        built = build_model(model.value, n, M, bridge_mass)
        schedule = _schedule(built, perm, is_lazy)
        result = mixing_time(schedule, schedule.pi, epsilon, max_steps)
    except LabError as error:
        _fail(error)

    header = ["model", "n", "scan", "space", "epsilon", "t_mix", "capped"]
    row = [model.value, n, schedule.describe(), schedule.space.value, epsilon, result.t_mix, result.capped]
    _emit(header, [row], out)


@app.command("conductance")
def conductance_command(
    model: ModelOption,
    n: SizeOption,
    perm: PermOption = None,
    is_lazy: Annotated[bool, typer.Option("--lazy", help="Use the lazy kernel.")] = False,
    M: PriorOption = None,
    bridge_mass: BridgeOption = None,
    out: OutOption = None,
):
    """
    Exact conductance of random scan on the states, or of the augmented
    systematic scan when --perm is given.
    """
    try:
        built = build_model(model.value, n, M, bridge_mass)
        if perm is None or perm == "random":
            space, kernel, pi, label = ChainSpace.STATES, random_scan_kernel(built), built.pi, "random"
        else:
            order = parse_permutation(perm, built.name, built.num_vars)
            augmented = augment_systematic(built, order)
            space, kernel, pi = ChainSpace.AUGMENTED, augmented.kernel, augmented.pi
            label = f"systematic({format_permutation(order)})"
        if is_lazy:
            kernel, label = lazy(kernel), f"lazy {label}"
        phi, states = chain_conductance(pi, kernel)
    except LabError as error:
        _fail(error)

    header = ["model", "n", "scan", "space", "phi", "set"]
    _emit(header, [[model.value, n, label, space.value, phi, ";".join(map(str, states))]], out)


@app.command("bridge-efficiency")
def bridge_efficiency_command(
    n: SizeOption,
    perm: Annotated[
        str,
        typer.Option("--perm", help="random, best, worst, alternating, blocked or a 1-based order."),
    ] = "random",
    mode: Annotated[BridgeMode, typer.Option("--mode", help="Bridge mass regime.")] = BridgeMode.NEGLIGIBLE,
    bridge_mass: Annotated[
        float | None,
        typer.Option("--bridge-mass", help="Measure on the full two-islands model with this bridge mass."),
    ] = None,
    out: OutOption = None,
):
    """
    Probability that a visit to the bridge crosses to the other island.
    """
    try:
        order = None
        if perm != "random":
            order = parse_permutation(perm, ModelName.TWO_ISLANDS.value, 2 * n)
        if bridge_mass is None:
            report = bridge_efficiency(n, order, mode)
        else:
            full = build_model(ModelName.TWO_ISLANDS.value, n, bridge_mass=bridge_mass)
            report = measure_bridge_efficiency(full, order)
    except LabError as error:
        _fail(error)

    mode_label = report.mode.value if report.mode else ""
    _emit(["scan", "mode", "method", "efficiency"], [[report.scan, mode_label, report.method, report.efficiency]], out)


@app.command("sweep-success")
def sweep_success_command(n: SizeOption, M: PriorOption = None, out: OutOption = None):
    """
    Probability that one identity-order sweep of seq-deps moves s_0 to s_n.
    """
    try:
        value = sweep_success_probability(n, M)
    except LabError as error:
        _fail(error)
    _emit(["n", "M", "probability"], [[n, build_model(ModelName.SEQ_DEPS.value, n, M).params["M"], value]], out)


@app.command("sweep-perms")
def sweep_perms_command(
    model: ModelOption,
    n: SizeOption,
    epsilon: EpsilonOption = DEFAULT_EPSILON,
    sample: SampleOption = None,
    seed: SeedOption = 0,
    override: OverrideOption = False,
    M: PriorOption = None,
    bridge_mass: BridgeOption = None,
    max_steps: MaxStepsOption = MAX_STEPS,
    workers: WorkersOption = WORKERS,
    out: OutOption = None,
):
    """
    Systematic-scan mixing time of every permutation, in rank order.
    """
    try:
        _, results = sweep_perms(
            model.value, n, epsilon, _policy(sample, seed, override), max_steps, workers, M, bridge_mass
        )
    except LabError as error:
        _fail(error)

    rows = [
        [rank, format_permutation(result.permutation), result.t_mix, result.capped]
        for rank, result in enumerate(results)
    ]
    _emit(["rank", "permutation", "t_mix", "capped"], rows, out)


@figure_app.command("3a")
def figure_3a(
    model: Annotated[
        list[ModelName] | None,
        typer.Option("--model", help="Repeat for several models; all three by default."),
    ] = None,
    n_min: Annotated[int, typer.Option("--n-min", min=1)] = 3,
    n_max: Annotated[int, typer.Option("--n-max", min=1)] = 10,
    epsilon: EpsilonOption = DEFAULT_EPSILON,
    M: PriorOption = None,
    bridge_mass: BridgeOption = None,
    max_steps: MaxStepsOption = MAX_STEPS,
    out: Annotated[
        Path | None,
        typer.Option("--out", help="Output file for one model, or a directory for several."),
    ] = None,
):
    """
    Mixing times n,r,b,w per model.
    """
    tables = _run(
        experiment=ExperimentId.FIG3A,
        models=[m.value for m in model or FIG3A_MODELS],
        n_range=list(range(n_min, n_max + 1)),
        epsilon=epsilon,
        max_steps=max_steps,
        M=M,
        bridge_mass=bridge_mass,
        output=out,
    )

    if out is not None:
        return
    for name, (header, rows) in tables.items():
        if len(tables) > 1:
            typer.echo(f"# {name}")
        _emit(header, rows, None)


@figure_app.command("3b")
def figure_3b(
    n: SizeOption = 10,
    bridge_mass: Annotated[float, typer.Option("--bridge-mass")] = 0.1,
    iterations: Annotated[int, typer.Option("--iterations", min=1)] = FIG3B_ITERATIONS,
    every: Annotated[int, typer.Option("--every", help="Record every k iterations.", min=1)] = FIG3B_RECORD_EVERY,
    out: OutOption = None,
):
    """
    Island-y mass t,r,b,w on the full two-islands model.
    """
    tables = _run(
        experiment=ExperimentId.FIG3B,
        models=[ModelName.TWO_ISLANDS_MODIFIED.value],
        n_range=[n],
        bridge_mass=bridge_mass,
        iterations=iterations,
        every=every,
        output=out,
    )
    if out is None:
        _emit(*tables[ModelName.TWO_ISLANDS_MODIFIED.value], None)


@figure_app.command("3c")
def figure_3c(
    model: ModelOption = ModelName.SEQ_DEPS,
    n: SizeOption = 7,
    epsilon: EpsilonOption = DEFAULT_EPSILON,
    sample: SampleOption = None,
    seed: SeedOption = 0,
    override: OverrideOption = False,
    M: PriorOption = None,
    bridge_mass: BridgeOption = None,
    max_steps: MaxStepsOption = MAX_STEPS,
    workers: WorkersOption = WORKERS,
    out: OutOption = None,
):
    """
    Sorted systematic-scan mixing times with a random-scan reference row.
    """
    tables = _run(
        experiment=ExperimentId.FIG3C,
        models=[model.value],
        n_range=[n],
        epsilon=epsilon,
        policy=_policy(sample, seed, override),
        max_steps=max_steps,
        workers=workers,
        M=M,
        bridge_mass=bridge_mass,
        output=out,
    )
    if out is None:
        _emit(*tables[model.value], None)


@figure_app.command("table1")
def figure_table1(
    epsilon: EpsilonOption = DEFAULT_EPSILON,
    max_steps: MaxStepsOption = MAX_STEPS,
    out: OutOption = None,
):
    """
    Log-log slopes of the exact mixing times against n.
    """
    tables = _run(
        experiment=ExperimentId.TABLE1,
        models=[m.value for m in FIG3A_MODELS],
        n_range=[1],
        epsilon=epsilon,
        max_steps=max_steps,
        output=out,
    )
    header, rows = tables[ExperimentId.TABLE1.value]
    if out is None:
        _emit(header, rows, None)
    if not all(row[-1] for row in rows):
        raise typer.Exit(code=1)


def _verify(target: VerifyTarget, epsilon: float, fuzz: int, seed: int, max_steps: int, output_format, out):
    try:
        report = run_verifications(target, epsilon=epsilon, max_steps=max_steps, fuzz=fuzz, fuzz_seed=seed)
    except LabError as error:
        _fail(error)

    if output_format is OutputFormat.JSON:
        payload = [{"check": check, **bound.model_dump()} for check, bound in report.reports]
        payload.extend(skip._asdict() for skip in report.skips)
        _emit_json(orjson.dumps(payload, option=orjson.OPT_INDENT_2), out)
    else:
        _emit(VERIFICATION_HEADER, report.rows(), out)

    for check, case, inequality in report.violations:
        typer.echo(f"violated: {check} {case} {inequality.name} slack={inequality.slack:.3e}", err=True)
    if not report.holds:
        raise typer.Exit(code=1)


def _verify_command(target: VerifyTarget, default_fuzz: int):
    def command(
        epsilon: EpsilonOption = DEFAULT_EPSILON,
        fuzz: Annotated[int, typer.Option("--fuzz", help="Number of random models.", min=0)] = default_fuzz,
        seed: Annotated[int, typer.Option("--seed", help="Seed of the random models.", min=0)] = 42,
        max_steps: MaxStepsOption = MAX_STEPS,
        output_format: FormatOption = OutputFormat.CSV,
        out: OutOption = None,
    ):
        _verify(target, epsilon, fuzz, seed, max_steps, output_format, out)

    command.__doc__ = f"Runs the {target.value} checks on every permutation of the default grid."
    return command


verify_app.command("lemma1")(_verify_command(VerifyTarget.LEMMA1, 0))
verify_app.command("theorem1")(_verify_command(VerifyTarget.THEOREM1, 0))
verify_app.command("theorem2")(_verify_command(VerifyTarget.THEOREM2, 0))
verify_app.command("all")(_verify_command(VerifyTarget.ALL, 50))


if __name__ == "__main__":
    app()
