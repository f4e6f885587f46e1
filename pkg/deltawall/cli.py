"""The deltawall command-line tool.

Every subcommand builds a Dataset and writes it as CSV or JSON; the
single-point subcommands (green, heat, bound, shell3d) print one line of
text instead unless --format is given.

Classes:
    RunConfig: The parsed command line.

Functions:
    build_parser: The argparse parser of every subcommand.
    parse_args: Parse argv into a RunConfig.
    run: Execute a RunConfig and return the exit status.
    main: Parse and run.

Exit statuses:
    0: Success.
    1: A numerical failure: a solver did not converge, a quadrature failed,
        or a verification check did not pass.
    2: A usage error or an argument outside the domain of the operation.
"""

from typing import (
    Callable,
    Dict,
    List,
    Optional,
    Sequence,
    TextIO,
    Tuple,
)
import argparse
import dataclasses
import logging
import math
import pathlib
import sys

import numpy as np

from . import figures, oracle
from .emit import Dataset, package_version, write_dataset
from .errors import (
    ConvergenceError,
    DeltaWallError,
    DomainError,
    PoleProximityError,
    QuadratureFailure,
)
from .kernels import (
    BoundaryCondition,
    DeltaConfig,
    KernelSample,
    free_green,
    green_continued,
    heat_kernel,
    perturbed_green,
)
from .resonances import scan_branches
from .settings import Settings
from .settings.output import FORMATS
from .shell3d import Extension, radial_ground_wavefunction, shell_ground_state
from .spectral import asymptotic_energy, bound_state_energy, energy_sweep, threshold_x0

__all__ = (
    "RunConfig",
    "build_parser",
    "main",
    "parse_args",
    "run",
)

SUBCOMMANDS = (
    "green",
    "heat",
    "bound",
    "sweep",
    "resonances",
    "figure",
    "shell3d",
    "verify",
)

SWEEP_COLUMNS = ("param", "energy", "exists")
RESONANCE_COLUMNS = ("branch", "z1", "z2", "re_k", "im_k", "e_r", "gamma", "residual")
VERIFY_COLUMNS = ("check", "value", "tolerance", "passed")

# Tolerances of the verify subcommand.
_EIGENVALUE_TOL = 1e-8
_KERNEL_TOL = 1e-6
_SEMIGROUP_TOL = 1e-8
_NORM_TOL = 1e-8
_CONTINUED_TOL = 1e-9
_SCAN_RESOLUTION = 400


@dataclasses.dataclass
class RunConfig:
    """A parsed command line.

    Attributes:
        subcommand: One of SUBCOMMANDS.
        bc: The wall at the origin.
        lam: The coupling λ.
        x0: The delta location; math.inf where the asymptote is defined.
        grid: (start, stop, count) of a sweep.
        n_max: Number of resonance poles.
        output: Output path; None writes to stdout.
        format: "csv" or "json"; None uses the configured default, or text
            for the single-point subcommands.
    """

    subcommand: str
    bc: Optional[BoundaryCondition] = None
    lam: Optional[float] = None
    x0: Optional[float] = None
    x: Optional[float] = None
    y: Optional[float] = None
    energy: Optional[float] = None
    time: Optional[float] = None
    fixed: Optional[str] = None
    value: Optional[float] = None
    grid: Optional[Tuple[float, float, int]] = None
    n_max: int = 5
    figure: Optional[str] = None
    count: Optional[int] = None
    alphas: Optional[Tuple[float, ...]] = None
    extension: Optional[Extension] = None
    r0: Optional[float] = None
    r: Optional[float] = None
    output: Optional[pathlib.Path] = None
    format: Optional[str] = None
    config: Optional[pathlib.Path] = None
    tol: Optional[float] = None
    workers: Optional[int] = None

    def __post_init__(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise DomainError(f"Unknown subcommand {self.subcommand!r}")
        if self.grid is not None and int(self.grid[2]) < 2:
            raise DomainError("a sweep grid needs at least 2 points")
        if self.x0 is not None and math.isinf(self.x0):
            if self.subcommand not in ("bound", "sweep"):
                raise DomainError(f'x0 = inf is not defined for "{self.subcommand}"')
        if self.n_max < 1:
            raise DomainError("n-max must be at least 1")

    def echo(self) -> Dict[str, object]:
        """The configuration as plain values, without file paths."""
        values = {}
        for field in dataclasses.fields(self):
            if field.name in ("output", "config"):
                continue
            value = getattr(self, field.name)
            if isinstance(value, (BoundaryCondition, Extension)):
                value = value.value
            if value is not None:
                values[field.name] = value
        return values


def build_parser() -> argparse.ArgumentParser:
    """Build the parser with one subparser per subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=pathlib.Path, help="YAML settings file")
    common.add_argument("--out", dest="output", type=pathlib.Path, help="output path")
    common.add_argument("--format", choices=FORMATS, help="dataset format")
    common.add_argument("--tol", type=float, help="solver tolerance override")
    common.add_argument("--workers", type=int, help="threads for grid evaluation")

    parser = argparse.ArgumentParser(
        prog="deltawall",
        description="Half-line Laplacian with a wall and an attractive delta.",
    )
    commands = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    commands.required = True

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        return commands.add_parser(name, parents=[common], help=help_text)

    def bc_option(sub: argparse.ArgumentParser) -> None:
        sub.add_argument(
            "--bc",
            type=BoundaryCondition.parse,
            required=True,
            help="dirichlet or neumann",
        )

    green = command("green", "evaluate a resolvent kernel")
    bc_option(green)
    green.add_argument("--x", type=float, required=True)
    green.add_argument("--y", type=float, required=True)
    green.add_argument("--energy", type=float, required=True)
    green.add_argument("--lambda", dest="lam", type=float, help="coupling of the delta")
    green.add_argument("--x0", type=float, help="location of the delta")

    heat = command("heat", "evaluate the heat kernel")
    bc_option(heat)
    heat.add_argument("--x", type=float, required=True)
    heat.add_argument("--y", type=float, required=True)
    heat.add_argument("--time", type=float, required=True)

    bound = command("bound", "solve for the bound state")
    bc_option(bound)
    bound.add_argument("--lambda", dest="lam", type=float, required=True)
    bound.add_argument("--x0", type=float, required=True, help='a value or "inf"')

    sweep = command("sweep", "bound-state energy along a grid")
    bc_option(sweep)
    sweep.add_argument("--fixed", choices=("lambda", "x0"), required=True)
    sweep.add_argument("--value", type=float, required=True, help="the fixed value")
    sweep.add_argument(
        "--grid",
        nargs=3,
        type=float,
        required=True,
        metavar=("START", "STOP", "COUNT"),
    )

    resonances = command("resonances", "enumerate resonance poles")
    bc_option(resonances)
    resonances.add_argument("--lambda", dest="lam", type=float, required=True)
    resonances.add_argument("--x0", type=float, required=True)
    resonances.add_argument("--n-max", dest="n_max", type=int, default=5)

    figure = command("figure", "emit the dataset of a figure")
    figure.add_argument("figure", help="figure name, such as 1L, 2 or 5")
    figure.add_argument("--count", type=int, help="points per swept axis")
    figure.add_argument(
        "--alpha",
        dest="alphas",
        type=float,
        action="append",
        help="pole-locus coupling",
    )
    figure.add_argument("--n-max", dest="n_max", type=int, default=5)

    shell = command("shell3d", "ground state of the delta-sphere interaction")
    shell.add_argument(
        "--extension", type=Extension.parse, required=True, help="inf0 or 00"
    )
    shell.add_argument("--lambda", dest="lam", type=float, required=True)
    shell.add_argument("--r0", type=float, required=True)
    shell.add_argument("--r", type=float, help="radius to evaluate the wavefunction at")

    verify = command("verify", "check the closed forms against the oracles")
    bc_option(verify)
    verify.add_argument("--lambda", dest="lam", type=float, required=True)
    verify.add_argument("--x0", type=float, required=True)
    verify.add_argument("--n-max", dest="n_max", type=int, default=3)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse argv into a RunConfig.

    Raises:
        SystemExit: argparse rejected the command line.
        DomainError: The arguments parsed but are inconsistent.
    """
    namespace = vars(build_parser().parse_args(argv))
    if namespace.get("grid") is not None:
        start, stop, count = namespace["grid"]
        if count != int(count):
            raise DomainError(f"grid count must be an integer, got {count!r}")
        namespace["grid"] = (start, stop, int(count))
    if namespace.get("alphas") is not None:
        namespace["alphas"] = tuple(namespace["alphas"])
    return RunConfig(**namespace)


def _require(config: RunConfig, *names: str) -> None:
    missing = [name for name in names if getattr(config, name) is None]
    if missing:
        raise DomainError(f"{config.subcommand} needs {', '.join(missing)}")


def _delta(config: RunConfig) -> DeltaConfig:
    _require(config, "lam", "x0")
    return DeltaConfig(config.lam, config.x0)


def _green(config: RunConfig, settings: Settings):
    if (config.lam is None) != (config.x0 is None):
        raise DomainError("the perturbed kernel needs both --lambda and --x0")
    if config.lam is None:
        value = free_green(config.bc, config.x, config.y, config.energy)
        sample = KernelSample("green", config.x, config.y, config.energy, value)
    else:
        value = perturbed_green(
            config.bc,
            _delta(config),
            config.x,
            config.y,
            config.energy,
            settings=settings.kernels,
        )
        sample = KernelSample("perturbed", config.x, config.y, config.energy, value)
    return _sample_dataset(sample), _sample_text(sample)


def _heat(config: RunConfig, settings: Settings):
    value = heat_kernel(config.bc, config.x, config.y, config.time)
    sample = KernelSample("heat", config.x, config.y, config.time, value)
    return _sample_dataset(sample), _sample_text(sample)


def _sample_dataset(sample: KernelSample) -> Dataset:
    dataset = Dataset(("kind", "x", "y", "parameter", "value"))
    dataset.append(sample.kind, sample.x, sample.y, sample.parameter, sample.value)
    return dataset


def _sample_text(sample: KernelSample) -> str:
    point = f"{sample.x!r}, {sample.y!r}; {sample.parameter!r}"
    return f"{sample.kind}({point}) = {sample.value!r}"


def _bound(config: RunConfig, settings: Settings):
    columns = ("lambda", "x0", "energy", "kappa", "exists", "asymptotic")
    dataset = Dataset(columns)
    if math.isinf(config.x0):
        energy = asymptotic_energy(config.lam)
        dataset.append(config.lam, config.x0, energy, math.sqrt(-energy), True, True)
        return dataset, f"E = {energy!r} (asymptote x0 = inf)"
    state = bound_state_energy(config.bc, _delta(config), settings=settings.roots)
    if state is None:
        dataset.append(config.lam, config.x0, None, None, False, False)
        threshold = threshold_x0(config.bc, config.lam)
        return dataset, f"no bound state (threshold: x0 = {threshold!r})"
    dataset.append(config.lam, config.x0, state.energy, state.kappa, True, False)
    return dataset, f"E = {state.energy!r}"


def _sweep(config: RunConfig, settings: Settings):
    start, stop, count = config.grid
    points = energy_sweep(
        config.bc,
        config.fixed,
        config.value,
        np.linspace(start, stop, count),
        settings=settings.roots,
        workers=settings.output.workers,
    )
    dataset = Dataset(SWEEP_COLUMNS)
    for point in points:
        dataset.append(point.parameter, point.energy, point.exists)
    return dataset, None


def _resonances(config: RunConfig, settings: Settings):
    report = scan_branches(
        config.bc,
        _delta(config),
        config.n_max,
        settings=settings.resonances,
        workers=settings.output.workers,
    )
    dataset = Dataset(RESONANCE_COLUMNS)
    for pole in report.poles:
        k = pole.k
        dataset.append(
            pole.branch,
            pole.z1,
            pole.z2,
            k.real,
            k.imag,
            pole.resonance_energy,
            pole.width,
            pole.residual,
        )
    if report.antibound is not None:
        logging.info("Antibound state at k = %r", report.antibound.k)
    if report.failures:
        branches = ", ".join(str(e.branch) for e in report.failures)
        raise _Partial(dataset, f"pole search failed on branches {branches}")
    return dataset, None


def _figure(config: RunConfig, settings: Settings):
    options = {
        "count": config.count or settings.output.grid,
        "n_max": config.n_max,
        "roots": settings.roots,
        "resonances": settings.resonances,
        "workers": settings.output.workers,
    }
    if config.alphas:
        options["alphas"] = config.alphas
    return figures.generate(config.figure, figures.FigureRequest(**options)), None


def _shell3d(config: RunConfig, settings: Settings):
    dataset = Dataset(("extension", "lambda", "r0", "energy", "r", "psi"))
    energy = shell_ground_state(
        config.extension, config.lam, config.r0, settings=settings.roots
    )
    row = (config.extension.value, config.lam, config.r0)
    if energy is None:
        dataset.append(*row, None, config.r, None)
        return dataset, f"no ground state (threshold: r0 = {1.0 / config.lam!r})"
    text = f"E = {energy!r}"
    psi = None
    if config.r is not None:
        psi = radial_ground_wavefunction(
            config.extension, config.lam, config.r0, config.r, settings=settings.roots
        )
        text += f", psi({config.r!r}) = {psi!r}"
    dataset.append(*row, energy, config.r, psi)
    return dataset, text


def verification_rows(
    bc: BoundaryCondition, cfg: DeltaConfig, n_max: int, settings: Settings
) -> List[Tuple[str, float, float, bool]]:
    """Run the oracle checks for one configuration.

    Returns: (check, value, tolerance, passed) rows.
    """
    rows = []

    def check(name: str, value: float, tolerance: float) -> None:
        rows.append((name, value, tolerance, bool(value <= tolerance)))

    state = bound_state_energy(bc, cfg, settings=settings.roots)
    shot = oracle.shooting_eigenvalue(bc, cfg, settings.shooting)
    if state is None or shot is None:
        agree = state is None and shot is None
        check("shooting_eigenvalue", 0.0 if agree else math.inf, _EIGENVALUE_TOL)
    else:
        check("shooting_eigenvalue", abs(state.energy - shot), _EIGENVALUE_TOL)
        norm = oracle.quadrature_norm(state, settings=settings.quadrature)
        check("normalization", abs(norm - 1.0), _NORM_TOL)

    # Both energies lie below -λ², the lowest possible eigenvalue.
    lam = cfg.lam
    e1, e2 = -(2.0 * lam * lam + 1.0), -(lam * lam + 1.0)
    x, y = cfg.x0 / 2.0, 1.5 * cfg.x0
    laplace = oracle.laplace_green(bc, x, y, e1, settings=settings.quadrature)
    check("laplace_green", abs(laplace - free_green(bc, x, y, e1)), _KERNEL_TOL)
    check(
        "resolvent_identity",
        oracle.resolvent_identity_check(
            bc,
            cfg,
            e1,
            e2,
            x,
            y,
            settings=settings.quadrature,
            kernel_settings=settings.kernels,
        ),
        _KERNEL_TOL,
    )
    check(
        "semigroup",
        oracle.semigroup_defect(bc, x, y, 0.5, 1.0, settings=settings.quadrature),
        _SEMIGROUP_TOL,
    )

    report = scan_branches(bc, cfg, n_max, settings=settings.resonances)
    candidates, spacing = [], 1.0
    accept_tol = settings.resonances.accept_tol
    for e in report.failures:
        rows.append((f"pole_branch_{e.branch}", e.residual, accept_tol, False))
    if report.poles:
        z1_high = max(pole.z1 for pole in report.poles) + math.pi
        z2_high = max(pole.z2 for pole in report.poles) + 1.0
        candidates = oracle.grid_pole_scan(
            bc, cfg.alpha, (0.0, z1_high), (0.0, z2_high), _SCAN_RESOLUTION
        )
        spacing = max(z1_high, z2_high) / _SCAN_RESOLUTION
    for pole in report.poles:
        check(
            f"continued_pole_branch_{pole.branch}",
            abs(green_continued(bc, cfg, pole.k) - 1.0),
            _CONTINUED_TOL,
        )
        distance = min(
            (max(abs(pole.z1 - a), abs(pole.z2 - b)) for a, b in candidates),
            default=math.inf,
        )
        check(f"grid_scan_branch_{pole.branch}", distance / spacing, 2.0)
    return rows


def _verify(config: RunConfig, settings: Settings):
    cfg = _delta(config)
    if cfg.x0 <= 0:
        raise DomainError("verify needs x0 > 0")
    dataset = Dataset(VERIFY_COLUMNS)
    for row in verification_rows(config.bc, cfg, config.n_max, settings):
        dataset.append(*row)
    failed = [row[0] for row in dataset.rows if not row[3]]
    if failed:
        raise _Partial(dataset, f"verification failed: {', '.join(failed)}")
    return dataset, None


class _Partial(DeltaWallError):
    """A dataset was built but part of the computation failed."""

    def __init__(self, dataset: Dataset, message: str) -> None:
        self.dataset = dataset
        super().__init__(message)


_HANDLERS: Dict[str, Callable[[RunConfig, Settings], Tuple[Dataset, Optional[str]]]] = {
    "green": _green,
    "heat": _heat,
    "bound": _bound,
    "sweep": _sweep,
    "resonances": _resonances,
    "figure": _figure,
    "shell3d": _shell3d,
    "verify": _verify,
}


def _write(
    config: RunConfig,
    settings: Settings,
    dataset: Dataset,
    text: Optional[str],
    stream: TextIO,
) -> None:
    dataset.metadata.setdefault("version", package_version())
    dataset.metadata.setdefault("config", config.echo())

    def emit(out: TextIO) -> None:
        if text is not None and config.format is None:
            out.write(text + "\n")
        else:
            write_dataset(dataset, out, config.format or settings.output.format)

    if config.output is None:
        emit(stream)
    else:
        with open(config.output, "w", newline="") as out:
            emit(out)
        logging.info("Wrote %s", config.output)


def run(config: RunConfig, stream: Optional[TextIO] = None) -> int:
    """Execute one subcommand.

    Args:
        config: The parsed command line.
        stream: Where datasets go when no output path is set; stdout by
            default.

    Returns: The exit status.
    """
    stream = stream or sys.stdout
    try:
        settings = Settings(config.config)
        settings.override(tol=config.tol, workers=config.workers)
        dataset, text = _HANDLERS[config.subcommand](config, settings)
    except _Partial as e:
        logging.error("%s", e)
        _write(config, settings, e.dataset, None, stream)
        return 1
    except DomainError as e:
        logging.error("%s", e)
        return 2
    except (ConvergenceError, QuadratureFailure, PoleProximityError) as e:
        logging.error("%s", e)
        return 1
    _write(config, settings, dataset, text, stream)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv and run it; argparse usage errors return 2."""
    try:
        config = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    except DomainError as e:
        logging.error("%s", e)
        return 2
    return run(config)
