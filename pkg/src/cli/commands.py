import logging
import math
from argparse import ArgumentParser, Namespace
from collections.abc import Callable
from dataclasses import dataclass, field

from pydantic import BaseModel

from asymptotics import (
    Band,
    LayerKind,
    band_check,
    layer_profile_check,
    rate_regression,
    suite_table,
)
from bifurcation import (
    fold_direction,
    fold_from_diagram,
    lambda_b_limit,
    pitchfork_exclusion,
    sweep,
)
from chaos import (
    certify_condition_A,
    construct_five_symbol,
    construct_itinerary,
    epsilon_lambda,
    kneading_order,
)
from core.constants import critical_constants, tail_constant
from core.equilibria import EquilibriumBranches
from core.errors import InsufficientSpreadError, LambdaBelowLambda0Error, WindowUnreachableError
from core.forcing import ForcingSpec
from core.problem import ProblemParams
from core.profiles import LimitKind, limit_profile
from integrator import Trajectory
from schema import (
    CertificateMethod,
    CommandInfo,
    ConstantsRecord,
    FiveSymbolSequence,
    LayerSuite,
    RunConfig,
    SymbolSequence,
)
from shooting import find_periodic_all, find_up, find_upwind, g_curve
from storage import PlotKind, Table, emit_plot_data

logger = logging.getLogger(__name__)

DEFAULT_COMMAND = "profile"
LAYER_SUITE = "0.04,0.03,0.02,0.015,0.01"


@dataclass
class Outcome:
    """What a command produced: the primary record plus attachments."""

    record: BaseModel
    table: Table | None = None
    tables: dict[str, Table] = field(default_factory=dict)
    records: dict[str, BaseModel] = field(default_factory=dict)
    trajectories: dict[str, Trajectory] = field(default_factory=dict)
    passed: bool | None = None


Handler = Callable[[Namespace, RunConfig], Outcome]


@dataclass
class Command:
    description: str
    handler: Handler
    epsilon: float = 1.0
    lam: float = 2.0
    configure: Callable[[ArgumentParser], None] | None = None
    requirement: str | None = None


def floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def constants_record(params: ProblemParams) -> ConstantsRecord:
    constants = critical_constants(params.lam, params.forcing)
    above = params.lam > constants.lambda0
    eps_lambda = None
    if params.forcing == ForcingSpec.cosine():
        try:
            eps_lambda = epsilon_lambda(params.lam)
        except LambdaBelowLambda0Error:
            logger.debug(f"no ε_λ below λ₀ (λ={params.lam})")
    return ConstantsRecord(
        lam=params.lam,
        lambda0=constants.lambda0,
        Lambda=constants.Lambda,
        K=constants.K,
        M1=tail_constant(params.lam, params.forcing) if above else None,
        b=params.barrier,
        epsilon_lambda=eps_lambda,
    )


def _unique(names: list[str]) -> list[str]:
    seen: dict[str, int] = {}
    out = []
    for name in names:
        n = seen.get(name, 0)
        seen[name] = n + 1
        out.append(name if n == 0 else f"{name}_{n}")
    return out


def equilibria(args: Namespace, config: RunConfig) -> Outcome:
    params = config.params
    branches = EquilibriumBranches(params.lam, params.forcing)
    return Outcome(
        record=constants_record(params), table=emit_plot_data(branches, PlotKind.EQUILIBRIA)
    )


def _configure_condition_a(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--method",
        choices=[m.value for m in CertificateMethod],
        default=CertificateMethod.DIRECT.value,
    )
    parser.add_argument("--alpha-bar", type=float, default=None, help="ᾱ, defaults to −√λ")


def condition_a(args: Namespace, config: RunConfig) -> Outcome:
    certificate = certify_condition_A(
        config.params, CertificateMethod(args.method), args.alpha_bar
    )
    return Outcome(record=certificate, passed=certificate.holds)


def _configure_periodic(parser: ArgumentParser) -> None:
    parser.add_argument("--points", type=int, default=None, help="initial α-scan density")
    parser.add_argument("--g-curve", action="store_true", help="also write G on an α-grid")


def periodic(args: Namespace, config: RunConfig) -> Outcome:
    params = config.params
    found = find_periodic_all(params, points=args.points, workers=config.workers, seed=config.seed)
    names = _unique([str(r.classification) for r in found.results])
    outcome = Outcome(
        record=found.report(),
        table=emit_plot_data(found, PlotKind.SOLUTIONS),
        trajectories={n: r.solution for n, r in zip(names, found.results)},
    )
    if args.g_curve:
        curve = g_curve(params.truncated(), workers=config.workers)
        outcome.tables["g-curve"] = emit_plot_data(curve, PlotKind.G_CURVE)
    return outcome


def _configure_upwind(parser: ArgumentParser) -> None:
    parser.add_argument("--m", type=int, default=1, help="number of minima and maxima")


def upwind(args: Namespace, config: RunConfig) -> Outcome:
    found = find_upwind(config.params, args.m)
    return Outcome(
        record=found.record(),
        table=emit_plot_data(found, PlotKind.SOLUTIONS),
        trajectories={"upwind": found.solution},
    )


def _configure_chaos(parser: ArgumentParser) -> None:
    parser.add_argument("--sigma", default="1,3", help="spike itinerary, e.g. 1,3")
    parser.add_argument("--omega", default=None, help="five-symbol word, e.g. 4,3,1")
    parser.add_argument("--horizon", type=float, default=None)


def chaos(args: Namespace, config: RunConfig) -> Outcome:
    if args.omega:
        solved = construct_five_symbol(
            config.params, FiveSymbolSequence.parse(args.omega), args.horizon
        )
    else:
        solved = construct_itinerary(config.params, SymbolSequence.parse(args.sigma), args.horizon)
    return Outcome(
        record=solved.result,
        table=emit_plot_data(solved, PlotKind.SOLUTIONS),
        tables={"spikes": emit_plot_data(solved, PlotKind.SPIKES)},
        trajectories={"orbit": solved.orbit},
        passed=solved.result.verified,
    )


def _configure_kneading(parser: ArgumentParser) -> None:
    parser.add_argument("--sigma1", default="1")
    parser.add_argument("--sigma2", default="3")


def kneading(args: Namespace, config: RunConfig) -> Outcome:
    verdict = kneading_order(
        SymbolSequence.parse(args.sigma1),
        SymbolSequence.parse(args.sigma2),
        config.params,
        workers=config.workers,
    )
    return Outcome(record=verdict, passed=verdict.agrees)


def _configure_layers(parser: ArgumentParser) -> None:
    parser.add_argument("--epsilons", type=floats, default=floats(LAYER_SUITE))
    parser.add_argument("--mu", type=float, default=0.3)


def layers(args: Namespace, config: RunConfig) -> Outcome:
    """u_p against U̲ on [μ, π/2 − μ] and its interior up-layer at π/2, along an ε-suite."""
    bands, reports = [], []
    for eps in sorted(args.epsilons, reverse=True):
        params = config.params.evolve(epsilon=eps)
        up = find_up(params)
        bands.append(
            band_check(up.solution, Band.LOWER, (0.0, 0.5 * math.pi), args.mu, name="up")
        )
        try:
            reports.append(layer_profile_check(up.solution, LayerKind.INTERIOR_UP, params))
        except WindowUnreachableError as exc:
            logger.warning(f"ε={eps}: {exc}")
    rows = suite_table(bands)
    eps = [b.epsilon for b in bands]
    try:
        fit = rate_regression(eps, [b.e0 for b in bands])
        derivative_fit = rate_regression(eps, [b.e1 / b.epsilon for b in bands])
    except (InsufficientSpreadError, ValueError) as exc:
        logger.info(f"no rate fit: {exc}")
        fit = derivative_fit = None
    suite = LayerSuite(
        lam=config.params.lam,
        bands=bands,
        rows=rows,
        fit=fit,
        derivative_fit=derivative_fit,
        layers=reports,
    )
    table = Table.from_rows(
        ("epsilon", "e0", "e1", "ratio0", "ratio1", "slope"),
        [(r.epsilon, r.e0, r.e1, r.ratio0, r.ratio1, r.slope) for r in rows],
    )
    return Outcome(record=suite, table=table)


def _configure_bifurcate(parser: ArgumentParser) -> None:
    parser.add_argument("--lam-min", type=float, default=0.9)
    parser.add_argument("--lam-max", type=float, default=1.3)
    parser.add_argument("--step", type=float, default=0.02)
    parser.add_argument("--points", type=int, default=None)
    parser.add_argument("--pitchfork", action="store_true", help="v along u_p at --lambda")
    parser.add_argument("--fold", action="store_true", help="h′(π) at the detected fold")
    parser.add_argument("--limit", type=floats, default=None, help="ε-suite for λ_b(ε)")


def bifurcate(args: Namespace, config: RunConfig) -> Outcome:
    params = config.params
    kwargs = {"points": args.points, "workers": config.workers, "seed": config.seed}
    diagram = sweep(params, lam_range=(args.lam_min, args.lam_max), step=args.step, **kwargs)
    curve = g_curve(params.truncated(), workers=config.workers)
    outcome = Outcome(
        record=diagram,
        table=emit_plot_data(diagram, PlotKind.DIAGRAM),
        tables={"g-curve": emit_plot_data(curve, PlotKind.G_CURVE)},
    )
    checks = []
    if args.pitchfork:
        report = pitchfork_exclusion(params)
        outcome.records["pitchfork"] = report
        checks.append(report.excluded)
    if args.fold:
        fold = fold_from_diagram(params, diagram, **kwargs)
        direction = fold_direction(params.evolve(lam=fold.lam), fold.alpha)
        outcome.records["fold"] = direction
        checks.append(direction.chain_holds)
    if args.limit:
        table = lambda_b_limit(args.limit, params, **kwargs)
        outcome.records["limit"] = table
        checks.append(table.monotone and table.final_gap > 0)
    outcome.passed = all(checks) if checks else None
    return outcome


def _configure_profile(parser: ArgumentParser) -> None:
    parser.add_argument("--kind", choices=[k.value for k in LimitKind], default="homoclinic")
    parser.add_argument("--window", type=float, default=None, help="profile window T")


def profile(args: Namespace, config: RunConfig) -> Outcome:
    params = config.params
    record = constants_record(params)
    outcome = Outcome(record=record)
    if params.lam > record.lambda0:
        kappa = float(params.forcing.value(0.0))
        shape = limit_profile(LimitKind(args.kind), params.lam, args.window, kappa=kappa)
        outcome.tables["profile"] = Table.from_columns(
            {"tau": shape.tau, "V": shape.values, "dV": shape.slopes}
        )
    else:
        logger.info(f"no limit profiles at λ={params.lam} ≤ λ₀={record.lambda0:.6f}")
    return outcome


commands: dict[str, Command] = {
    "equilibria": Command(
        description="Equilibrium branches U̲ ≤ U₀ ≤ Ū over one period.", handler=equilibria
    ),
    "condition-a": Command(
        description="Certify Condition A by direct integration or the closed-form bound.",
        handler=condition_a,
        epsilon=0.25,
        configure=_configure_condition_a,
        requirement="hold",
    ),
    "periodic": Command(
        description="All 2π-periodic solutions at the given parameters.",
        handler=periodic,
        configure=_configure_periodic,
    ),
    "upwind": Command(
        description="Up-wind solution with m minima and maxima on [π/2, π].",
        handler=upwind,
        epsilon=0.05,
        lam=3.0,
        configure=_configure_upwind,
    ),
    "chaos": Command(
        description="Bounded solution following a spike itinerary or a five-symbol word.",
        handler=chaos,
        epsilon=0.25,
        configure=_configure_chaos,
        requirement="verified",
    ),
    "kneading": Command(
        description="Compare the order of two itineraries with the kneading rule.",
        handler=kneading,
        epsilon=0.25,
        configure=_configure_kneading,
        requirement="verified",
    ),
    "layers": Command(
        description="Band errors and interior layer of u_p along an ε-suite.",
        handler=layers,
        configure=_configure_layers,
    ),
    "bifurcate": Command(
        description="λ-sweep of the zeros of G and the first fold λ_b.",
        handler=bifurcate,
        lam=1.023,
        configure=_configure_bifurcate,
        requirement="hold",
    ),
    "profile": Command(
        description="Critical constants and a limit profile at λ.",
        handler=profile,
        configure=_configure_profile,
    ),
}


def get_command(key: str) -> Command:
    return commands[key]


def get_all_command_info() -> list[CommandInfo]:
    return [
        CommandInfo(key=key, description=command.description) for key, command in commands.items()
    ]
