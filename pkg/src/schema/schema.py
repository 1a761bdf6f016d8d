from enum import StrEnum

from pydantic import BaseModel, Field, field_validator

from core.forcing import ForcingSpec
from core.problem import ProblemParams
from core.settings import OutputFormat


class EventKind(StrEnum):
    CROSS_B = "cross-b"
    DERIVATIVE_ZERO = "derivative-zero"
    CROSS_LEVEL = "cross-level"
    CROSS_CURVE = "cross-curve"
    USER_DEFINED = "user-defined"
    GUARD = "guard"


class EventRecord(BaseModel):
    """One located event of an integration."""

    kind: EventKind = Field(description="Event family.", examples=["cross-b"])
    label: str = Field(description="Event label, e.g. the curve id.", examples=["w3", "b+"])
    t: float = Field(description="Event time in original units.")
    u: float = Field(description="u at the event.")
    du: float = Field(description="u′ at the event.")
    direction: int = Field(description="Sign of the crossing (−1, 0 or +1).", examples=[1])
    tangential: bool = Field(
        default=False,
        description="Set when the crossing is too close to tangency to be called transversal.",
    )


class Classification(StrEnum):
    U1 = "u1"
    U2 = "u2"
    U3_UP = "u3_up"
    U4 = "u4"
    U5 = "u5"
    M_MAXIMA = "m-maxima"
    UPWIND = "upwind"
    OTHER = "other"


class ExtremaLadder(BaseModel):
    """Local maxima and minima of a solution in (0, π]."""

    maxima_t: list[float] = Field(default=[], description="Times of the local maxima.")
    maxima_u: list[float] = Field(default=[], description="Values at the local maxima.")
    minima_t: list[float] = Field(default=[], description="Times of the local minima.")
    minima_u: list[float] = Field(default=[], description="Values at the local minima.")

    def is_decreasing(self) -> bool:
        """Successive maxima and successive minima strictly decrease."""
        return all(a > b for a, b in zip(self.maxima_u, self.maxima_u[1:])) and all(
            a > b for a, b in zip(self.minima_u, self.minima_u[1:])
        )


class SolutionRecord(BaseModel):
    """A periodic or layered solution found by shooting or collocation."""

    alpha: float = Field(description="u(0), or β = u′(π/2) for shots from π/2.", examples=[-1.2])
    residual: float = Field(description="Boundary functional at the root.")
    classification: Classification = Field(description="Solution class.", examples=["u1"])
    m: int | None = Field(default=None, description="Layer count for m-maxima and up-wind.")
    method: str = Field(default="ivp", description="ivp or collocation.", examples=["ivp"])
    discriminator: str | None = Field(
        default=None,
        description="How u₂/u₄ were told apart: w1-intersection or ordering.",
    )
    ladder: ExtremaLadder | None = Field(default=None, description="Extrema in (0, π].")
    antisymmetry_defect: float | None = Field(
        default=None, description="max |u(π/2 + t) + u(π/2 − t)|."
    )
    period_defect: float | None = Field(
        default=None, description="Defect of an independent re-integration over one period."
    )


class PeriodicReport(BaseModel):
    """All periodic solutions found at one parameter set."""

    params: ProblemParams
    solutions: list[SolutionRecord] = Field(description="Solutions ordered by α.")
    scan_points: int = Field(description="Final α-scan density.")
    pairing_defects: dict[str, float] = Field(
        default={},
        description="Reflection pairing defects, e.g. u5+u1 = max |u₅(t) + u₁(π − t)|.",
    )


class CertificateMethod(StrEnum):
    CLOSED_FORM = "closed-form"
    DIRECT = "direct"


class EpsilonLambda(BaseModel):
    """Closed-form bound ε_λ = π/(3T_λ) and its ingredients."""

    lam: float
    b: float = Field(description="b(λ) = √(λ + 1/(2λ)).")
    T_lambda: float = Field(description="Bound on the time to reach b from −√λ at ε = 1.")
    eps_lambda: float
    branch: str = Field(description="Formula used: below-4 or from-4.", examples=["below-4"])


class ConditionACertificate(BaseModel):
    """Outcome of a Condition A check."""

    lam: float
    epsilon: float
    method: CertificateMethod
    alpha_bar: float = Field(description="Starting value ᾱ of the certified solution.")
    b: float = Field(description="Barrier level crossed.")
    crossing_time: float | None = Field(
        default=None, description="Time of the upward crossing of b (direct path)."
    )
    bound: float | None = Field(default=None, description="ε_λ (closed-form path).")
    holds: bool


class SpikeRecord(BaseModel):
    index: int
    parity: str = Field(description="down for even k, up for odd k.", examples=["down"])
    s: float = Field(description="Left end of the support.")
    S: float = Field(description="Right end of the support.")


class SymbolSequence(BaseModel):
    """Finite itinerary σ₁ < σ₂ < … with gaps of at least two."""

    entries: tuple[int, ...] = Field(default=(), examples=[(1, 3)])

    @field_validator("entries")
    @classmethod
    def _admissible(cls, entries: tuple[int, ...]) -> tuple[int, ...]:
        if any(e < 1 for e in entries):
            raise ValueError(f"itinerary entries must be positive integers: {entries}")
        if any(b - a < 2 for a, b in zip(entries, entries[1:])):
            raise ValueError(f"itinerary entries must increase by at least 2: {entries}")
        return entries

    @classmethod
    def parse(cls, text: str) -> "SymbolSequence":
        text = text.strip()
        return cls(entries=tuple(int(x) for x in text.split(",")) if text else ())


class FiveSymbolSequence(BaseModel):
    """Word over {1, …, 5}; a 1 or 2 never touches a 4 or 5."""

    entries: tuple[int, ...] = Field(examples=[(4, 3, 1)])

    @field_validator("entries")
    @classmethod
    def _admissible(cls, entries: tuple[int, ...]) -> tuple[int, ...]:
        if any(e not in (1, 2, 3, 4, 5) for e in entries):
            raise ValueError(f"five-symbol entries must lie in 1..5: {entries}")
        low, high = {1, 2}, {4, 5}
        for a, b in zip(entries, entries[1:]):
            if (a in low and b in high) or (a in high and b in low):
                raise ValueError(f"a 3 must separate {a} and {b} in {entries}")
        return entries

    @classmethod
    def parse(cls, text: str) -> "FiveSymbolSequence":
        return cls(entries=tuple(int(x) for x in text.strip().split(",")))


class BracketStep(BaseModel):
    """One nested interval of the itinerary construction."""

    depth: int = Field(description="Length of the certified prefix.")
    chart: int = Field(description="Index of the chart the interval lives in.")
    lo: str = Field(description="Exact lower end of the α-interval (rational).")
    hi: str = Field(description="Exact upper end of the α-interval (rational).")
    width: float = Field(description="hi − lo as a float.")


class BracketResult(BaseModel):
    """Nested α-intervals certifying an itinerary, with the verification audit."""

    params: ProblemParams
    sigma: list[int] = Field(description="Spike itinerary being constructed.")
    omega: list[int] | None = Field(default=None, description="Five-symbol word, if any.")
    alpha_bar: float
    horizon: float
    steps: list[BracketStep]
    alpha: str = Field(description="Representative α (midpoint of the deepest interval).")
    alpha_float: float
    width: float
    crossings: list[EventRecord] = Field(description="Spike crossings of the representative.")
    crossed: list[int] = Field(description="Indices of the spikes crossed on [0, horizon].")
    verified: bool


class KneadingVerdict(BaseModel):
    sigma1: list[int]
    sigma2: list[int]
    prefix: int = Field(description="Length of the common prefix.")
    predicted: str = Field(description="Predicted sign of α(Σ₁) − α(Σ₂).", examples=[">"])
    observed: str
    agrees: bool


class BandReport(BaseModel):
    """Sup-norm distance of a solution to an equilibrium branch."""

    solution: str
    branch: str
    c: float
    d: float
    mu: float
    epsilon: float
    e0: float = Field(description="sup |u − U|.")
    e1: float = Field(description="sup ε|u′ − U′|.")
    M0: float = Field(description="e0/ε².")
    M0_prime: float = Field(description="e1/ε².")
    combined: float = Field(description="(M0 + M0′ + 1)ε².")


class RateFit(BaseModel):
    slope: float
    intercept: float
    r_value: float
    stderr: float
    points: int


class SuiteRow(BaseModel):
    """One row of an ε-suite table."""

    epsilon: float
    e0: float
    e1: float
    ratio0: float = Field(description="e0/ε².")
    ratio1: float = Field(description="e1/ε².")
    slope: float | None = Field(
        default=None, description="Fitted log–log slope of e0 over the suite."
    )


class LayerReport(BaseModel):
    """Comparison of a layer of a solution to its limit profile."""

    kind: str = Field(examples=["spike-0", "spike-pi", "interior-down", "interior-up"])
    epsilon: float
    center: float = Field(description="Layer centre in original time.")
    extremum_t: float | None = Field(default=None, description="Nearest extremum time.")
    offset: float | None = Field(default=None, description="center − extremum_t.")
    offset_bound: float | None = Field(default=None, description="3ε|ln ε|/K.")
    window: float = Field(description="Rescaled comparison window T.")
    profile_error: float = Field(description="sup |u(center + ετ) − V(τ)| on the window.")
    value_at_center: float


class TailReport(BaseModel):
    reference: str
    c: float
    d: float
    mu: float
    epsilon: float
    K: float
    M1: float
    left: float = Field(description="sup(|u − ref| + (ε/2K)|u′ − ref′|).")
    right: float = Field(description="M₁ e^{−Kμ/ε}.")
    holds: bool


class LayerSuite(BaseModel):
    """Band and layer checks of u_p along an ε-suite."""

    lam: float
    bands: list[BandReport]
    rows: list[SuiteRow]
    fit: RateFit | None = Field(default=None, description="log e0 against log ε, when fittable.")
    derivative_fit: RateFit | None = Field(
        default=None, description="log e1 against log ε, when fittable."
    )
    layers: list[LayerReport] = []


class ZeroRecord(BaseModel):
    alpha: float
    g_slope: float = Field(description="G′(α) by finite differences.")
    v_prime_pi: float = Field(description="v′(π) from the variational equation.")


class DiagramSlice(BaseModel):
    lam: float
    zeros: list[ZeroRecord]

    @property
    def count(self) -> int:
        return len(self.zeros)


class BifurcationDiagram(BaseModel):
    epsilon: float
    forcing: ForcingSpec
    slices: list[DiagramSlice]
    lambda_b: float | None = None
    lambda_b_bracket: tuple[float, float] | None = None
    transition: tuple[int, int] | None = Field(
        default=None, description="Zero counts on both sides of λ_b."
    )
    pairing_defect: float | None = Field(
        default=None, description="Largest defect of the α ↦ −u_α(π) pairing."
    )


class PitchforkReport(BaseModel):
    lam: float
    epsilon: float
    alpha_p: float
    v_min: float = Field(description="min v on [0, π] along u_p.")
    v_pi: float
    v_prime_pi: float
    fd_slope: float | None = Field(default=None, description="Finite-difference G′(α_p).")
    fd_relative_error: float | None = None
    excluded: bool = Field(description="v′(π) > 0.")
    isolated: bool | None = None


class FoldReport(BaseModel):
    lam: float
    epsilon: float
    alpha: float
    g: float
    g_slope: float
    u_max: float = Field(description="max u on [0, π].")
    v_pi: float
    h_prime_pi: float
    fd_h_prime_pi: float | None = None
    chain_holds: bool


class LambdaBRow(BaseModel):
    epsilon: float
    lambda_b: float
    gap: float = Field(description="λ₀ − λ_b.")


class LambdaBTable(BaseModel):
    lambda0: float
    rows: list[LambdaBRow]
    monotone: bool = Field(description="λ_b increases as ε decreases.")
    final_gap: float


class ConstantsRecord(BaseModel):
    """Critical constants and the barrier at one λ."""

    lam: float
    lambda0: float
    Lambda: float | None = None
    K: float | None = None
    M1: float | None = None
    b: float
    epsilon_lambda: EpsilonLambda | None = None


class CommandInfo(BaseModel):
    """Info about an available cli command."""

    key: str = Field(description="Command key.", examples=["periodic"])
    description: str = Field(
        description="Description of the command.",
        examples=["All 2π-periodic solutions at the given parameters."],
    )


class RunConfig(BaseModel):
    """Resolved configuration of one cli run."""

    command: str = Field(examples=["periodic"])
    params: ProblemParams
    output_dir: str
    output_format: OutputFormat
    seed: int
    workers: int
