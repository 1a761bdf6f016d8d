"""
Failure modes of the toolkit.

Every error derives from ValueError so that parameter problems reported by
pydantic validation and numerical failures can be caught the same way.
"""


class DuffingError(ValueError):
    """Base class for all toolkit failures."""


class NoFiniteLambda0Error(DuffingError):
    def __init__(self) -> None:
        super().__init__("no finite λ₀: the forcing vanishes identically")


class LambdaBelowLambda0Error(DuffingError):
    def __init__(self, lam: float, lambda0: float) -> None:
        super().__init__(f"lambda below lambda0: λ={lam} < λ₀={lambda0}")


class NoHomoclinicError(DuffingError):
    def __init__(self, lam: float, kappa: float) -> None:
        super().__init__(
            f"no homoclinic: u³ − λu + κ has fewer than three real roots at λ={lam}, κ={kappa}"
        )


class NoSignChangeError(DuffingError):
    pass


class ProfileWindowError(DuffingError):
    def __init__(self, window: float, bound: float) -> None:
        super().__init__(
            f"window too large: profile leaves [−{bound}, {bound}] inside τ ∈ [−{window}, {window}]"
        )


class StepUnderflowError(DuffingError):
    def __init__(self, message: str, t: float, state: tuple[float, ...]) -> None:
        super().__init__(f"step underflow at t={t}: {message} (last state {state})")
        self.t = t
        self.state = state


class CollocationError(DuffingError):
    pass


class ScanTooCoarseError(DuffingError):
    def __init__(self, points: int) -> None:
        super().__init__(
            f"scan too coarse: adjacent brackets closer than 2 scan steps at {points} points"
        )


class BracketFailureError(DuffingError):
    pass


class NoBracketError(DuffingError):
    pass


class MTooLargeError(DuffingError):
    def __init__(self, m: int, epsilon: float, found: list[int]) -> None:
        super().__init__(
            f"m too large for this ε: no solution with {m} maxima at ε={epsilon} "
            f"(maxima counts seen: {found})"
        )


class BracketCollapseError(DuffingError):
    def __init__(self, reason: str, deepest_prefix: tuple[int, ...]) -> None:
        super().__init__(f"bracket collapse: {reason} (deepest verified prefix {deepest_prefix})")
        self.deepest_prefix = deepest_prefix


class PatternAmbiguityError(DuffingError):
    pass


class IncomparableError(DuffingError):
    pass


class SideViolationError(DuffingError):
    def __init__(self, t: float, value: float, level: float) -> None:
        super().__init__(f"side violation at t={t}: u={value} is on the wrong side of {level}")
        self.t = t


class InsufficientSpreadError(DuffingError):
    pass


class WindowUnreachableError(DuffingError):
    pass


class CountOscillationError(DuffingError):
    pass


class NotAFoldError(DuffingError):
    pass


class KindMismatchError(DuffingError):
    def __init__(self, kind: str, result_type: str) -> None:
        super().__init__(f"kind mismatch: {result_type} carries no '{kind}' plot data")


class TrajectoryFormatError(DuffingError):
    pass


class VerificationFailed(DuffingError):
    """A check ran to completion and did not hold."""
