from asymptotics.bands import Band, band_check
from asymptotics.layers import LayerKind, exponential_tail_check, layer_profile_check
from asymptotics.rates import rate_regression, ratio_trend, suite_table

__all__ = [
    "Band",
    "LayerKind",
    "band_check",
    "exponential_tail_check",
    "layer_profile_check",
    "rate_regression",
    "ratio_trend",
    "suite_table",
]
