from shooting.antisymmetric import find_up
from shooting.functional import G, G_with_slope, GCurve, g_curve, g_values, zeros_of_G
from shooting.layered import find_m_maxima, find_upwind
from shooting.periodic import PeriodicSolutions, comparison_check, find_periodic_all
from shooting.result import ShootResult

__all__ = [
    "G",
    "GCurve",
    "G_with_slope",
    "PeriodicSolutions",
    "ShootResult",
    "comparison_check",
    "find_m_maxima",
    "find_periodic_all",
    "find_up",
    "find_upwind",
    "g_curve",
    "g_values",
    "zeros_of_G",
]
