"""
Observables: populations, mean photon number, g2 and number variance
"""

from observables.statistics import (
    PhotonStatistics,
    ObservableRecord,
    VarianceCheck,
    populations,
    mean_photon_number,
    normal_ordered_moment,
    photon_number_variance,
    g2_from_moments,
    g2_zero_delay,
    record_from_state,
    classify_statistics,
    variance_consistency,
)
from observables.series import (
    ObservableSeries,
    series_from_records,
    count_oscillation_maxima,
    maxima_per_window,
)

__all__ = [
    "PhotonStatistics",
    "ObservableRecord",
    "VarianceCheck",
    "populations",
    "mean_photon_number",
    "normal_ordered_moment",
    "photon_number_variance",
    "g2_from_moments",
    "g2_zero_delay",
    "record_from_state",
    "classify_statistics",
    "variance_consistency",
    "ObservableSeries",
    "series_from_records",
    "count_oscillation_maxima",
    "maxima_per_window",
]
