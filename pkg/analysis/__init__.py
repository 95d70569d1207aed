from .statistical_tools import (
    exact_mean,
    exact_median
)

from .anomaly_detection_tools import (
    detect_outliers_zscore
)

__all__ = [
    # Statistical tools
    'exact_mean',
    'exact_median',

    # Anomaly detection tools
    'detect_outliers_zscore'
]
