import logging
import numpy as np
from typing import Tuple
from scipy import stats

logger = logging.getLogger(__name__)

DEFAULT_ZSCORE_THRESHOLD = 3.0


def detect_outliers_zscore(data_array: np.ndarray,
                           threshold: float = DEFAULT_ZSCORE_THRESHOLD) -> Tuple[np.ndarray, np.ndarray]:
    """
    Detect outliers using Z-score method.

    Args:
        data_array: Input data array
        threshold: Z-score threshold for outlier detection

    Returns:
        Tuple of (outlier indices, outlier values)
    """
    data_array = np.asarray(data_array, dtype=float)
    # zscore is undefined for fewer than two samples or zero spread
    if data_array.size < 2 or np.ptp(data_array) == 0:
        return np.array([], dtype=int), np.array([])

    z_scores = np.abs(stats.zscore(data_array))
    outlier_indices = np.where(z_scores > threshold)[0]
    outlier_values = data_array[outlier_indices]
    if outlier_indices.size:
        logger.debug(f"{outlier_indices.size} samples beyond |z| > {threshold}")

    return outlier_indices, outlier_values
