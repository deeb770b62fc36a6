"""
Metriche disponibili per il packing.
"""

from enum import Enum

import numpy as np

from heisenberg.group import dist_arrays


class Metric(Enum):
    EUCLIDEAN = "euclidean"
    HEISENBERG = "heisenberg"

    def distances(self, points: np.ndarray, point: np.ndarray) -> np.ndarray:
        """Distanze (con broadcasting) tra `points` e `point`."""
        if self is Metric.EUCLIDEAN:
            return np.sqrt(np.sum((np.asarray(points) - np.asarray(point)) ** 2, axis=-1))
        return dist_arrays(points, point)
