import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from workers.bench_worker import BenchRecord, BenchScheme

logger = logging.getLogger(__name__)


class PlotManager:
    """Collects benchmark samples per scheme and exports them as plot curves."""

    def __init__(self):
        self._curves: Dict[BenchScheme, List[Tuple[int, int]]] = {}

    def add_record(self, record: BenchRecord) -> None:
        self._curves.setdefault(record.scheme, []).append((record.iteration, record.elapsed_ns))

    def add_records(self, records: Sequence[BenchRecord]) -> None:
        for record in records:
            self.add_record(record)

    def schemes(self) -> List[BenchScheme]:
        return [scheme for scheme in BenchScheme if scheme in self._curves]

    def get_curve(self, scheme: BenchScheme) -> Tuple[np.ndarray, np.ndarray]:
        """(iterations, elapsed_ns) arrays for one scheme, ordered by iteration."""
        points = sorted(self._curves.get(scheme, []))
        if not points:
            return np.array([], dtype=np.int64), np.array([], dtype=np.int64)
        data = np.array(points, dtype=np.int64)
        return data[:, 0], data[:, 1]

    def export_gnuplot(self, prefix: str) -> List[str]:
        """
        Writes one two-column ``iteration elapsed_ns`` file per scheme.

        Args:
            prefix: Output path prefix; files are named ``<prefix>_<scheme>.dat``.

        Returns:
            List of written paths.
        """
        paths = []
        for scheme in self.schemes():
            iterations, elapsed = self.get_curve(scheme)
            path = f"{prefix}_{scheme.value.lower()}.dat"
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(f"# {scheme.value}: iteration elapsed_ns\n")
                for i, ns in zip(iterations, elapsed):
                    fh.write(f"{int(i)} {int(ns)}\n")
            paths.append(path)
            logger.info(f"Wrote {len(iterations)} {scheme.value} points to {path}")
        return paths
