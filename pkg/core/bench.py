"""
Timing comparison of generator powers in U²(Z_n) and U³(Z_m) for groups of
approximately equal order.
"""
import csv
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from algorithm.number_theory import cyclic_unit_group_mask, euler_phi, totient_sieve
from algorithm.unit_groups import build_tower, op_pow
from analysis.anomaly_detection_tools import detect_outliers_zscore
from analysis.statistical_tools import exact_mean, exact_median
from core.elgamal_u2 import U2PublicKey, u2_find_generator_exponent, u2_generator_power
from core.errors import EmptyInput, NoPairFound, OutOfRange
from core.plot_manager import PlotManager
from core.settings import DEFAULT_BENCH_MAX_N, DEFAULT_BENCH_RUNS, DEFAULT_BENCH_SLACK
from workers.bench_worker import BenchRecord, BenchScheme, BenchWorker

logger = logging.getLogger(__name__)

CSV_HEADER = ("scheme", "iteration", "exponent", "elapsed_ns")
_INITIAL_WINDOW = 1024


@dataclass(frozen=True)
class BenchConfig:
    n_u2: int
    n_u3: int
    runs: int = DEFAULT_BENCH_RUNS
    seed: int = 0
    slack: float = DEFAULT_BENCH_SLACK


@dataclass(frozen=True)
class SchemeStats:
    count: int
    mean: Fraction
    median: Fraction
    minimum: int
    maximum: int
    std: float
    outliers: int


@dataclass(frozen=True)
class BenchSummary:
    stats: Dict[BenchScheme, SchemeStats]
    # mean(U3) / mean(U2); None when the U2 mean is zero
    ratio: Optional[Fraction]


def _candidates(limit: int, target: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    phi = totient_sieve(limit)
    cyclic = cyclic_unit_group_mask(limit)
    ks = np.arange(limit + 1)
    phi2 = phi[phi]
    phi3 = phi[phi2]

    two_levels = cyclic & cyclic[phi] & (ks >= 3)
    u2_mask = two_levels & (phi2 >= target)
    u3_mask = two_levels & cyclic[phi2] & (ks >= 5) & (phi3 >= target)
    u2_n = ks[u2_mask]
    u3_n = ks[u3_mask]
    return u2_n, phi2[u2_mask], u3_n, phi3[u3_mask]


def find_comparable_moduli(target_order: int, slack: float = DEFAULT_BENCH_SLACK,
                           max_n: int = DEFAULT_BENCH_MAX_N) -> Tuple[int, int]:
    """
    Finds the case-1 modulus n_u2 and the tower modulus n_u3 whose groups
    U²(Z_n_u2) and U³(Z_n_u3) both have order >= target_order and differ in
    order by at most ``slack``.

    Among all such pairs the one minimizing (max(n_u2, n_u3), n_u3, n_u2) is
    returned. The search window doubles from a small bound up to ``max_n``.

    Raises:
        NoPairFound: if no pair exists with both moduli <= max_n.
    """
    if target_order < 2:
        raise OutOfRange(f"target order must be >= 2, got {target_order}")
    if slack < 0:
        raise OutOfRange(f"slack must be non-negative, got {slack}")

    limit = min(_INITIAL_WINDOW, max_n)
    while True:
        u2_n, u2_order, u3_n, u3_order = _candidates(limit, target_order)
        best: Optional[Tuple[int, int, int]] = None
        if u2_n.size:
            for n3, order3 in zip(u3_n, u3_order):
                if best is not None and n3 > best[0]:
                    break
                close = np.abs(u2_order - order3) <= slack
                if not close.any():
                    continue
                n2 = int(u2_n[close].min())
                cost = (max(n2, int(n3)), int(n3), n2)
                if best is None or cost < best:
                    best = cost
        if best is not None:
            _, n3, n2 = best
            logger.info(f"Comparable moduli for order >= {target_order}: n_u2={n2} "
                        f"(order {euler_phi(euler_phi(n2))}), n_u3={n3} (order {build_tower(n3).phi3})")
            return n2, n3
        if limit >= max_n:
            raise NoPairFound(f"no comparable moduli with order >= {target_order} and slack {slack} "
                              f"below {max_n}")
        limit = min(limit * 2, max_n)


def run_benchmark(config: BenchConfig, on_record=None) -> List[BenchRecord]:
    """
    Times θ^i in U²(Z_n_u2) and g^i in U³(Z_n_u3) for ``config.runs`` seeded
    exponents, one record per scheme per iteration.

    Exponents come from random.Random(seed) and depend on nothing else, so
    reruns with the same seed time the same exponent sequence.
    """
    if config.runs < 0:
        raise OutOfRange(f"runs must be non-negative, got {config.runs}")
    exponent_rng = random.Random(config.seed)
    setup_rng = random.Random(config.seed + 1)

    theta1, s = u2_find_generator_exponent(config.n_u2, setup_rng)
    # only theta1 and s take part in generator powers
    u2_key = U2PublicKey(config.n_u2, theta1, s, s)
    tower = build_tower(config.n_u3)
    order2, order3 = u2_key.phi2, tower.phi3
    if abs(order2 - order3) > config.slack:
        raise OutOfRange(f"group orders {order2} and {order3} differ by more than {config.slack}")

    g = tower.generator
    exponents = [exponent_rng.randint(1, min(order2, order3)) for _ in range(config.runs)]
    worker = BenchWorker(
        [
            (BenchScheme.U2, lambda i: u2_generator_power(u2_key, i)),
            (BenchScheme.U3, lambda i: op_pow(tower, g, i)),
        ],
        exponents,
        on_record,
    )
    return worker.run()


def _scheme_stats(samples: Sequence[int]) -> SchemeStats:
    outlier_indices, _ = detect_outliers_zscore(np.array(samples, dtype=float))
    return SchemeStats(
        count=len(samples),
        mean=exact_mean(samples),
        median=exact_median(samples),
        minimum=min(samples),
        maximum=max(samples),
        std=float(np.std(samples)),
        outliers=int(outlier_indices.size),
    )


def summarize(records: Sequence[BenchRecord]) -> BenchSummary:
    """
    Per-scheme statistics over elapsed_ns and the U3/U2 ratio of means.

    Raises:
        EmptyInput: if either scheme has no records.
    """
    samples: Dict[BenchScheme, List[int]] = {scheme: [] for scheme in BenchScheme}
    for record in records:
        samples[record.scheme].append(record.elapsed_ns)
    for scheme, values in samples.items():
        if not values:
            raise EmptyInput(f"no {scheme.value} records to summarize")

    stats = {scheme: _scheme_stats(values) for scheme, values in samples.items()}
    for scheme, st in stats.items():
        if st.outliers:
            logger.warning(f"{st.outliers} {scheme.value} samples are outliers (|z| > 3)")
    u2_mean = stats[BenchScheme.U2].mean
    ratio = stats[BenchScheme.U3].mean / u2_mean if u2_mean else None
    return BenchSummary(stats, ratio)


def format_summary(summary: BenchSummary) -> List[str]:
    lines = []
    for scheme, st in summary.stats.items():
        lines.append(f"{scheme.value}: n={st.count} mean_ns={float(st.mean):.1f} "
                     f"median_ns={float(st.median):.1f} min_ns={st.minimum} max_ns={st.maximum} "
                     f"std_ns={st.std:.1f} outliers={st.outliers}")
    ratio = "undefined" if summary.ratio is None else f"{float(summary.ratio):.3f}"
    lines.append(f"ratio U3/U2 = {ratio}")
    return lines


def write_csv(records: Sequence[BenchRecord], fh: TextIO,
              summary: Optional[BenchSummary] = None) -> None:
    """Writes the header, one row per record, then the summary as '#' lines."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow((record.scheme.value, record.iteration, record.exponent, record.elapsed_ns))
    if summary is not None:
        for line in format_summary(summary):
            fh.write(f"# {line}\n")


def write_gnuplot_curves(records: Sequence[BenchRecord], prefix: str) -> List[str]:
    plots = PlotManager()
    plots.add_records(records)
    return plots.export_gnuplot(prefix)
