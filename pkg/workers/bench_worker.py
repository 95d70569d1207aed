import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 10


class BenchScheme(Enum):
    U2 = "U2"
    U3 = "U3"


@dataclass(frozen=True)
class BenchRecord:
    """One timed generator-power evaluation."""
    scheme: BenchScheme
    iteration: int
    exponent: int
    elapsed_ns: int


class BenchWorker:
    """
    Single-threaded measurement loop.

    Each iteration evaluates every task once with the iteration's exponent
    and times only the call itself with the monotonic nanosecond clock.
    """

    def __init__(self, tasks: Sequence[Tuple[BenchScheme, Callable[[int], object]]],
                 exponents: Sequence[int],
                 on_record: Optional[Callable[[BenchRecord], None]] = None):
        self.tasks = list(tasks)
        self.exponents = list(exponents)
        self.on_record = on_record
        self._running = True

    def warm_up(self) -> None:
        for scheme, task in self.tasks:
            task(1)
            logger.debug(f"Warm-up done for {scheme.value}")

    def run(self) -> List[BenchRecord]:
        logger.info(f"BenchWorker started: {len(self.exponents)} iterations, "
                    f"schemes {[scheme.value for scheme, _ in self.tasks]}")
        records: List[BenchRecord] = []
        self.warm_up()

        for iteration, exponent in enumerate(self.exponents):
            if not self._running:
                logger.info(f"BenchWorker stopped early at iteration {iteration}")
                break
            for scheme, task in self.tasks:
                start = time.perf_counter_ns()
                task(exponent)
                elapsed = time.perf_counter_ns() - start
                record = BenchRecord(scheme, iteration, exponent, elapsed)
                records.append(record)
                if self.on_record:
                    self.on_record(record)
            if (iteration + 1) % PROGRESS_EVERY == 0:
                logger.info(f"Benchmark progress: {iteration + 1}/{len(self.exponents)}")

        logger.info(f"BenchWorker finished with {len(records)} records")
        return records

    def stop(self):
        self._running = False
        logger.info("BenchWorker stop requested")
