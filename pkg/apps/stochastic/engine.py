"""
Monte Carlo Engine

Propagates parameter uncertainty to lifecycle carbon.

Sample i is a pure function of (seed, i): every sampled parameter j owns
a counter-based Philox stream per (chunk, redraw round), and every chunk
always draws CHUNK_SIZE values. The result is therefore identical for any
worker count, and a prefix of a larger run equals the smaller run.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from django.conf import settings

from apps.carbon import calculator
from apps.carbon.models import CarbonBreakdown
from apps.core.exceptions import DomainError, EstimateError

from .models import CarbonEstimate, stable_mean

logger = logging.getLogger(__name__)

SEED_MASK = (1 << 64) - 1
MAX_REDRAW_ROUNDS = 1000
REJECTION_WARNING_RATE = 0.01


def substream(seed, parameter_index, chunk_index, round_index=0):
    """Independent Philox generator for one parameter, chunk and redraw round."""
    sequence = np.random.SeedSequence(
        entropy=int(seed) & SEED_MASK,
        spawn_key=(parameter_index, chunk_index, round_index),
    )
    return np.random.Generator(np.random.Philox(sequence))


class MonteCarloRun:
    """One configured simulation; `run` returns a CarbonEstimate."""

    def __init__(self, pkg, inputs, design, tdp_w, usage, seed, chunk_size=None):
        self.pkg = pkg
        self.inputs = inputs
        self.seed = seed
        self.chunk_size = chunk_size or settings.CARBON['CHUNK_SIZE']
        self.distributions = inputs.distributions()
        self.design_kg = calculator.design_cfp(pkg.dies, design)
        self.packaging_kg = calculator.packaging_cfp(pkg)
        self.operational_kg = calculator.operational_cfp(tdp_w, usage)

    def _draw(self, chunk_index, round_index):
        return [
            dist.draw(substream(self.seed, j, chunk_index, round_index), self.chunk_size)
            for j, dist in enumerate(self.distributions)
        ]

    def _manufacturing(self, draws):
        d0, epa, gpa, fab_ci = draws
        size = self.chunk_size
        with np.errstate(all='ignore'):
            return calculator.package_manufacturing(
                self.pkg,
                d0,
                epa,
                gpa,
                np.full(size, self.inputs.materials_kg_per_cm2),
                fab_ci,
                np.full(size, self.inputs.clustering_alpha),
            )

    @staticmethod
    def _valid(draws, manufacturing):
        mask = np.isfinite(manufacturing)
        for values in draws:
            mask &= np.isfinite(values) & (values >= 0)
        return mask

    def simulate_chunk(self, chunk_index):
        """
        Manufacturing carbon and per-sample rejection counts for one chunk.

        Joint samples outside the domain are replaced in rounds; each
        round uses fresh streams, taking values at the rejected positions.
        """
        draws = self._draw(chunk_index, 0)
        manufacturing = np.broadcast_to(self._manufacturing(draws), (self.chunk_size,)).copy()
        rejected = np.zeros(self.chunk_size, dtype=np.int64)
        valid = self._valid(draws, manufacturing)
        round_index = 0
        while not valid.all():
            round_index += 1
            if round_index > MAX_REDRAW_ROUNDS:
                raise DomainError(
                    f"No valid parameter draw after {MAX_REDRAW_ROUNDS} redraw rounds"
                )
            invalid = ~valid
            rejected[invalid] += 1
            fresh = self._draw(chunk_index, round_index)
            for current, replacement in zip(draws, fresh):
                current[invalid] = replacement[invalid]
            manufacturing = np.broadcast_to(
                self._manufacturing(draws), (self.chunk_size,)
            ).copy()
            valid = self._valid(draws, manufacturing)
        return manufacturing, rejected

    def run(self, n, workers=1, retain_samples=False):
        if int(n) != n or n < 1:
            raise EstimateError(f"Sample count must be an integer >= 1, got {n}")
        n = int(n)
        chunk_count = math.ceil(n / self.chunk_size)
        logger.debug(
            f"Monte Carlo: n={n} seed={self.seed} chunks={chunk_count} workers={workers}"
        )
        if workers > 1 and chunk_count > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                chunks = list(pool.map(self.simulate_chunk, range(chunk_count)))
        else:
            chunks = [self.simulate_chunk(i) for i in range(chunk_count)]

        manufacturing = np.concatenate([chunk[0] for chunk in chunks])[:n]
        rejected = int(np.concatenate([chunk[1] for chunk in chunks])[:n].sum())

        # Same association order as CarbonBreakdown.compose.
        embodied = self.design_kg + manufacturing + self.packaging_kg
        totals = embodied + self.operational_kg

        warnings = []
        if rejected / n > REJECTION_WARNING_RATE:
            message = (
                f"{rejected} joint draws were outside the parameter domain "
                f"({rejected / n:.1%} of {n} samples)"
            )
            logger.warning(message)
            warnings.append(message)

        breakdown = CarbonBreakdown.compose(
            self.design_kg,
            stable_mean(manufacturing),
            self.packaging_kg,
            self.operational_kg,
        )
        return CarbonEstimate.from_samples(
            totals,
            breakdown,
            rejected_count=rejected,
            warnings=warnings,
            retain_samples=retain_samples,
        )


def run_monte_carlo(pkg, inputs, design, tdp_w, usage, n, seed, workers=1, retain_samples=False):
    """
    Sample every uncertain parameter `n` times and summarize total carbon.

    The result depends only on (inputs, n, seed); `workers` changes
    wall time, never values.
    """
    return MonteCarloRun(pkg, inputs, design, tdp_w, usage, seed).run(
        n, workers=workers, retain_samples=retain_samples
    )


def point_estimate(pkg, inputs, design, tdp_w, usage):
    """Deterministic breakdown with every distribution at its mean."""
    return calculator.total_cfp(pkg, inputs.mean_sample(), design, tdp_w, usage)


def overlap(a, b):
    """
    Overlapping coefficient of two estimates' retained samples.

    Both sample sets share Freedman-Diaconis bins over the pooled values
    (Sturges when the IQR is zero); the result is the sum of per-bin
    minimum relative frequencies.
    """
    if a.samples is None or b.samples is None:
        raise EstimateError("overlap needs estimates that retained their samples")
    pooled = np.concatenate([a.samples, b.samples])
    span = float(np.ptp(pooled))
    if span == 0:
        return 1.0
    q75, q25 = np.percentile(pooled, [75, 25])
    width = 2.0 * (q75 - q25) * pooled.size ** (-1.0 / 3.0)
    if width > 0:
        bins = math.ceil(span / width)
    else:
        bins = math.ceil(math.log2(pooled.size)) + 1
    edges = np.histogram_bin_edges(pooled, bins=max(bins, 1))
    counts_a = np.histogram(a.samples, edges)[0].astype(np.int64)
    counts_b = np.histogram(b.samples, edges)[0].astype(np.int64)
    n_a, n_b = a.samples.size, b.samples.size
    shared = int(np.minimum(counts_a * n_b, counts_b * n_a).sum())
    return min(1.0, shared / (n_a * n_b))
