"""
Distributions

Sampleable univariate laws for uncertain process parameters:
- PointMass: a fixed value
- Uniform: flat between two bounds
- Gaussian: normal law
- KernelDensity: gaussian-kernel KDE over a set of observations

Physically nonnegative quantities are truncated at zero: negative draws
are redrawn up to TRUNCATION_ATTEMPTS times, then clamped to 0.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy import stats

from apps.core.exceptions import DomainError

TRUNCATION_ATTEMPTS = 100
DEGENERATE_BANDWIDTH_FACTOR = 1e-6


def _finite(value, name):
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")


class Distribution(ABC):
    """Base class; subclasses are frozen dataclasses with a `truncate` flag."""

    kind = None

    @abstractmethod
    def _draw_raw(self, rng, size):
        """Untruncated draws as a float array."""

    @property
    @abstractmethod
    def mean(self):
        """Nominal (untruncated) mean."""

    @property
    @abstractmethod
    def location(self):
        pass

    @property
    @abstractmethod
    def scale(self):
        pass

    @abstractmethod
    def with_location_scale(self, location, scale):
        """Same family, moved to a new location and scale."""

    @abstractmethod
    def pdf(self, x):
        pass

    @abstractmethod
    def _params(self):
        pass

    def draw(self, rng, size):
        """Vector of `size` draws from the numpy Generator `rng`."""
        values = np.asarray(self._draw_raw(rng, size), dtype=float)
        if not self.truncate:
            return values
        for _ in range(TRUNCATION_ATTEMPTS):
            negative = values < 0
            count = int(negative.sum())
            if not count:
                return values
            values[negative] = self._draw_raw(rng, count)
        return np.maximum(values, 0.0)

    def sample(self, rng):
        """A single draw."""
        return float(self.draw(rng, 1)[0])

    def to_spec(self):
        spec = {'type': self.kind}
        spec.update(self._params())
        spec['truncate'] = self.truncate
        return spec

    @staticmethod
    def from_spec(spec):
        """Build a distribution from a validated spec dict."""
        kind = spec['type']
        truncate = spec.get('truncate', True)
        if kind == PointMass.kind:
            return PointMass(spec['value'], truncate=truncate)
        if kind == Uniform.kind:
            return Uniform(spec['lo'], spec['hi'], truncate=truncate)
        if kind == Gaussian.kind:
            return Gaussian(spec['mean'], spec['stddev'], truncate=truncate)
        if kind == KernelDensity.kind:
            bandwidth = spec.get('bandwidth')
            if bandwidth is None:
                return fit_kde(spec['observations'], truncate=truncate)
            return KernelDensity(tuple(spec['observations']), bandwidth, truncate=truncate)
        raise DomainError(f"Unknown distribution type '{kind}'")


@dataclass(frozen=True)
class PointMass(Distribution):
    value: float
    truncate: bool = True

    kind = 'point'

    def __post_init__(self):
        _finite(self.value, 'value')

    def _draw_raw(self, rng, size):
        return np.full(size, self.value, dtype=float)

    @property
    def mean(self):
        return self.value

    @property
    def location(self):
        return self.value

    @property
    def scale(self):
        return 0.0

    def with_location_scale(self, location, scale):
        return PointMass(location, truncate=self.truncate)

    def pdf(self, x):
        raise DomainError("A point mass has no density")

    def _params(self):
        return {'value': self.value}


@dataclass(frozen=True)
class Uniform(Distribution):
    lo: float
    hi: float
    truncate: bool = True

    kind = 'uniform'

    def __post_init__(self):
        _finite(self.lo, 'lo')
        _finite(self.hi, 'hi')
        if not self.lo < self.hi:
            raise DomainError(f"uniform requires lo < hi, got lo={self.lo}, hi={self.hi}")

    def _draw_raw(self, rng, size):
        return rng.uniform(self.lo, self.hi, size)

    @property
    def mean(self):
        return (self.lo + self.hi) / 2.0

    @property
    def location(self):
        return self.mean

    @property
    def scale(self):
        return (self.hi - self.lo) / 2.0

    def with_location_scale(self, location, scale):
        return Uniform(location - scale, location + scale, truncate=self.truncate)

    def pdf(self, x):
        return stats.uniform.pdf(x, loc=self.lo, scale=self.hi - self.lo)

    def _params(self):
        return {'lo': self.lo, 'hi': self.hi}


@dataclass(frozen=True)
class Gaussian(Distribution):
    mean_value: float
    stddev: float
    truncate: bool = True

    kind = 'gaussian'

    def __post_init__(self):
        _finite(self.mean_value, 'mean')
        _finite(self.stddev, 'stddev')
        if not self.stddev > 0:
            raise DomainError(f"gaussian requires stddev > 0, got {self.stddev}")

    def _draw_raw(self, rng, size):
        return rng.normal(self.mean_value, self.stddev, size)

    @property
    def mean(self):
        return self.mean_value

    @property
    def location(self):
        return self.mean_value

    @property
    def scale(self):
        return self.stddev

    def with_location_scale(self, location, scale):
        return Gaussian(location, scale, truncate=self.truncate)

    def pdf(self, x):
        return stats.norm.pdf(x, loc=self.mean_value, scale=self.stddev)

    def _params(self):
        return {'mean': self.mean_value, 'stddev': self.stddev}


@dataclass(frozen=True)
class KernelDensity(Distribution):
    """
    Gaussian-kernel density estimate. A draw picks one observation
    uniformly and adds gaussian noise of the bandwidth.
    """

    observations: tuple
    bandwidth: float
    truncate: bool = True

    kind = 'kde'

    def __post_init__(self):
        object.__setattr__(self, 'observations', tuple(float(x) for x in self.observations))
        if not self.observations:
            raise DomainError("kde requires at least one observation")
        for value in self.observations:
            _finite(value, 'observation')
        _finite(self.bandwidth, 'bandwidth')
        if not self.bandwidth > 0:
            raise DomainError(f"kde requires bandwidth > 0, got {self.bandwidth}")

    def _draw_raw(self, rng, size):
        observations = np.asarray(self.observations)
        picks = rng.integers(0, len(observations), size)
        return observations[picks] + rng.normal(0.0, self.bandwidth, size)

    @property
    def mean(self):
        return float(np.mean(self.observations))

    @property
    def location(self):
        return self.mean

    @property
    def scale(self):
        return self.bandwidth

    def with_location_scale(self, location, scale):
        current = self.location
        observations = np.asarray(self.observations)
        if current > 0 and location > 0:
            moved = observations * (location / current)
        else:
            moved = observations + (location - current)
        return KernelDensity(tuple(moved), scale, truncate=self.truncate)

    def pdf(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        observations = np.asarray(self.observations)
        kernels = stats.norm.pdf(x[:, None], loc=observations[None, :], scale=self.bandwidth)
        return kernels.mean(axis=1)

    def _params(self):
        return {'observations': list(self.observations), 'bandwidth': self.bandwidth}


def silverman_bandwidth(observations):
    """
    Silverman's rule: 0.9 * min(sigma, IQR / 1.34) * n^(-1/5).

    Quartiles use Weibull plotting positions. All-equal observations get
    max(|x|, 1) * 1e-6 so the fit stays a near point mass.
    """
    x = np.asarray(observations, dtype=float)
    if x.size < 2:
        raise DomainError(f"fit_kde needs at least 2 observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DomainError("fit_kde observations must be finite")
    if np.ptp(x) == 0:
        return max(abs(float(x[0])), 1.0) * DEGENERATE_BANDWIDTH_FACTOR
    sigma = float(np.std(x))
    q75, q25 = np.percentile(x, [75, 25], method='weibull')
    iqr = float(q75 - q25)
    spread = min(sigma, iqr / 1.34) if iqr > 0 else sigma
    return 0.9 * spread * x.size ** (-0.2)


def fit_kde(observations, truncate=True):
    """KDE over `observations` with a Silverman bandwidth."""
    bandwidth = silverman_bandwidth(observations)
    return KernelDensity(tuple(observations), bandwidth, truncate=truncate)
