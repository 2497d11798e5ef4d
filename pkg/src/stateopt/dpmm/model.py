"""Component families, sampler configuration and cluster sufficient statistics.

Each state dimension is modelled independently within a cluster by one of
two exponential-family components:

* ``GaussianNIG`` -- Gaussian likelihood with a conjugate
  Normal-Inverse-Gamma base measure ``(lam0, nu0, a0, b0)``; the posterior
  predictive is a Student-t and is evaluated in closed form.
* ``VonMisesDim`` -- von Mises likelihood on a circle of a given period with
  fixed dispersion and a uniform prior on the mean direction; the posterior
  predictive reduces to a ratio of modified Bessel functions of the cluster's
  resultant vector.

Sufficient statistics per cluster and dimension are two running sums: for a
Gaussian dimension ``(sum x, sum x^2)``, for a von Mises dimension
``(sum cos, sum sin)`` of the angle-mapped coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..state import StateSpace

DEFAULT_VON_MISES_DISPERSION = 2.0


@dataclass(frozen=True)
class GaussianNIG:
    """Normal-Inverse-Gamma base measure for one linear dimension."""

    lam0: float
    nu0: float
    a0: float
    b0: float

    def __post_init__(self):
        if not (self.nu0 > 0 and self.a0 > 0 and self.b0 > 0):
            raise ValueError("nu0, a0 and b0 must all be positive")


@dataclass(frozen=True)
class VonMisesDim:
    """Fixed-dispersion von Mises component for one circular dimension."""

    dispersion: float
    period: float

    def __post_init__(self):
        if not self.dispersion > 0:
            raise ValueError("dispersion must be positive")
        if not self.period > 0:
            raise ValueError("period must be positive")


@dataclass(frozen=True)
class ComponentSpec:
    """Per-dimension component families for the mixture over states."""

    dims: tuple

    def __post_init__(self):
        for fam in self.dims:
            if not isinstance(fam, (GaussianNIG, VonMisesDim)):
                raise TypeError(f"unsupported component family: {fam!r}")

    @property
    def dim(self) -> int:
        return len(self.dims)

    @classmethod
    def from_data(
        cls,
        states: np.ndarray,
        space: StateSpace | None = None,
        dispersion: float = DEFAULT_VON_MISES_DISPERSION,
    ) -> "ComponentSpec":
        """Data-dependent defaults keeping predictives on the data's scale.

        Linear dimensions get ``GaussianNIG(mean_j, 1, 2, var_j)``; circular
        dimensions get a von Mises family with the given dispersion.
        """
        arr = np.atleast_2d(np.asarray(states, dtype=float))
        if space is None:
            space = StateSpace.linear(arr.shape[1])
        if space.dim != arr.shape[1]:
            raise ValueError("state dimension does not match the space")
        dims = []
        for j, period in enumerate(space.periods):
            if period is not None:
                dims.append(VonMisesDim(dispersion=dispersion, period=period))
            else:
                col = arr[:, j]
                mean = float(col.mean())
                var = float(col.var())
                var = max(var, 1e-12 * (1.0 + mean * mean))
                dims.append(GaussianNIG(lam0=mean, nu0=1.0, a0=2.0, b0=var))
        return cls(dims=tuple(dims))


@dataclass(frozen=True)
class DpmmConfig:
    """Concentration, component families and chain schedule for the sampler."""

    alpha: float = 1.0
    components: ComponentSpec | None = None
    burn_in: int = 200
    thin: int = 5
    num_samples: int = 60

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.num_samples < 1:
            raise ValueError("num_samples must be at least 1")
        if self.thin < 1:
            raise ValueError("thin must be at least 1")
        if self.burn_in < 0:
            raise ValueError("burn_in must be nonnegative")

    def with_components(self, components: ComponentSpec) -> "DpmmConfig":
        return replace(self, components=components)

    @classmethod
    def newsvendor_profile(cls, **kwargs) -> "DpmmConfig":
        """Short chain suited to a few hundred observations."""
        return cls(burn_in=200, thin=5, num_samples=60, **kwargs)

    @classmethod
    def wind_profile(cls, **kwargs) -> "DpmmConfig":
        """Long chain for year-scale hourly training sets."""
        return cls(burn_in=1000, thin=10, num_samples=100, **kwargs)


@dataclass
class ClusterStats:
    """Running sufficient statistics of one cluster's member states.

    ``sum_a[j]``/``sum_b[j]`` hold ``(sum x, sum x^2)`` for Gaussian
    dimensions and ``(sum cos theta, sum sin theta)`` for von Mises
    dimensions, where ``theta = 2*pi*x/period``.
    """

    components: ComponentSpec
    count: int = 0
    sum_a: np.ndarray = field(default=None)
    sum_b: np.ndarray = field(default=None)

    def __post_init__(self):
        d = self.components.dim
        if self.sum_a is None:
            self.sum_a = np.zeros(d)
        if self.sum_b is None:
            self.sum_b = np.zeros(d)

    @classmethod
    def from_members(
        cls, states: np.ndarray, components: ComponentSpec
    ) -> "ClusterStats":
        stats = cls(components=components)
        for x in np.atleast_2d(np.asarray(states, dtype=float)):
            stats.add(x)
        return stats

    def _features(self, x: np.ndarray) -> tuple:
        x = np.asarray(x, dtype=float).reshape(-1)
        a = np.empty(self.components.dim)
        b = np.empty(self.components.dim)
        for j, fam in enumerate(self.components.dims):
            if isinstance(fam, VonMisesDim):
                theta = 2.0 * np.pi * x[j] / fam.period
                a[j] = np.cos(theta)
                b[j] = np.sin(theta)
            else:
                a[j] = x[j]
                b[j] = x[j] * x[j]
        return a, b

    def add(self, x: np.ndarray) -> None:
        a, b = self._features(x)
        self.count += 1
        self.sum_a += a
        self.sum_b += b

    def remove(self, x: np.ndarray) -> None:
        if self.count < 1:
            raise ValueError("cannot remove from an empty cluster")
        a, b = self._features(x)
        self.count -= 1
        self.sum_a -= a
        self.sum_b -= b
