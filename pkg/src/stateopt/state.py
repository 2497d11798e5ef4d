"""State-space descriptions: linear and circular dimensions.

States are plain ``(n, d)`` float arrays; a :class:`StateSpace` records,
per dimension, whether the coordinate lives on the real line or on a
circle of a given period (time of day, time of year).  All distance
computations that must respect wrap-around go through here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class StateSpace:
    """Per-dimension geometry of the observable state.

    ``periods[j]`` is ``None`` for a linear dimension and the (positive)
    period for a circular one.  Circular coordinates are expected in
    ``[0, period)``.
    """

    periods: tuple

    def __post_init__(self):
        for p in self.periods:
            if p is not None and not p > 0:
                raise ValueError(f"circular period must be positive, got {p}")

    @classmethod
    def linear(cls, dim: int) -> "StateSpace":
        return cls(periods=(None,) * dim)

    @property
    def dim(self) -> int:
        return len(self.periods)

    @property
    def circular_mask(self) -> np.ndarray:
        return np.array([p is not None for p in self.periods])

    def validate(self, states: np.ndarray) -> np.ndarray:
        """Coerce to a 2-D float array and check dimension and ranges."""
        arr = np.atleast_2d(np.asarray(states, dtype=float))
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise ValueError(
                f"expected states with {self.dim} dimensions, got shape {arr.shape}"
            )
        for j, p in enumerate(self.periods):
            if p is not None:
                col = arr[:, j]
                if np.any((col < 0) | (col >= p)):
                    raise ValueError(
                        f"circular coordinate {j} out of range [0, {p})"
                    )
        return arr

    def difference(self, query: np.ndarray, states: np.ndarray) -> np.ndarray:
        """Per-dimension signed differences ``query - states``.

        Circular dimensions use the wrapped shortest displacement, so the
        result lies in ``[-period/2, period/2]``.
        """
        query = np.asarray(query, dtype=float).reshape(-1)
        states = np.atleast_2d(np.asarray(states, dtype=float))
        if query.shape[0] != self.dim or states.shape[1] != self.dim:
            raise ValueError("dimension mismatch between query, states and space")
        delta = query[None, :] - states
        for j, p in enumerate(self.periods):
            if p is not None:
                delta[:, j] = wrapped_difference(delta[:, j], p)
        return delta


def wrapped_difference(delta: np.ndarray, period: float) -> np.ndarray:
    """Map raw circular differences to the shortest signed displacement."""
    half = period / 2.0
    return (np.asarray(delta, dtype=float) + half) % period - half
