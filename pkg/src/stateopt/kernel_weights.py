"""Nadaraya-Watson observation weights with rule-of-thumb bandwidths.

Weights on past observations are proportional to a product of per-dimension
Gaussian kernels evaluated at the (possibly wrapped) distance between the
query state and each observed state, normalized to sum to one.  Bandwidths
come from the classical normal-reference rule

    h_j = 1.06 * sigma_j * n ** (-1 / (4 + d)),

with ``sigma_j = min(sample sd, IQR / 1.349)`` per dimension, recomputed
whenever the number of observations grows.
"""

from __future__ import annotations

import numpy as np

from .state import StateSpace

# Spread floor for degenerate (constant) dimensions: keeps the kernel
# well-defined and yields uniform weights instead of a 0/0.
_SIGMA_FLOOR_SCALE = 1e-6


def rule_of_thumb_bandwidth(
    states: np.ndarray, space: StateSpace | None = None
) -> np.ndarray:
    """Per-dimension Gaussian kernel bandwidths (standard deviations).

    Parameters
    ----------
    states : (n, d) array
        Observed states; ``n >= 2`` is required.
    space : StateSpace, optional
        Only used for validation; the spread statistics are computed on the
        raw coordinates for circular dimensions as well.

    Returns
    -------
    (d,) array of positive bandwidths.
    """
    arr = np.atleast_2d(np.asarray(states, dtype=float))
    if space is not None:
        arr = space.validate(arr)
    n, d = arr.shape
    if n < 2:
        raise ValueError("insufficient data: need at least 2 states for a bandwidth")

    sd = arr.std(axis=0, ddof=1)
    q75, q25 = np.percentile(arr, [75.0, 25.0], axis=0)
    sigma = np.minimum(sd, (q75 - q25) / 1.349)

    h = 1.06 * sigma * n ** (-1.0 / (4.0 + d))
    degenerate = sigma <= 0.0
    if np.any(degenerate):
        means = np.abs(arr.mean(axis=0))
        h = np.where(degenerate, _SIGMA_FLOOR_SCALE * (1.0 + means), h)
    return h


def nadaraya_watson_weights(
    query: np.ndarray,
    states: np.ndarray,
    bandwidths: np.ndarray,
    space: StateSpace | None = None,
) -> np.ndarray:
    """Normalized product-Gaussian kernel weights of ``query`` against ``states``.

    The kernel is evaluated in log space and the maximum is subtracted
    before exponentiation, so far-away queries still produce a valid
    weight vector instead of underflowing to 0/0.
    """
    states = np.atleast_2d(np.asarray(states, dtype=float))
    n, d = states.shape
    if n < 1:
        raise ValueError("need at least one state")
    h = np.asarray(bandwidths, dtype=float).reshape(-1)
    if h.shape[0] != d:
        raise ValueError(f"expected {d} bandwidths, got {h.shape[0]}")
    if np.any(h <= 0):
        raise ValueError("bandwidths must be positive")
    if space is None:
        space = StateSpace.linear(d)

    delta = space.difference(query, states)
    log_k = -0.5 * np.sum((delta / h[None, :]) ** 2, axis=1)
    log_k -= log_k.max()
    w = np.exp(log_k)
    return w / w.sum()
