"""Partitions of observation indices and the Chinese-restaurant prior.

A partition is stored as a label vector ``c_0..c_{n-1}``; canonical form
renumbers clusters 0..K-1 in order of each cluster's smallest member index,
which makes serialized samples reproducible and comparable across runs.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, TextIO

import numpy as np


class Partition:
    """A clustering of ``n`` observation indices."""

    __slots__ = ("labels",)

    def __init__(self, labels: Sequence[int]):
        arr = np.asarray(labels, dtype=np.int64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("labels must be a nonempty 1-D sequence")
        if arr.min() < 0:
            raise ValueError("labels must be nonnegative")
        self.labels = arr

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(np.arange(n, dtype=np.int64))

    @classmethod
    def single_cluster(cls, n: int) -> "Partition":
        return cls(np.zeros(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def num_clusters(self) -> int:
        return int(np.unique(self.labels).size)

    def clusters(self) -> list:
        """Member index arrays, one per cluster id in canonical order."""
        canon = self.canonicalize()
        return [
            np.flatnonzero(canon.labels == k) for k in range(canon.num_clusters)
        ]

    def sizes(self) -> np.ndarray:
        return np.bincount(self.canonicalize().labels)

    def canonicalize(self) -> "Partition":
        """Relabel clusters by order of first appearance (smallest member)."""
        _, first_pos, inverse = np.unique(
            self.labels, return_index=True, return_inverse=True
        )
        order = np.argsort(first_pos, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(order.size)
        return Partition(rank[inverse])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(
            self.canonicalize().labels, other.canonicalize().labels
        )

    def __hash__(self):
        return hash(self.canonicalize().labels.tobytes())

    def __repr__(self) -> str:
        return f"Partition({self.labels.tolist()})"

    def to_line(self) -> str:
        return ",".join(str(c) for c in self.canonicalize().labels)

    @classmethod
    def from_line(cls, line: str) -> "Partition":
        return cls([int(tok) for tok in line.strip().split(",")])


def eppf_log_prob(partition: Partition, alpha: float) -> float:
    """Log prior probability of a partition under the Dirichlet process.

    For a partition of ``n`` items into clusters of sizes ``m_1..m_K``:

        log pi = (K - 1) log(alpha) + sum_j log((m_j - 1)!)
                 - sum_{j=1}^{n-1} log(alpha + j)

    computed with ``lgamma`` so large clusters do not overflow.  Summed over
    all set partitions of ``n`` items this exponentiates to exactly 1.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    sizes = partition.sizes()
    n = partition.n
    k = sizes.size
    log_p = (k - 1) * math.log(alpha)
    log_p += sum(math.lgamma(int(m)) for m in sizes)
    log_p -= sum(math.log(alpha + j) for j in range(1, n))
    return log_p


def dump_partitions(partitions: Iterable[Partition], fp: TextIO) -> None:
    """Write samples one per line as comma-separated canonical labels."""
    for p in partitions:
        fp.write(p.to_line())
        fp.write("\n")


def load_partitions(fp: TextIO) -> list:
    return [Partition.from_line(line) for line in fp if line.strip()]
