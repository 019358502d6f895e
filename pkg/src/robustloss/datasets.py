"""Seeded synthetic data for the robust-regression experiments."""

from __future__ import annotations

import numpy as np

from .estimation import Dataset


def contaminated_line(
    n: int = 100,
    n_outliers: int = 20,
    slope: float = 2.0,
    intercept: float = 1.0,
    noise: float = 0.1,
    shift: float = 50.0,
    seed: int = 42,
) -> Dataset:
    """Points on ``y = slope*x + intercept`` with a block of gross outliers.

    Generator: ``numpy.random.default_rng(seed)`` (PCG64), drawn in this
    order: ``x ~ U[0, 10)`` (n values), gaussian noise with std ``noise``
    (n values), then ``n_outliers`` distinct indices via
    ``rng.choice(n, n_outliers, replace=False)``; those targets get ``+shift``.
    """
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 10.0, size=n)
    y = slope * x + intercept + rng.normal(0.0, noise, size=n)
    idx = rng.choice(n, size=n_outliers, replace=False)
    y[idx] += shift
    return Dataset(x[:, None], y)


def write_csv(dataset: Dataset, path, header=None) -> None:
    """Write features then target, comma-separated with a header row."""
    if header is None:
        header = [f"x{i}" for i in range(dataset.d)] + ["y"]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row, target in zip(dataset.features, dataset.targets):
            fh.write(",".join(repr(float(v)) for v in row) + f",{float(target)!r}\n")
