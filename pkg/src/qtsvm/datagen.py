"""Synthetic crossplanes datasets: two noisy lines, one per class.

Each class is sampled along its own line: point = offset + t * direction
with t uniform on [-1, 1], plus isotropic Gaussian noise of width sigma.
The default geometry puts the positive class on the first-axis line
through the origin and the negative class on its parallel shifted one
unit along the second axis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import Dataset
from .exceptions import InvalidSpec


@dataclass(frozen=True)
class Line:
    """A parameterized line: offset + t * direction (direction normalized)."""

    direction: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float).ravel()
        o = np.asarray(self.offset, dtype=float).ravel()
        if d.shape != o.shape:
            raise InvalidSpec(
                f"direction and offset disagree on dimension: {d.shape} vs {o.shape}"
            )
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(o))):
            raise InvalidSpec("line parameters contain non-finite entries")
        norm = float(np.linalg.norm(d))
        if norm == 0.0:
            raise InvalidSpec("line direction must be nonzero")
        object.__setattr__(self, "direction", d / norm)
        object.__setattr__(self, "offset", o)


@dataclass(frozen=True)
class SynthSpec:
    """Shape of a two-line synthetic dataset."""

    n_features: int
    m1: int
    m2: int
    line1: Line
    line2: Line
    noise_sigma: float = 0.0

    def __post_init__(self):
        if self.n_features < 1:
            raise InvalidSpec(f"n_features must be >= 1, got {self.n_features}")
        if self.m1 < 1 or self.m2 < 1:
            raise InvalidSpec(f"both classes need samples, got m1={self.m1}, m2={self.m2}")
        for line in (self.line1, self.line2):
            if line.direction.shape[0] != self.n_features:
                raise InvalidSpec(
                    f"line dimension {line.direction.shape[0]} does not match "
                    f"n_features={self.n_features}"
                )
        if not np.isfinite(self.noise_sigma) or self.noise_sigma < 0:
            raise InvalidSpec(f"noise_sigma must be >= 0, got {self.noise_sigma}")


def default_spec(m: int, n_features: int = 2, noise_sigma: float = 0.0) -> SynthSpec:
    """Balanced spec (m1 = floor(m/2)) on the default parallel-lines geometry."""
    if m < 2:
        raise InvalidSpec(f"need at least 2 samples, got {m}")
    if n_features < 2:
        raise InvalidSpec("the default geometry needs at least 2 features")
    e0 = np.zeros(n_features)
    e0[0] = 1.0
    shift = np.zeros(n_features)
    shift[1] = 1.0
    return SynthSpec(
        n_features=n_features,
        m1=m // 2,
        m2=m - m // 2,
        line1=Line(e0, np.zeros(n_features)),
        line2=Line(e0, shift),
        noise_sigma=noise_sigma,
    )


def generate_crossplanes(spec: SynthSpec, seed: int) -> Dataset:
    """Sample a dataset from a SynthSpec; fully determined by the seed."""
    rng = np.random.default_rng(seed)
    out = []
    for line, m in ((spec.line1, spec.m1), (spec.line2, spec.m2)):
        t = rng.uniform(-1.0, 1.0, size=m)
        pts = line.offset[None, :] + t[:, None] * line.direction[None, :]
        if spec.noise_sigma > 0:
            pts = pts + spec.noise_sigma * rng.normal(size=pts.shape)
        out.append(pts)
    return Dataset(A=out[0], B=out[1])
