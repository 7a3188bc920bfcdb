from __future__ import annotations
import math
import typing
import numpy as np
from enum import IntEnum, auto

__all__ = [
    'LossKind',
    'output_scale',
    'interval_loss',
    'interval_losses'
]

class LossKind(IntEnum):
    HOMOGENEOUS = auto() # angular width only
    EUCLIDEAN   = auto() # chord length in normalized output space
    CURVATURE   = auto() # bending of the boundary around the interval

    @classmethod
    def from_string(cls, value: str) -> LossKind:
        try:
            return cls[value.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown loss kind '{value}' (expected one of: homogeneous, euclidean, curvature)") from None

    @property
    def label(self) -> str:
        return self.name.capitalize()

def output_scale(points: np.ndarray) -> np.ndarray:
    """Per-axis extent of the points' bounding box; degenerate axes scale by 1."""

    points = np.asarray(points, dtype=float).reshape(-1, 2)
    extent = points.max(axis=0) - points.min(axis=0)

    return np.where(extent > 0, extent, 1.0)

def _triangle_area(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    return 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))

def interval_loss(kind: LossKind,
                  left: typing.Tuple[float, np.ndarray],
                  right: typing.Tuple[float, np.ndarray],
                  neighbors: typing.Tuple[np.ndarray, np.ndarray] = None,
                  scale: typing.Optional[np.ndarray] = None
) -> float:
    """Loss of the interval between samples `left` and `right`, each a `(theta, point)` pair.

    `neighbors` holds the points just before `left` and just after `right`; only
    the curvature loss uses them. `scale` normalizes the output axes (see
    `output_scale`).

    The curvature loss is the square root of the mean area of the two triangles
    spanned by the interval and each neighbour, so that it is a length like the
    Euclidean loss and straight runs score zero.
    """

    theta_l, p_l = left
    theta_r, p_r = right

    if kind == LossKind.HOMOGENEOUS:
        width = (theta_r - theta_l) % (2 * math.pi)

        return (width if width > 0 else 2 * math.pi) / (2 * math.pi)

    scale = np.ones(2) if scale is None else np.asarray(scale, dtype=float)
    p_l   = np.asarray(p_l, dtype=float) / scale
    p_r   = np.asarray(p_r, dtype=float) / scale

    if kind == LossKind.EUCLIDEAN:
        return float(np.hypot(*(p_r - p_l)))

    if neighbors is None:
        raise ValueError('the curvature loss needs the neighbouring points')

    prev = np.asarray(neighbors[0], dtype=float) / scale
    succ = np.asarray(neighbors[1], dtype=float) / scale

    return math.sqrt((_triangle_area(prev, p_l, p_r) + _triangle_area(p_l, p_r, succ)) / 2)

def interval_losses(kind: LossKind, thetas: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Loss of every cyclic interval `[theta_i, theta_(i+1)]` of a sorted sample set."""

    n      = len(thetas)
    scale  = output_scale(points)
    losses = np.empty(n)

    for i in range(n):
        j = (i + 1) % n

        losses[i] = interval_loss(
            kind,
            (thetas[i], points[i]),
            (thetas[j], points[j]),
            (points[i - 1], points[(i + 2) % n]),
            scale
        )

    return losses
