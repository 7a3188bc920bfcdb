from __future__ import annotations
import logging
import typing
import numpy as np
from more_itertools      import pairwise
from tlroa.datatypes     import BoundaryCurve, State
from tlroa.sampling.loss import output_scale

__all__ = [
    'EDGE_TOLERANCE',
    'polygon_area',
    'contains',
    'contains_points',
    'winding_number',
    'self_intersections',
    'repair_self_intersections',
    'hausdorff_distance',
    'translate_curve',
    'is_nested',
    'seed_curve'
]

logger = logging.getLogger(__name__)

EDGE_TOLERANCE = 1e-12

Vertices = typing.Union[BoundaryCurve, np.ndarray, typing.Sequence[typing.Sequence[float]]]

def _as_vertices(curve: Vertices) -> np.ndarray:
    if isinstance(curve, BoundaryCurve):
        return curve.vertices

    return np.asarray(curve, dtype=float).reshape(-1, 2)

def _as_points(points) -> np.ndarray:
    if isinstance(points, State):
        return points.as_array().reshape(1, 2)

    return np.asarray(points, dtype=float).reshape(-1, 2)

def polygon_area(curve: Vertices) -> float:
    """Shoelace area, positive for counterclockwise vertices."""

    v = _as_vertices(curve)
    x = v[:, 0]
    y = v[:, 1]

    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

def _segment_distances(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distance of every point to every segment `a[j] -> b[j]`, shape `(points, segments)`."""

    ab    = b - a
    ap    = points[:, None, :] - a[None, :, :]
    denom = np.einsum('ij,ij->i', ab, ab)
    denom = np.where(denom > 0, denom, 1.0)
    u     = np.clip(np.einsum('pij,ij->pi', ap, ab) / denom, 0.0, 1.0)
    near  = a[None, :, :] + u[:, :, None] * ab[None, :, :]

    return np.hypot(*(points[:, None, :] - near).transpose(2, 0, 1))

def contains_points(curve: Vertices, points, tolerance: float = EDGE_TOLERANCE) -> np.ndarray:
    """Even-odd ray casting for many points; points within `tolerance` of an edge count as inside."""

    v      = _as_vertices(curve)
    points = _as_points(points)
    a      = v
    b      = np.roll(v, -1, axis=0)

    px = points[:, 0][:, None]
    py = points[:, 1][:, None]

    straddles = (a[:, 1] <= py) != (b[:, 1] <= py)
    dy        = np.where(b[:, 1] != a[:, 1], b[:, 1] - a[:, 1], 1.0)
    x_cross   = a[:, 0] + (py - a[:, 1]) * (b[:, 0] - a[:, 0]) / dy
    crossings = np.count_nonzero(straddles & (px < x_cross), axis=1)
    inside    = crossings % 2 == 1

    on_edge = _segment_distances(points, a, b).min(axis=1) <= tolerance

    return inside | on_edge

def contains(curve: Vertices, p, tolerance: float = EDGE_TOLERANCE) -> bool:
    return bool(contains_points(curve, p, tolerance)[0])

def winding_number(curve: Vertices, p) -> int:
    """Winding number of the closed polyline around `p`."""

    v      = _as_vertices(curve)
    px, py = _as_points(p)[0]
    closed = list(map(tuple, v)) + [tuple(v[0])]
    count  = 0

    def is_left(source, target) -> float:
        return (target[0] - source[0]) * (py - source[1]) - (px - source[0]) * (target[1] - source[1])

    for source, target in pairwise(closed):
        if source[1] <= py:
            if target[1] > py and is_left(source, target) > 0:
                count += 1
        elif target[1] <= py and is_left(source, target) < 0:
            count -= 1

    return count

def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (a[..., 1] - o[..., 1]) * (b[..., 0] - o[..., 0])

def self_intersections(curve: Vertices) -> typing.List[typing.Tuple[int, int]]:
    """Pairs `(i, j)`, `i < j`, of non-adjacent edges that cross properly.

    Edge `i` runs from vertex `i` to vertex `i + 1` (the last edge closes the curve).
    """

    v = _as_vertices(curve)
    n = len(v)
    a = v
    b = np.roll(v, -1, axis=0)

    pairs = []

    for i in range(n - 2):
        j = np.arange(i + 2, n if i > 0 else n - 1)

        if len(j) == 0:
            continue

        d1 = _cross(a[j], b[j], a[i])
        d2 = _cross(a[j], b[j], b[i])
        d3 = _cross(a[i], b[i], a[j])
        d4 = _cross(a[i], b[i], b[j])

        crossing = (d1 * d2 < 0) & (d3 * d4 < 0)

        pairs.extend((i, int(k)) for k in j[crossing])

    return pairs

def _crossing(p: np.ndarray, q: np.ndarray, r: np.ndarray, s: np.ndarray) -> typing.Tuple[np.ndarray, float]:
    """Point where segment `p-q` properly crosses `r-s`, and its parameter along `p-q`."""

    d = q - p
    e = s - r
    u = ((r[0] - p[0]) * e[1] - (r[1] - p[1]) * e[0]) / (d[0] * e[1] - d[1] * e[0])

    return p + u * d, float(u)

def repair_self_intersections(curve: Vertices) -> typing.Tuple[np.ndarray, typing.List[float], typing.List[str]]:
    """Removes crossing loops, keeping the larger side of each crossing.

    The kept side is closed through the crossing point itself, so its outline
    follows the input edges. Returns the repaired vertices, the position of each
    along the input polyline (`i + u` for a point at fraction `u` of edge `i`)
    and one warning per repair.
    """

    v         = _as_vertices(curve)
    points    = list(v)
    positions = [float(i) for i in range(len(v))]
    warnings  = []

    while len(points) > 3:
        crossings = self_intersections(np.array(points))

        if not crossings:
            break

        i, j     = crossings[0]
        x, u     = _crossing(points[i], points[i + 1], points[j], points[(j + 1) % len(points)])
        at       = positions[i] + u * (positions[i + 1] - positions[i])
        loop     = [x] + points[i + 1:j + 1]
        rest     = points[:i + 1] + [x] + points[j + 1:]
        loop_pos = [at] + positions[i + 1:j + 1]
        rest_pos = positions[:i + 1] + [at] + positions[j + 1:]

        if abs(polygon_area(np.array(loop))) > abs(polygon_area(np.array(rest))):
            dropped, points, positions = rest, loop, loop_pos
        else:
            dropped, points, positions = loop, rest, rest_pos

        # The crossing point stays on both sides.
        message = f'removed a self-intersecting loop of {len(dropped) - 1} vertices'
        warnings.append(message)
        logger.warning(message)

    return np.array(points), positions, warnings

def hausdorff_distance(a: Vertices, b: Vertices, scale: typing.Optional[np.ndarray] = None) -> float:
    """Symmetric vertex-to-polyline Hausdorff distance between two closed curves.

    Both axes are divided by `scale`, by default the bounding-box extent of both
    curves together.
    """

    va = _as_vertices(a)
    vb = _as_vertices(b)

    if scale is None:
        scale = output_scale(np.vstack([va, vb]))

    va = va / scale
    vb = vb / scale

    def directed(p: np.ndarray, q: np.ndarray) -> float:
        return float(_segment_distances(p, q, np.roll(q, -1, axis=0)).min(axis=1).max())

    return max(directed(va, vb), directed(vb, va))

def translate_curve(b: BoundaryCurve, k: int) -> BoundaryCurve:
    """The curve shifted by `2*pi*k` in angle."""

    return b.translated(k)

def is_nested(inner: Vertices, outer: Vertices) -> bool:
    """Whether every vertex of `inner` lies in `outer`."""

    return bool(np.all(contains_points(outer, _as_vertices(inner))))

def seed_curve(seed, n: int = 256) -> BoundaryCurve:
    """Polygon of a `LyapunovSeed` ellipse."""

    return BoundaryCurve(seed.boundary(n), t_back=0.0, loss_kind='Seed')
