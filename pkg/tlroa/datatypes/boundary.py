from __future__ import annotations
import dataclasses
import math
import typing
import numpy as np
from tlroa.datatypes.state import State

__all__ = [
    'BoundaryCurve'
]

def _signed_area(vertices: np.ndarray) -> float:
    x = vertices[:, 0]
    y = vertices[:, 1]

    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

@dataclasses.dataclass(eq=False)
class BoundaryCurve:
    """Closed polyline in the (delta, delta_dot) plane.

    The edge from the last vertex back to the first is implicit. Vertices are
    stored counterclockwise; a clockwise input is reversed (together with its
    `thetas`) on construction.

    A curve translated to a neighbouring basin keeps the home vertices in
    `base_vertices` and records the integer `shift`; `vertices` adds `2*pi*shift`
    to the angle on access, so translating back and forth is exact.
    """

    base_vertices: np.ndarray
    t_back: float = 0.0
    thetas: typing.Optional[np.ndarray] = None
    shift: int = 0
    scenario_hash: str = ''
    sample_count: int = 0
    loss_kind: str = ''
    loss_goal: float = math.nan
    max_loss: float = math.nan
    warnings: typing.List[str] = dataclasses.field(default_factory=list)

    def __post_init__(self):
        vertices = np.array(self.base_vertices, dtype=float).reshape(-1, 2)

        if len(vertices) < 3:
            raise ValueError(f'a boundary curve needs at least 3 vertices (got {len(vertices)})')

        if not np.all(np.isfinite(vertices)):
            raise ValueError('boundary vertices must be finite')

        thetas = None if self.thetas is None else np.array(self.thetas, dtype=float)

        if thetas is not None and len(thetas) != len(vertices):
            raise ValueError(f'got {len(thetas)} thetas for {len(vertices)} vertices')

        if _signed_area(vertices) < 0:
            vertices = vertices[::-1].copy()

            if thetas is not None:
                thetas = thetas[::-1].copy()

        self.base_vertices = vertices
        self.thetas        = thetas
        self.shift         = int(self.shift)

        if self.sample_count == 0:
            self.sample_count = len(vertices)

    def __len__(self) -> int:
        return len(self.base_vertices)

    def __iter__(self) -> typing.Iterator[State]:
        return (State.from_array(v) for v in self.vertices)

    @property
    def vertices(self) -> np.ndarray:
        if self.shift == 0:
            return self.base_vertices.copy()

        return self.base_vertices + np.array([2 * math.pi * self.shift, 0.0])

    @property
    def signed_area(self) -> float:
        return _signed_area(self.base_vertices)

    def bounding_box(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        vertices = self.vertices

        return vertices.min(axis=0), vertices.max(axis=0)

    def translated(self, k: int) -> BoundaryCurve:
        return dataclasses.replace(self, shift=self.shift + k, warnings=list(self.warnings))
