import typing
import matplotlib
import numpy as np
from matplotlib.colors  import ListedColormap, BoundaryNorm
from matplotlib.figure  import Figure
from matplotlib.patches import Patch
from tlroa.datatypes    import BoundaryCurve, ClassifiedGrid, Trajectory, VerdictKind
from tlroa.lyapunov     import LyapunovSeed

__all__ = [
    'VERDICT_COLORS',
    'grid_figure',
    'boundary_figure',
    'save_svg'
]

VERDICT_COLORS = {
    VerdictKind.STABLE_HOME:     '#2ca02c',
    VerdictKind.STABLE_NEIGHBOR: '#1f77b4',
    VerdictKind.UNSTABLE:        '#d62728'
}

_CURVE_STYLES = ('-', '--', '-.', ':')

def _axes(fig: Figure, title: str):
    ax = fig.add_subplot(1, 1, 1)
    ax.set_xlabel(r'$\delta$ (rad)')
    ax.set_ylabel(r'$\dot\delta$ (rad/s)')
    ax.set_title(title)
    ax.grid(True, linewidth=0.3)

    return ax

def _draw_curve(ax, vertices: np.ndarray, **kwargs) -> None:
    closed = np.vstack([vertices, vertices[:1]])
    ax.plot(closed[:, 0], closed[:, 1], **kwargs)

def _draw_seed(ax, seed: LyapunovSeed) -> None:
    _draw_curve(ax, seed.boundary(), color='black', linewidth=0.8, label='seed')
    ax.plot([seed.x_eq.x1], [seed.x_eq.x2], marker='x', color='black', linestyle='none')

def grid_figure(grid: ClassifiedGrid,
                curves: typing.Sequence[BoundaryCurve] = (),
                seed: typing.Optional[LyapunovSeed] = None,
                title: str = 'Forward simulated region of attraction'
) -> Figure:
    """Raster of forward-simulation labels, optionally overlaid with boundary curves."""

    fig = Figure(figsize=(7, 5))
    ax  = _axes(fig, title)

    kinds = [VerdictKind.STABLE_HOME, VerdictKind.STABLE_NEIGHBOR, VerdictKind.UNSTABLE]
    cmap  = ListedColormap([VERDICT_COLORS[k] for k in kinds])
    norm  = BoundaryNorm([int(k) - 0.5 for k in kinds] + [int(kinds[-1]) + 0.5], cmap.N)

    ax.pcolormesh(grid.deltas, grid.omegas, grid.kinds().T, cmap=cmap, norm=norm, shading='nearest')

    for index, curve in enumerate(curves):
        _draw_curve(ax, curve.vertices, color='white', linestyle=_CURVE_STYLES[index % len(_CURVE_STYLES)], linewidth=1.2)

    if seed is not None:
        _draw_seed(ax, seed)

    ax.legend(handles=[Patch(color=VERDICT_COLORS[k], label=k.name.replace('_', ' ').lower()) for k in kinds], loc='upper right')

    return fig

def boundary_figure(curves: typing.Sequence[BoundaryCurve],
                    labels: typing.Optional[typing.Sequence[str]] = None,
                    seed: typing.Optional[LyapunovSeed] = None,
                    trajectory: typing.Optional[Trajectory] = None,
                    neighbors: int = 0,
                    title: str = 'Time-limited region of attraction'
) -> Figure:
    """Boundary curves with, optionally, their `2*pi` translations and a fault trajectory.

    The trajectory is drawn in its wrapped view, ending at the post-fault state.
    """

    fig    = Figure(figsize=(7, 5))
    ax     = _axes(fig, title)
    labels = labels or [f't_back={c.t_back:g} s' for c in curves]
    colors = matplotlib.rcParams['axes.prop_cycle'].by_key()['color']

    for index, (curve, label) in enumerate(zip(curves, labels)):
        color = colors[index % len(colors)]

        _draw_curve(ax, curve.vertices, color=color, label=label)

        for k in range(1, neighbors + 1):
            for shift in (k, -k):
                _draw_curve(ax, curve.translated(shift).vertices, color=color, linestyle='--', linewidth=0.8)

    if seed is not None:
        _draw_seed(ax, seed)

    if trajectory is not None:
        view = trajectory.wrapped()

        ax.plot(view.deltas, view.omegas, color='black', linestyle='none', marker='.', markersize=1.5, label='fault trajectory')
        ax.plot([view.end.x1], [view.end.x2], color='black', marker='o', linestyle='none')

    ax.legend(loc='upper right')

    return fig

def save_svg(fig: Figure,
             file: typing.Union[str, typing.BinaryIO],
             config_hash: typing.Optional[str] = None,
             deterministic: bool = False
) -> None:
    """Writes `fig` as SVG, with `config_hash` in the document description.

    `deterministic` fixes element ids and drops the date.
    """

    metadata = {}

    if config_hash is not None:
        metadata['Description'] = f'config_hash: {config_hash}'

    if not deterministic:
        fig.savefig(file, format='svg', metadata=metadata)
        return

    metadata['Date'] = None

    with matplotlib.rc_context({'svg.hashsalt': 'tlroa'}):
        fig.savefig(file, format='svg', metadata=metadata)
