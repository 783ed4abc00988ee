"""SVG figures in the unit disc: generator axes, multicones, hulls and cores."""
import logging
import math
from pathlib import Path

import numpy as np
import matplotlib as mpl
mpl.use('Agg')
import matplotlib.pyplot as plt

from core.moebius import MapClass, fixed_points

logger = logging.getLogger(__name__)

ARC_STYLES = {
    'multicone': {'color': 'tab:blue', 'lw': 5},
    'forward': {'color': 'tab:green', 'lw': 4},
    'backward': {'color': 'tab:red', 'lw': 4},
    'forward core': {'color': 'darkgreen', 'lw': 2},
    'backward core': {'color': 'darkred', 'lw': 2},
    'rank one': {'color': 'tab:purple', 'lw': 6},
}


def geodesic_points(alpha, beta, samples=100):
    """Points of the hyperbolic geodesic between boundary angles alpha and beta."""
    half = (beta - alpha) / 2.0
    if abs(math.cos(half)) < 1e-9:
        t = np.linspace(-1.0, 1.0, samples)
        return t * math.cos(alpha), t * math.sin(alpha)
    middle = (alpha + beta) / 2.0
    centre = np.array([math.cos(middle), math.sin(middle)]) / math.cos(half)
    radius = abs(math.tan(half))
    start = np.array([math.cos(alpha), math.sin(alpha)]) - centre
    end = np.array([math.cos(beta), math.sin(beta)]) - centre
    a0, a1 = math.atan2(start[1], start[0]), math.atan2(end[1], end[0])
    # take the short way round the centre, which stays inside the disc
    delta = (a1 - a0 + math.pi) % (2 * math.pi) - math.pi
    angles = a0 + np.linspace(0.0, delta, samples)
    return centre[0] + radius * np.cos(angles), centre[1] + radius * np.sin(angles)


def _draw_boundary_arc(ax, arc, style, label=None):
    if arc.point_like:
        phi = arc.start.disc_angle()
        ax.plot([math.cos(phi)], [math.sin(phi)], 'o', color=style['color'], label=label)
        return
    # disc angle runs opposite to the chart angle
    phis = np.linspace(arc.start.disc_angle(), arc.start.disc_angle() - 2 * arc.length, 100)
    ax.plot(np.cos(phis), np.sin(phis), solid_capstyle='butt', label=label, **style)


def _draw_union(ax, union, name):
    style = ARC_STYLES.get(name, {'color': 'black', 'lw': 3})
    if union.full:
        phis = np.linspace(0, 2 * math.pi, 200)
        ax.plot(np.cos(phis), np.sin(phis), label=name, **style)
        return
    for i, arc in enumerate(union.arcs):
        _draw_boundary_arc(ax, arc, style, label=name if i == 0 else None)


def _draw_axis(ax, index, g):
    data = fixed_points(g)
    if data.map_class is MapClass.HYPERBOLIC:
        alpha, beta = data.repelling.disc_angle(), data.attracting.disc_angle()
        xs, ys = geodesic_points(alpha, beta)
        ax.plot(xs, ys, color='black', lw=1)
        k = len(xs) // 2
        ax.annotate('', xy=(xs[k + 1], ys[k + 1]), xytext=(xs[k - 1], ys[k - 1]),
                    arrowprops={'arrowstyle': '->', 'color': 'black'})
        ax.text(xs[k], ys[k], f' g{index}', fontsize=8)
    elif data.map_class is MapClass.PARABOLIC:
        phi = data.attracting.disc_angle()
        ax.plot([math.cos(phi)], [math.sin(phi)], 's', color='black')
        ax.text(math.cos(phi), math.sin(phi), f' g{index}', fontsize=8)
    elif data.map_class is MapClass.ELLIPTIC:
        w = (data.interior - 1j) / (data.interior + 1j)
        ax.plot([w.real], [w.imag], '*', color='black')
        ax.text(w.real, w.imag, f' g{index}', fontsize=8)


def draw_tuple_figure(maps, path, unions=None, title=None):
    """Write an SVG of the disc with each generator's axis and the given arc unions.

    ``unions`` maps a label such as 'multicone' or 'forward core' to an ArcUnion.
    """
    fig, ax = plt.subplots(figsize=(5, 5))
    phis = np.linspace(0, 2 * math.pi, 400)
    ax.plot(np.cos(phis), np.sin(phis), color='lightgray', lw=1)
    for name, union in (unions or {}).items():
        if union is not None:
            _draw_union(ax, union, name)
    for index, g in enumerate(maps, start=1):
        _draw_axis(ax, index, g)
    ax.set_aspect('equal')
    ax.set_xlim(-1.15, 1.15)
    ax.set_ylim(-1.15, 1.15)
    ax.axis('off')
    if title:
        ax.set_title(title)
    if unions:
        ax.legend(loc='lower right', fontsize=7, frameon=False)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    logger.info(f'Wrote figure {path}')
    return path
