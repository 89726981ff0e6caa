"""Gauss-Legendre rules on the unit interval and composite panel rules."""

import functools

import numpy as np
from scipy import special


@functools.cache
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Return Gauss-Legendre nodes and weights mapped to [0, 1].

    The arrays are cached and read-only.
    """
    x, w = special.roots_legendre(order)
    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def geometric_edges(a: float, b: float, levels: int, ratio: float) -> np.ndarray:
    """Panel edges on [a, b] refined geometrically toward a.

    Returns ``levels + 2`` edges ``a, a + (b-a) ratio^levels, ..., a + (b-a) ratio, b``.
    """
    offsets = (b - a) * ratio ** np.arange(levels, 0, -1, dtype=float)
    return np.concatenate(([a], a + offsets, [b]))


def uniform_edges(a: float, b: float, panels: int) -> np.ndarray:
    """Edges of ``panels`` equal panels on [a, b]."""
    edges = np.linspace(a, b, panels + 1)
    edges[-1] = b
    return edges


def panel_rule(edges: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule with ``order`` points on every panel.

    Returns:
        Flattened nodes and weights, in increasing node order.
    """
    x, w = gauss_legendre(order)
    widths = np.diff(edges)
    nodes = edges[:-1, None] + widths[:, None] * x[None, :]
    weights = widths[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()
