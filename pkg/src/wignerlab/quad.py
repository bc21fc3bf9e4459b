"""Composite Gauss-Legendre quadrature helpers.

All contour and kernel integrals in this package are built from panels of
Gauss-Legendre nodes.  Panels may be graded geometrically toward a point
(used near contour crossings and saddle points, where integrands are peaked
or mildly singular).
"""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=32)
def _leggauss(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def panel_nodes(edges, order=16):
    """Nodes and weights of composite Gauss-Legendre quadrature.

    `edges` is an increasing array of panel boundaries; each panel
    [edges[k], edges[k+1]] receives `order` nodes.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or len(edges) < 2:
        raise ValueError("need at least two panel edges")
    if np.any(np.diff(edges) <= 0):
        raise ValueError("panel edges must be strictly increasing")
    x, w = _leggauss(order)
    a = edges[:-1][:, None]
    b = edges[1:][:, None]
    nodes = 0.5 * (b - a) * x[None, :] + 0.5 * (a + b)
    weights = 0.5 * (b - a) * w[None, :] + np.zeros_like(nodes)
    return nodes.ravel(), weights.ravel()


def graded_edges(center, inner, outer, ratio=2.0):
    """Panel edges accumulating geometrically at `center` from both sides.

    Widths grow from `inner` (finest panel adjacent to the center) by
    `ratio` until they reach the span `outer` on each side.  Used to resolve
    1/(w - z) peaks where two contours cross.
    """
    if not (0 < inner < outer):
        raise ValueError("need 0 < inner < outer")
    offs = [0.0, inner]
    while offs[-1] < outer:
        offs.append(min(offs[-1] * (1.0 + ratio), outer))
    offs = np.asarray(offs)
    return np.concatenate([center - offs[::-1], center + offs[1:]])


def merge_edges(*edge_arrays):
    """Union of panel-edge arrays with degenerate panels dropped."""
    allv = np.sort(np.concatenate([np.asarray(e, dtype=float) for e in edge_arrays]))
    keep = np.concatenate([[True], np.diff(allv) > 1e-14 * max(1.0, np.abs(allv).max())])
    return allv[keep]


def uniform_edges(a, b, width):
    """Panel edges covering [a, b] with panels of at most `width`."""
    count = max(1, int(np.ceil((b - a) / width)))
    return np.linspace(a, b, count + 1)


def semicircle_average(f, order=400):
    """Integral of f against the semicircle density u(x) = (2/pi) sqrt(1-x^2).

    Uses the substitution x = cos(theta), which removes the square-root
    endpoint singularities; Gauss-Legendre in theta then converges
    spectrally for f analytic near [-1, 1].
    """
    theta, w = panel_nodes(np.linspace(0.0, np.pi, 9), order=order // 8 + 8)
    x = np.cos(theta)
    vals = np.asarray(f(x), dtype=float)
    return float(np.sum(w * vals * (2.0 / np.pi) * np.sin(theta) ** 2))
