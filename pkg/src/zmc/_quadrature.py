"""Adaptive composite Gauss-Legendre rule on [0, 1], batched over endpoints."""
import numpy as np

from .errors import QuadratureError

_ORDER = 10
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(_ORDER)


def composite_nodes(panels: int):
    """Nodes and weights of ``panels`` equal Gauss-Legendre panels on [0, 1]."""
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 / panels
    mids = 0.5 * (edges[:-1] + edges[1:])
    tau = (mids[:, None] + half * _NODES[None, :]).ravel()
    w = np.tile(half * _WEIGHTS, panels)
    return tau, w


def integrate_unit(f, tol: float = 1e-10, max_level: int = 12):
    """Integrate ``f`` over [0, 1].

    ``f`` receives a 1-D array of nodes and returns an array whose leading
    axis runs over those nodes; the trailing axes are integrated
    independently.  Panels double until two successive levels agree to
    ``tol`` relative to ``max(|I|, 1)`` for every trailing entry.
    """
    prev = None
    for level in range(max_level + 1):
        tau, w = composite_nodes(2 ** level)
        vals = np.asarray(f(tau))
        cur = np.tensordot(w, vals, axes=(0, 0))
        if prev is not None:
            with np.errstate(invalid="ignore"):
                err = np.abs(cur - prev)
                scale = np.maximum(np.abs(cur), 1.0)
            if np.all(np.isfinite(cur)) and np.all(err <= tol * scale):
                return cur
        prev = cur
    raise QuadratureError(f"no convergence after {2 ** max_level} panels")
