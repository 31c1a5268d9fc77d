"""Kernel dispatch: the compiled extension when importable, else the pure-Python fallback.

``BACKEND`` names the active implementation (``"cython"`` or ``"python"``);
``backends()`` maps every available name to its module so tests and the
benchmark can exercise both.
"""
import numpy as np

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_impl = _compiled if _compiled is not None else _pykernels
BACKEND = "cython" if _compiled is not None else "python"


def backends():
    found = {"python": _pykernels}
    if _compiled is not None:
        found["cython"] = _compiled
    return found


def _pick(impl):
    if impl is None:
        return _impl
    if isinstance(impl, str):
        found = backends()
        if impl not in found:
            raise KeyError(f"unknown kernel backend {impl!r}; available: {sorted(found)}")
        return found[impl]
    return impl


def all_pairs_bfs(indptr, indices, n, impl=None):
    """Return the ``n x n`` int32 hop-distance matrix, ``-1`` where unreachable."""
    out = np.empty((n, n), dtype=np.int32)
    _pick(impl).all_pairs_bfs(indptr, indices, out)
    return out


def multi_source_bfs(indptr, indices, n, sources, impl=None):
    out = np.empty(n, dtype=np.int32)
    src = np.asarray(sorted(sources), dtype=np.int32)
    _pick(impl).multi_source_bfs(indptr, indices, src, out)
    return out


def treewidth_dp(adj_masks, n, impl=None):
    """Exact treewidth over vertex subsets; returns ``(width, elimination order)``."""
    return _pick(impl).treewidth_dp(list(adj_masks), n)


def pathwidth_dp(adj_masks, n, impl=None):
    """Exact vertex separation number (= pathwidth); returns ``(width, layout)``."""
    return _pick(impl).pathwidth_dp(list(adj_masks), n)
