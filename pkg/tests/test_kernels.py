import random
import subprocess
import sys

import numpy as np
import pytest

from coarsetw import generators, kernels

BACKENDS = sorted(kernels.backends())


def masks(g):
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def test_python_backend_always_present():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("impl", BACKENDS)
def test_all_pairs_agree(impl):
    rng = random.Random(1)
    for _ in range(15):
        g = generators.gnp(rng.randint(1, 40), 0.08, rng)
        indptr, indices = g.csr
        ref = kernels.all_pairs_bfs(indptr, indices, g.n, impl="python")
        got = kernels.all_pairs_bfs(indptr, indices, g.n, impl=impl)
        assert np.array_equal(ref, got)
        assert got.dtype == np.int32


@pytest.mark.parametrize("impl", BACKENDS)
def test_multi_source(impl):
    g = generators.path(6)
    indptr, indices = g.csr
    out = kernels.multi_source_bfs(indptr, indices, g.n, [0, 5], impl=impl)
    assert list(out) == [0, 1, 2, 2, 1, 0]


@pytest.mark.parametrize("impl", BACKENDS)
def test_width_dps_agree(impl):
    rng = random.Random(2)
    for _ in range(25):
        g = generators.gnp(rng.randint(0, 11), rng.uniform(0.1, 0.6), rng)
        tw_ref, _ = kernels.treewidth_dp(masks(g), g.n, impl="python")
        pw_ref, _ = kernels.pathwidth_dp(masks(g), g.n, impl="python")
        tw, order = kernels.treewidth_dp(masks(g), g.n, impl=impl)
        pw, layout = kernels.pathwidth_dp(masks(g), g.n, impl=impl)
        assert (tw, pw) == (tw_ref, pw_ref)
        assert sorted(order) == sorted(layout) == list(range(g.n))


def test_unknown_backend():
    with pytest.raises((KeyError, ValueError)):
        kernels.all_pairs_bfs(*generators.path(2).csr, 2, impl="fortran")


def test_fallback_selected_without_extension():
    code = (
        "import sys; sys.modules['coarsetw._kernels'] = None\n"
        "from coarsetw import kernels, generators\n"
        "from coarsetw.compress import build_compressing\n"
        "from coarsetw.treedecomp import heuristic_td, root_at\n"
        "from coarsetw.verify import verify_result\n"
        "assert kernels.BACKEND == 'python' and sorted(kernels.backends()) == ['python']\n"
        "g = generators.grid(4, 4)\n"
        "rtd = root_at(heuristic_td(g))\n"
        "res = build_compressing(g, rtd, 1)\n"
        "assert verify_result(g, rtd, res, rtd.base.width, 1).ok\n"
        "print('ok')\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "ok"
