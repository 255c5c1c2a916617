"""Kernel selection and the bit-identical output contract.

The compiled kernel and the pure-Python kernel must return exactly the
same (min_level, events, components) triple on the same box, events in
the same order with the same representatives.
"""

import pytest

from plumbhf import (
    brieskorn_graph,
    canonical_char_vector,
    get_kernel,
    graded_root,
    intersection_form,
    kernel_name,
    oracle_graded_root,
    tau_sequence,
)
from plumbhf.kernels import available_kernels, compiled_kernel, python_kernel
from helpers import build_graph

needs_compiled = pytest.mark.skipif(
    compiled_kernel is None, reason="compiled kernel not built"
)


def box_inputs(g, radius):
    m = intersection_form(g)
    diag = [m[i, i] for i in range(m.n)]
    ids = g.sorted_ids()
    pos = {v: i for i, v in enumerate(ids)}
    edges = sorted(tuple(sorted((pos[a], pos[b]))) for a, b in (tuple(e) for e in g.edges))
    return diag, edges, canonical_char_vector(m)


class TestSelection:
    def test_python_kernel_always_available(self):
        assert "python" in available_kernels()
        assert kernel_name(python_kernel) == "python"

    def test_get_by_name(self):
        assert get_kernel("python") is python_kernel

    def test_unknown_name_raises(self):
        with pytest.raises(ValueError, match="unknown kernel"):
            get_kernel("vectorized-fortran")

    def test_force_py_env(self, monkeypatch):
        monkeypatch.setenv("PLUMBHF_FORCE_PY_KERNEL", "1")
        assert get_kernel() is python_kernel

    @needs_compiled
    def test_default_prefers_compiled(self, monkeypatch):
        monkeypatch.delenv("PLUMBHF_FORCE_PY_KERNEL", raising=False)
        assert get_kernel() is compiled_kernel
        assert kernel_name(compiled_kernel) == "compiled"


@needs_compiled
class TestBitIdentical:
    def test_event_streams_match(self):
        for triple, radius in [((2, 3, 5), 3), ((2, 3, 13), 10), ((3, 4, 5), 12)]:
            g = brieskorn_graph(*triple)
            diag, edges, k = box_inputs(g, radius)
            a = python_kernel(diag, edges, k, radius, 10**9, False)
            b = compiled_kernel(diag, edges, k, radius, 10**9, False)
            assert a == b

    def test_cutoff_slices_match(self):
        g = brieskorn_graph(2, 3, 13)
        diag, edges, k = box_inputs(g, 10)
        min_level, _, _ = python_kernel(diag, edges, k, 10, -(2**62), False)
        for span in (0, 1, 2, 5, 9):
            a = python_kernel(diag, edges, k, 10, min_level + span, False)
            b = compiled_kernel(diag, edges, k, 10, min_level + span, False)
            assert a == b

    def test_compiled_rejects_exact_mode(self):
        g = build_graph([-1], [])
        diag, edges, k = box_inputs(g, 2)
        with pytest.raises(ValueError):
            compiled_kernel(diag, edges, k, 2, 10**9, True)

    def test_oracle_same_tree_under_either_kernel(self):
        g = brieskorn_graph(2, 5, 7)
        a = oracle_graded_root(g, kernel=python_kernel)
        b = oracle_graded_root(g, kernel=compiled_kernel)
        assert a.canonical_form() == b.canonical_form()


class TestExactBigIntPath:
    def test_huge_weight_single_vertex(self):
        # chi values overflow int64 by a wide margin; the oracle must fall
        # back to the exact path and still agree with the Laufer route
        w = -(2**70)
        g = build_graph([w], [])
        r = oracle_graded_root(g)
        assert r.leaf_count == 1
        t = tau_sequence(g, 0, 8)
        assert graded_root(t, g).isomorphic(r)

    def test_exact_matches_numpy_when_both_fit(self):
        g = brieskorn_graph(2, 3, 7)
        diag, edges, k = box_inputs(g, 4)
        fast = python_kernel(diag, edges, k, 4, 10**9, False)
        slow = python_kernel(diag, edges, k, 4, 10**9, True)
        assert fast == slow
