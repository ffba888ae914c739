"""Regenerate every frozen expected value with the slow-path oracle.

The oracle solves each level as one dense linear system over full
matrices, with no graded-block bookkeeping shared with the engine; the
frozen records in the catalog must keep matching what it produces.
"""

from slow_oracle import slow_der0_dim, slow_prolong_dims
from tanaka.catalog import entries
from tanaka.lie import G0Spec, adjoin_g0, resolve_g0


def test_every_frozen_value_regenerates():
    for entry in entries():
        for check in entry.expected:
            if check.kind == "der0_dim":
                assert slow_der0_dim(entry.algebra) == check.value, entry.name
                continue
            assert check.kind == "prolong"
            g0 = resolve_g0(G0Spec(check.g0_preset), entry.algebra)
            m0 = adjoin_g0(entry.algebra, g0) if g0 else entry.algebra
            dims = slow_prolong_dims(m0, check.depth)
            nonzero = tuple(dims[:-1] if dims and dims[-1] == 0 else dims)
            assert nonzero == check.dims, (entry.name, check.g0_preset)
            if check.order is not None:
                assert dims[-1] == 0, (entry.name, check.g0_preset)
                assert check.order == len(nonzero)
            if check.bound is not None:
                base = entry.algebra.space.total_dim
                assert check.bound == base + len(g0) + sum(nonzero)


def test_binomial_growth_of_flat_prolongation():
    """dim g^k = n * C(n + k, k + 1) for the full matrix choice on a

    flat n-dimensional base; classical closed form, checked against
    the frozen records.
    """
    from math import comb

    for entry in entries():
        if not entry.name.startswith("abelian"):
            continue
        n = entry.algebra.space.total_dim
        for check in entry.expected:
            if check.kind == "prolong" and check.g0_preset == "gl":
                for k, dim in enumerate(check.dims, start=1):
                    assert dim == n * comb(n + k, k + 1)


def test_flat_der0_is_all_matrices():
    for entry in entries():
        if entry.name.startswith("abelian"):
            n = entry.algebra.space.total_dim
            for check in entry.expected:
                if check.kind == "der0_dim":
                    assert check.value == n * n
