from itertools import product

import pytest
from hypothesis import given, strategies as st

from quivinv.errors import BadWeights
from quivinv.linalg import Matrix, block_diag, pfaffian
from quivinv.pfaffian_so import (
    PfaffianContext,
    generic_degree_report,
    invariant_dims,
    pf_square_membership,
    pfaffian_functional,
    pfaffian_transform_check,
    so_extension_check,
)


def unit_pair(n, p, q):
    m = [[0] * n for _ in range(n)]
    m[p][q], m[q][p] = 1, -1
    return Matrix(m, n, n)


def test_functional_examples():
    ctx = PfaffianContext(2, 1)
    assert pfaffian_functional(ctx, [1]).evaluate(ctx.values([Matrix([[0, 7], [-7, 0]])])) == 7
    ctx = PfaffianContext(4, 2)
    vals = ctx.values([unit_pair(4, 0, 1), unit_pair(4, 2, 3)])
    assert pfaffian_functional(ctx, [1, 1]).evaluate(vals) == 1
    ctx = PfaffianContext(4, 1)
    block = Matrix([[0, 1], [-1, 0]])
    assert pfaffian_functional(ctx, [2]).evaluate(ctx.values([block_diag(block, block)])) == 1


def test_bad_weights_and_context():
    ctx = PfaffianContext(4, 2)
    for ws in ([1], [2, 1], [-1, 3], [1.0, 1]):
        with pytest.raises(BadWeights):
            pfaffian_functional(ctx, ws)
    with pytest.raises(ValueError):
        PfaffianContext(3)
    with pytest.raises(ValueError):
        PfaffianContext(2, 0)


@given(st.integers(-3, 3), st.integers(-3, 3), st.data())
def test_polarization_identity(lam, mu, data):
    """``pf(lam A + mu B) == sum_k lam^k mu^(w-k) * (polarized pfaffian of weight (k, w-k))``."""
    n = data.draw(st.sampled_from([2, 4, 6]))
    ctx = PfaffianContext(n, 2)
    entries = st.integers(-2, 2)
    mats = []
    for _ in range(2):
        m = [[0] * n for _ in range(n)]
        for p, q in ctx.entries:
            x = data.draw(entries)
            m[p][q], m[q][p] = x, -x
        mats.append(Matrix(m, n, n))
    vals = ctx.values(mats)
    total = sum(lam ** k * mu ** (ctx.w - k) * pfaffian_functional(ctx, [k, ctx.w - k]).evaluate(vals)
                for k in range(ctx.w + 1))
    assert total == pfaffian(mats[0].scale(lam) + mats[1].scale(mu))


@pytest.mark.parametrize("dim_w, m", [(2, 1), (2, 3), (4, 1), (4, 2)])
def test_extension_check(dim_w, m):
    rep = so_extension_check(PfaffianContext(dim_w, m), 15, 0)
    assert rep["pass"], rep


@pytest.mark.parametrize("dim_w, m, d, so_dim, o_dim", [
    (2, 2, 1, 2, 0),
    (2, 1, 2, 1, 1),
    (4, 1, 1, 0, 0),
])
def test_degree_examples(dim_w, m, d, so_dim, o_dim):
    got = invariant_dims(PfaffianContext(dim_w, m), d)
    assert got[:2] == (so_dim, o_dim)
    assert got[0] == got[1] + got[2]


def test_so2_invariants_are_all_polynomials():
    """SO(2) acts trivially on so(2); the reflection flips every coordinate."""
    ctx = PfaffianContext(2, 3)
    for d in range(1, 4):
        so_dim, o_dim, anti = invariant_dims(ctx, d)
        all_monomials = len([c for c in product(range(d + 1), repeat=3) if sum(c) == d])
        assert so_dim == all_monomials
        assert o_dim == (all_monomials if d % 2 == 0 else 0)
        assert anti == (0 if d % 2 == 0 else all_monomials)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_generic_degree_report_accounts_for_odd_part(m):
    rep = generic_degree_report(PfaffianContext(2, m), 4)
    assert rep["pass"]
    for row in rep["degrees"]:
        assert row["difference"] == row["anti_invariant_dim"] == row["odd_span_all_profiles"]


def test_multilinear_profiles_are_not_enough_in_general():
    rep = generic_degree_report(PfaffianContext(4, 1), 4)
    assert rep["pass"]
    assert rep["multilinear_profiles"] == []
    assert not all(r["multilinear_suffices"] for r in rep["degrees"])


@pytest.mark.parametrize("dim_w, m", [(2, 1), (2, 2), (4, 1)])
def test_pf_square_membership(dim_w, m):
    rep = pf_square_membership(PfaffianContext(dim_w, m))
    assert rep["member"]
    assert rep["degree"] == dim_w


def test_transform_check():
    rep = pfaffian_transform_check(40, 3)
    assert rep["pass"] and rep["failures"] == 0
