import json
from itertools import combinations, product
from math import comb

import pytest
from hypothesis import assume, given, strategies as st

from quivinv.errors import InvalidSpec, UnsupportedConfiguration
from quivinv.local_model import (
    ORTHOGONAL,
    PAIR,
    SYMPLECTIC,
    DecompositionSpec,
    SummandSpec,
    build_local_quiver,
    closed_form_multiplicity,
    corollary_tangent_dim,
    ext_dimensions,
    fiber_cardinality,
    form_split,
    h1ad_inventory,
    hilbert_series,
    inventory_cross_check,
    load_spec,
    local_model_report,
    make_spec,
    molien_sign_group,
    multiplicity,
    regraded_t_coefficient,
    segre_series,
    tangent_dim,
)
from quivinv.poly import monomials
from quivinv.quiver import VertexKind


def test_ext_examples():
    ext = ext_dimensions(make_spec(2, [1, 2]))
    assert ext["ext_matrix"][0][1] == 2
    assert form_split(2, SummandSpec(ORTHOGONAL, 2, 1)) == {"S2": 4, "L2": 1}
    assert form_split(3, SummandSpec(ORTHOGONAL, 1, 1))["L2"] == 0
    sp = form_split(2, SummandSpec(SYMPLECTIC, 2, 1))
    assert sp == {"S2": 3, "L2": 2}


def test_local_quiver_examples():
    q, alpha = build_local_quiver(make_spec(2, [1], mults=[2]))
    assert q.kinds == {"s0": VertexKind.ORTHOGONAL}
    assert alpha == {"s0": 2}
    assert len(q.arrows) == 2
    q, alpha = build_local_quiver(make_spec(2, [1], kind=PAIR))
    assert len(q.pairs) == 1 and set(alpha.values()) == {1}
    counts = {}
    for a in q.arrows:
        counts[(a.src, a.dst)] = counts.get((a.src, a.dst), 0) + 1
    assert len(counts) == 4 and set(counts.values()) <= {1, 2}
    q, _ = build_local_quiver(make_spec(3, [1, 2]))
    assert sum(1 for a in q.arrows if a.src != a.dst) == 2 * (1 * 2 * 2)


def test_inventory_examples():
    assert h1ad_inventory(make_spec(2, [1, 2]))["total"] == 3
    assert h1ad_inventory(make_spec(2, [1], mults=[2]))["total"] == 2
    pair = h1ad_inventory(make_spec(2, [1], kind=PAIR))
    assert len(pair["summands"]) == 5
    assert pair["total"] == 2


def test_symplectic_flavor_swaps_forms():
    orth = make_spec(2, [2], mults=[2])
    symp = make_spec(2, [2], mults=[2], flavor=SYMPLECTIC)
    a = {x["label"]: x["h1"] for x in h1ad_inventory(orth)["summands"]}
    b = {x["label"]: x["h1"] for x in h1ad_inventory(symp)["summands"]}
    assert a != b
    assert sorted(a.values()) == sorted(b.values())
    rep = local_model_report(symp)
    assert rep.multiplicity is None and rep.unsupported


@st.composite
def specs(draw):
    n = draw(st.integers(1, 3))
    summands = []
    for _ in range(n):
        kind = draw(st.sampled_from([ORTHOGONAL, SYMPLECTIC, PAIR]))
        summands.append((kind, draw(st.integers(1, 3)), draw(st.integers(1, 3))))
    flavor = draw(st.sampled_from([ORTHOGONAL, SYMPLECTIC]))
    try:
        return DecompositionSpec(draw(st.integers(2, 4)), tuple(SummandSpec(*x) for x in summands), flavor)
    except InvalidSpec:
        assume(False)


@given(specs())
def test_inventory_cross_checks(spec):
    rep = inventory_cross_check(spec)
    assert rep["riemann_roch_ok"] and rep["quiver_ok"], rep


def test_spec_validation_and_io(tmp_path):
    with pytest.raises(InvalidSpec):
        make_spec(1, [1])
    with pytest.raises(InvalidSpec):
        make_spec(2, [0])
    with pytest.raises(InvalidSpec):
        DecompositionSpec.from_dict({"genus": 2, "summands": [{"kind": "weird", "rank": 1}]})
    with pytest.raises(InvalidSpec):
        load_spec(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(InvalidSpec):
        load_spec(bad)
    spec = make_spec(2, [1, 2])
    good = tmp_path / "good.json"
    good.write_text(json.dumps(spec.to_dict()))
    assert load_spec(good) == spec


def brute_force_invariant_counts(n, chars, upto):
    """Count monomials whose sign character is trivial, degree by degree."""
    out = []
    for d in range(upto):
        count = 0
        for m in monomials(len(chars), d):
            parity = [0] * n
            for v in m:
                for i in chars[v]:
                    parity[i] ^= 1
            count += not any(parity)
        out.append(count)
    return out


@pytest.mark.parametrize("n, chars", [
    (1, [(0,)]),
    (1, [(0,)] * 3),
    (2, [(0, 1)] * 2),
    (3, [(0, 1), (0, 2), (1, 2)]),
    (3, [(0, 1), (0, 1), (0, 2), (1, 2), (1, 2)]),
    (4, [p for p in combinations(range(4), 2)]),
])
def test_molien_matches_monomial_count(n, chars):
    assert molien_sign_group(n, chars).coefficients(6) == brute_force_invariant_counts(n, chars, 6)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_two_factor_closed_series(d):
    """``1/2 [(1-t)^-d + (1+t)^-d]`` for one off-diagonal block of dimension ``d``."""
    got = molien_sign_group(2, [(0, 1)] * d).coefficients(8)
    expected = [(comb(k + d - 1, d - 1) + (-1) ** k * comb(k + d - 1, d - 1)) // 2 for k in range(8)]
    assert got == expected


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_veronese_multiplicity(d):
    series = molien_sign_group(1, [(0,)] * d)
    assert series.multiplicity() == 2 ** (d - 1)
    if d == 1:
        assert series.numerator == (1,) and series.b == 1


@pytest.mark.parametrize("a, b", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)])
def test_segre_series(a, b):
    s = segre_series(a, b)
    coeffs = s.coefficients(12)
    for k in range(6):
        assert coeffs[2 * k] == comb(k + a - 1, a - 1) * comb(k + b - 1, b - 1)
        assert coeffs[2 * k + 1] == 0
    assert s.multiplicity() == comb(a + b - 2, a - 1)
    if (a, b) == (1, 1):
        assert s.numerator == (1,) and s.b == 1


CLOSED_FORM_CASES = [
    (g, ranks)
    for g in (2, 3)
    for n in (2, 3, 4)
    for ranks in product((1, 2), repeat=n)
    if list(ranks) == sorted(ranks)
]


@pytest.mark.parametrize("g, ranks", CLOSED_FORM_CASES)
def test_multiplicity_closed_forms(g, ranks):
    spec = make_spec(g, list(ranks))
    assert multiplicity(spec) == closed_form_multiplicity(spec)


def test_multiplicity_examples():
    assert multiplicity(make_spec(2, [1, 2])) == 2
    assert multiplicity(make_spec(2, [1, 1])) == 1
    assert multiplicity(make_spec(2, [1, 1, 1])) == 2
    assert multiplicity(make_spec(2, [1, 1, 1, 1])) == 8
    with pytest.raises(UnsupportedConfiguration):
        multiplicity(make_spec(2, [1, 1], mults=[2, 1]))
    with pytest.raises(UnsupportedConfiguration):
        hilbert_series(make_spec(2, [2, 2], kind=SYMPLECTIC, mults=[2, 2]))


def brute_force_generators(n, chars):
    """Minimal generators of the invariant monomial semigroup (degrees up to ``n`` suffice)."""
    inv = set()
    for d in range(1, n + 1):
        for m in monomials(len(chars), d):
            parity = [0] * n
            for v in m:
                for i in chars[v]:
                    parity[i] ^= 1
            if not any(parity):
                inv.add(m)

    def decomposable(m):
        for k in range(1, len(m)):
            for left in combinations(range(len(m)), k):
                a = tuple(m[i] for i in left)
                b = tuple(m[i] for i in range(len(m)) if i not in left)
                if a in inv and b in inv:
                    return True
        return False

    return sum(1 for m in inv if not decomposable(m))


@pytest.mark.parametrize("g, ranks", [(2, (1, 1)), (2, (1, 2)), (3, (1, 1)), (2, (1, 1, 1)),
                                      (2, (1, 2, 1)), (2, (1, 1, 1, 1))])
def test_tangent_dim_is_embedding_dimension(g, ranks):
    spec = make_spec(g, list(ranks))
    n = len(ranks)
    chars = [(i, j) for i, j in combinations(range(n), 2) for _ in range(ranks[i] * ranks[j] * (g - 1))]
    diag = sum(x["dim"] for x in h1ad_inventory(spec)["summands"] if "," not in x["block"])
    assert tangent_dim(spec) == diag + brute_force_generators(n, chars)


@pytest.mark.parametrize("g", [2, 3])
@pytest.mark.parametrize("ranks", [(1, 1), (1, 2), (2, 2)])
def test_tangent_formula_agrees_with_series(g, ranks):
    spec = make_spec(g, list(ranks))
    assert corollary_tangent_dim(spec) == regraded_t_coefficient(spec) == tangent_dim(spec)


def test_tangent_examples():
    assert tangent_dim(make_spec(2, [1, 2])) == 4
    assert tangent_dim(make_spec(2, [1, 1])) == 1
    assert tangent_dim(make_spec(3, [1, 1])) == 3


def test_fiber_examples():
    assert fiber_cardinality(make_spec(2, [2, 2])) == 2
    assert fiber_cardinality(make_spec(5, [2, 2])) == 2
    assert fiber_cardinality(make_spec(2, [1, 2])) == 1
    assert fiber_cardinality(make_spec(2, [3])) == 1
    with pytest.raises(InvalidSpec):
        fiber_cardinality(make_spec(2, [2], kind=SYMPLECTIC, flavor=SYMPLECTIC))


def test_fiber_sweep():
    for n in range(1, 4):
        for ranks in product(range(1, 5), repeat=n):
            for kinds in product((ORTHOGONAL, PAIR), repeat=n):
                spec = DecompositionSpec(2, tuple(SummandSpec(k, r, 1) for k, r in zip(kinds, ranks)))
                got = fiber_cardinality(spec)
                if spec.total_rank % 2:
                    assert got == 1
                else:
                    orth = [r for k, r in zip(kinds, ranks) if k == ORTHOGONAL]
                    assert got == (2 if all(r % 2 == 0 for r in orth) else 1)


def test_report_round_trip_and_provenance():
    rep = local_model_report(make_spec(2, [1, 2])).to_json()
    assert json.loads(json.dumps(rep)) == rep
    assert rep["multiplicity"] == 2 and rep["tangent_dim"] == 4
    assert rep["provenance"]["multiplicity"] == "paper"
    rep = local_model_report(make_spec(2, [1, 1, 1])).to_json()
    assert rep["provenance"]["tangent_dim"] == "derived"
