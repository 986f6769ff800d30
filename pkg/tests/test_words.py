from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import make_quiver
from quivinv.errors import NotComposable
from quivinv.evaluate import evaluate_word, random_representation
from quivinv.quiver import build_doubled, gram_matrix
from quivinv.words import TraceWord, canonicalize, enumerate_cycles, generators, is_composable

O, S, G = "orthogonal", "symplectic", "gl"


def brute_force_cycles(dq, max_len):
    """Every step sequence, kept when it closes up, then canonicalized."""
    steps = [(aid, star) for aid, star, _, _ in dq.steps()]
    found = set()
    for n in range(1, max_len + 1):
        for seq in product(steps, repeat=n):
            w = TraceWord(seq)
            if is_composable(w, dq):
                found.add(canonicalize(w))
    return found


QUIVERS = [
    make_quiver([("s", O)], [("a", "s", "s")]),
    make_quiver([("s", O), ("t", O)], [("a", "s", "t"), ("b", "t", "s")]),
    make_quiver([("s", O), ("t", S)], [("a", "s", "t")]),
    make_quiver([("u", G), ("v", G)], [("a", "u", "u"), ("b", "u", "v")], [("u", "v")]),
    make_quiver([("s", O), ("t", S), ("u", G), ("v", G)], [("a", "s", "t"), ("b", "t", "u"), ("c", "s", "v")],
                [("u", "v")]),
]


@pytest.mark.parametrize("q", QUIVERS)
@pytest.mark.parametrize("max_len", [1, 2, 3])
def test_enumeration_matches_brute_force(q, max_len):
    dq = build_doubled(q)
    got = enumerate_cycles(dq, max_len)
    assert len(got) == len(set(got))
    assert set(got) == brute_force_cycles(dq, max_len)


@pytest.mark.parametrize("q", QUIVERS)
def test_counts_monotone_in_length(q):
    dq = build_doubled(q)
    counts = [len(enumerate_cycles(dq, n)) for n in range(1, 5)]
    assert counts == sorted(counts)


def test_enumeration_examples():
    loop = build_doubled(QUIVERS[0])
    assert enumerate_cycles(loop, 1) == [TraceWord([("a", False)])]
    one_way = build_doubled(make_quiver([("s", O), ("t", O)], [("a", "s", "t")]))
    assert enumerate_cycles(one_way, 2) == [TraceWord([("a", False), ("a", True)])]
    chain = build_doubled(make_quiver([("p", O), ("s", O), ("t", O)], [("a", "p", "s"), ("b", "s", "t")]))
    assert enumerate_cycles(chain, 3) == [
        TraceWord([("a", False), ("a", True)]),
        TraceWord([("b", False), ("b", True)]),
    ]
    with pytest.raises(ValueError):
        enumerate_cycles(loop, 0)


@st.composite
def closed_words(draw):
    q = draw(st.sampled_from(QUIVERS[:3] + QUIVERS[4:]))
    dq = build_doubled(q)
    words = enumerate_cycles(dq, 4)
    w = draw(st.sampled_from(words))
    k = draw(st.integers(0, len(w) - 1))
    return dq, TraceWord(w[k:] + w[:k])


@given(closed_words())
def test_canonicalize_properties(arg):
    dq, w = arg
    c = canonicalize(w, dq)
    assert canonicalize(c, dq) == c
    for r in w.rotations():
        assert canonicalize(r) == c
    assert canonicalize(w.adjoint_reversal()) == c
    assert is_composable(c, dq)


def test_not_composable():
    dq = build_doubled(make_quiver([("s", O), ("t", O)], [("a", "s", "t")]))
    with pytest.raises(NotComposable):
        canonicalize([("a", False)], dq)


def test_json_round_trip():
    w = TraceWord([("a", False), ("b", True)])
    assert TraceWord.from_json(w.to_json()) == w
    assert w.to_json()[1] == {"arrow": "b", "star": True}


@pytest.mark.parametrize("q", QUIVERS)
def test_adjoint_reversal_agrees_up_to_sign(q):
    """Merging a word with its adjoint reversal is safe: values agree up to sign."""
    dims = {v: 2 for v in q.vertex_ids}
    dq = build_doubled(q)
    forms = gram_matrix(q, dims)
    for w in enumerate_cycles(dq, 4):
        for k in range(3):
            rho = random_representation(q, dims, k, "reversal")
            x = evaluate_word(w, rho, forms, dq)
            y = evaluate_word(w.adjoint_reversal(), rho, forms, dq)
            assert x in (y, -y)


def test_generators_examples():
    q = QUIVERS[0]
    gens = generators(q, {"s": 1}, 2)
    assert TraceWord([("a", False)]) in gens and all(len(w) <= 2 for w in gens)
    sp = make_quiver([("t", S)], [("a", "t", "t")])
    assert TraceWord([("a", False)]) in generators(sp, {"t": 2}, 1)
    # over an orthogonal -> symplectic arrow the Gram-type word a* a vanishes identically
    mixed = QUIVERS[2]
    assert generators(mixed, {"s": 2, "t": 2}, 2) == []
    gl = QUIVERS[3]
    gens = generators(gl, {"u": 1, "v": 1}, 2)
    # b and b* both run u -> v, so they never close up
    assert gens and all({s.arrow for s in w} == {"a"} for w in gens)
    assert generators(make_quiver([]), {}, 3) == []
