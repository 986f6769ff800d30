"""SO-invariants of tuples of antisymmetric matrices and polarized pfaffians.

For an even-dimensional quadratic space ``W`` of dimension ``2w`` the ring
of SO(W)-invariants on ``so(W)^m`` is a degree two extension of the ring of
O(W)-invariants.  The odd part (anti-invariant under a reflection) is
generated over the even part by polarized pfaffians: the coefficients of
``pf(l_1 A_1 + ... + l_m A_m)``.
"""

from dataclasses import dataclass
from itertools import product
from math import comb

from .errors import BadWeights
from .evaluate import Representation, evaluate_word
from .linalg import Matrix, det, pfaffian, reflection, sample_full_orthogonal, sample_orthogonal
from .oracle import (
    DEFAULT_GUARD,
    LinearAction,
    _check_guard,
    invariant_space,
    polys_rank,
    products_of_degree,
    so_basis,
)
from .poly import Poly, monomials
from .quiver import SymQuiver, Arrow, VertexKind, build_doubled, gram_matrix
from .rng import stream
from .words import enumerate_cycles


@dataclass(frozen=True)
class PfaffianContext:
    """``dim_w``: dimension of W (even); ``m``: number of so(W) slots."""

    dim_w: int
    m: int = 1

    def __post_init__(self):
        if self.dim_w < 2 or self.dim_w % 2:
            raise ValueError(f"dim W must be even and at least 2, got {self.dim_w}")
        if self.m < 1:
            raise ValueError("need at least one slot")

    @property
    def w(self):
        return self.dim_w // 2

    @property
    def entries(self):
        n = self.dim_w
        return [(p, q) for p in range(n) for q in range(p + 1, n)]

    @property
    def nvars(self):
        return self.m * len(self.entries)

    def var(self, slot, p, q):
        """Index of the coordinate ``A_slot[p, q]`` for ``p < q``."""
        return slot * len(self.entries) + self.entries.index((p, q))

    def symbolic(self, slot):
        n = self.dim_w
        rows = [[Poly() for _ in range(n)] for _ in range(n)]
        for p, q in self.entries:
            x = Poly.var(self.var(slot, p, q))
            rows[p][q] = x
            rows[q][p] = -x
        return Matrix(rows, n, n)

    def values(self, mats):
        """Coordinate vector of a tuple of antisymmetric matrices."""
        out = [0] * self.nvars
        for slot, a in enumerate(mats):
            for p, q in self.entries:
                out[self.var(slot, p, q)] = a[p, q]
        return out

    def weight_profiles(self):
        """All nonnegative weight vectors of length ``m`` summing to ``w``."""
        return [ws for ws in product(range(self.w + 1), repeat=self.m) if sum(ws) == self.w]


def _signed_matchings(n):
    """Perfect matchings of ``range(n)`` as ``(sign, pairs)`` with ``p < q`` in each pair."""
    if n == 0:
        return [(1, ())]
    out = []
    for k in range(1, n):
        rest = [i for i in range(1, n) if i != k]
        relabel = {i: r for r, i in enumerate(rest)}
        back = {r: i for i, r in relabel.items()}
        # moving k next to 0 costs k - 1 transpositions
        sign = -1 if (k - 1) % 2 else 1
        for s, pairs in _signed_matchings(n - 2):
            out.append((sign * s, ((0, k),) + tuple((back[a], back[b]) for a, b in pairs)))
    return out


def pfaffian_functional(ctx, slot_weights):
    """Polarized pfaffian: coefficient of ``prod l_j^{w_j}`` in ``pf(sum l_j A_j)``."""
    ws = tuple(slot_weights)
    if len(ws) != ctx.m or any((not isinstance(x, int)) or x < 0 for x in ws) or sum(ws) != ctx.w:
        raise BadWeights(f"weights {ws} must be {ctx.m} nonnegative integers summing to {ctx.w}")
    terms = {}
    for sign, pairs in _signed_matchings(ctx.dim_w):
        # distribute the w edges of the matching among slots with the given counts
        for slots in product(range(ctx.m), repeat=len(pairs)):
            if any(slots.count(j) != ws[j] for j in range(ctx.m)):
                continue
            mono = tuple(sorted(ctx.var(j, p, q) for j, (p, q) in zip(slots, pairs)))
            terms[mono] = terms.get(mono, 0) + sign
    return Poly(terms)


def conjugation_action(ctx):
    """so(W) acting on so(W)^m by commutators, plus the reflection at index 0."""
    n = ctx.dim_w
    gens = []
    for x in so_basis(n):
        lin = {}
        for slot in range(ctx.m):
            a = ctx.symbolic(slot)
            for p, q in ctx.entries:
                # [X, A]_{pq}
                img = Poly()
                for (r, c), val in x.items():
                    if r == p:
                        img = img + a[c, q] * val
                    if c == q:
                        img = img - a[p, r] * val
                if img:
                    lin[ctx.var(slot, p, q)] = {m[0]: c for m, c in img.terms.items()}
        gens.append(lin)
    signs = [1] * ctx.nvars
    for slot in range(ctx.m):
        for p, q in ctx.entries:
            if (p == 0) != (q == 0):
                signs[ctx.var(slot, p, q)] = -1
    return LinearAction(ctx.nvars, gens, [tuple(signs)])


def _conjugate(g, a):
    return g @ a @ g.T


def so_extension_check(ctx, samples, seed, pf_square_degree=True):
    """Randomized and symbolic checks of the pfaffian extension.

    (i) every polarized pfaffian is invariant under SO(W) conjugation,
    (ii) a determinant -1 element negates each of them,
    (iii) ``pf^2`` lies in the span of products of trace words (only for
    ``m == 1`` and ``dim W <= 4`` unless forced).
    """
    from .linalg import random_antisymmetric

    if samples < 1:
        raise ValueError("samples must be positive")
    profiles = ctx.weight_profiles()
    functionals = [pfaffian_functional(ctx, ws) for ws in profiles]
    so_fail = [0] * len(profiles)
    flip_fail = [0] * len(profiles)
    pf_fail = 0
    for k in range(samples):
        rng = stream(seed, "pfaffian", ctx.dim_w, ctx.m, k)
        mats = [random_antisymmetric(rng, ctx.dim_w) for _ in range(ctx.m)]
        g = sample_orthogonal(ctx.dim_w, rng)
        h = sample_full_orthogonal(ctx.dim_w, rng, flip=True)
        base = ctx.values(mats)
        rot = ctx.values([_conjugate(g, a) for a in mats])
        ref = ctx.values([_conjugate(h, a) for a in mats])
        for i, f in enumerate(functionals):
            v = f.evaluate(base)
            if f.evaluate(rot) != v:
                so_fail[i] += 1
            if f.evaluate(ref) != -v:
                flip_fail[i] += 1
        # cross-check with the elimination pfaffian on the first slot
        if ctx.m == 1 and functionals[0].evaluate(base) != pfaffian(mats[0]):
            pf_fail += 1
    report = {
        "dim_w": ctx.dim_w,
        "m": ctx.m,
        "samples": samples,
        "profiles": [list(p) for p in profiles],
        "so_invariance_failures": so_fail,
        "reflection_sign_failures": flip_fail,
        "elimination_mismatches": pf_fail,
    }
    if pf_square_degree and ctx.dim_w <= 4 and ctx.m <= 2:
        report["pf_square"] = pf_square_membership(ctx)
    report["pass"] = (
        not any(so_fail)
        and not any(flip_fail)
        and pf_fail == 0
        and report.get("pf_square", {}).get("member", True)
    )
    return report


def loop_quiver(m):
    return SymQuiver((("w", VertexKind.ORTHOGONAL),), tuple(Arrow(f"a{j}", "w", "w") for j in range(m)))


def trace_word_polys(ctx, max_len):
    """Trace words in ``A_1, ..., A_m`` (and adjoints) restricted to so(W)^m."""
    q = loop_quiver(ctx.m)
    alpha = {"w": ctx.dim_w}
    rho = Representation(q, alpha, {f"a{j}": ctx.symbolic(j) for j in range(ctx.m)})
    forms = gram_matrix(q, alpha)
    dq = build_doubled(q)
    words = enumerate_cycles(dq, max_len)
    out = []
    for w in words:
        p = evaluate_word(w, rho, forms, dq)
        p = p if isinstance(p, Poly) else Poly.const(p)
        if p:
            out.append((p, len(w)))
    return out


def pf_square_membership(ctx, guard=DEFAULT_GUARD):
    """Is ``pf(sum l_j A_j)^2`` (every coefficient) in the trace-word span?"""
    d = 2 * ctx.w
    _check_guard(comb(ctx.nvars + d - 1, d), guard)
    pairs = trace_word_polys(ctx, d)
    span = products_of_degree([p for p, _ in pairs], [n for _, n in pairs], d)
    base_rank = polys_rank(span)
    fs = [pfaffian_functional(ctx, ws) for ws in ctx.weight_profiles()]
    squares = [f * g for i, f in enumerate(fs) for g in fs[i:]]
    full_rank = polys_rank(span + squares)
    return {"degree": d, "span_rank": base_rank, "with_squares_rank": full_rank, "member": base_rank == full_rank}


def invariant_dims(ctx, d, guard=DEFAULT_GUARD):
    """``(so_dim, o_dim, anti_dim)`` at degree ``d`` on so(W)^m."""
    _check_guard(comb(ctx.nvars + d - 1, d), guard)
    action = conjugation_action(ctx)
    cols = monomials(ctx.nvars, d)
    so_dim = invariant_space(action, cols, parity=[])
    o_dim = invariant_space(action, cols, parity=[1])
    anti_dim = invariant_space(action, cols, parity=[-1])
    return so_dim, o_dim, anti_dim


def odd_part_span(ctx, d, profiles, guard=DEFAULT_GUARD):
    """Rank of ``{pf_k * b}`` with ``b`` running over O-invariants of degree ``d - w``."""
    e = d - ctx.w
    if e < 0:
        return 0
    action = conjugation_action(ctx)
    _, basis = invariant_space(action, monomials(ctx.nvars, e), parity=[1], want_basis=True)
    fs = [pfaffian_functional(ctx, ws) for ws in profiles]
    return polys_rank([f * b for f in fs for b in basis])


def generic_degree_report(ctx, max_degree=4, guard=DEFAULT_GUARD):
    """Per-degree SO and O invariant dimensions and how pfaffians account for the difference.

    Two hypotheses are recorded: the odd part is spanned by pfaffians of
    all weight profiles times O-invariants, or by multilinear profiles only.
    """
    profiles = ctx.weight_profiles()
    multilinear = [p for p in profiles if max(p) <= 1]
    rows = []
    for d in range(1, max_degree + 1):
        so_dim, o_dim, anti_dim = invariant_dims(ctx, d, guard)
        odd_all = odd_part_span(ctx, d, profiles, guard)
        odd_ml = odd_part_span(ctx, d, multilinear, guard) if multilinear else 0
        rows.append({
            "degree": d,
            "so_dim": so_dim,
            "o_dim": o_dim,
            "difference": so_dim - o_dim,
            "anti_invariant_dim": anti_dim,
            "odd_span_all_profiles": odd_all,
            "odd_span_multilinear": odd_ml,
            "accounted": so_dim - o_dim == odd_all == anti_dim,
            "multilinear_suffices": so_dim - o_dim == odd_ml,
        })
    return {
        "dim_w": ctx.dim_w,
        "m": ctx.m,
        "profiles": [list(p) for p in profiles],
        "multilinear_profiles": [list(p) for p in multilinear],
        "degrees": rows,
        "pass": all(r["accounted"] for r in rows),
    }


def pfaffian_transform_check(samples, seed, sizes=(2, 4, 6, 8)):
    """``pf(g A g^T) == det(g) pf(A)`` over random integer ``g`` and antisymmetric ``A``."""
    from .linalg import random_antisymmetric, _random_int_matrix

    failures = 0
    for k in range(samples):
        n = sizes[k % len(sizes)]
        rng = stream(seed, "pf-transform", k)
        a = random_antisymmetric(rng, n)
        g = _random_int_matrix(rng, n, n)
        if pfaffian(g @ a @ g.T) != det(g) * pfaffian(a):
            failures += 1
    return {"samples": samples, "sizes": list(sizes), "failures": failures, "pass": failures == 0}
