"""Brute-force invariant spaces, used as ground truth for the generator theorems.

The dimension of degree-``d`` invariants of a product of classical groups
is computed as the common kernel of the Lie algebra acting by derivations,
cut down by one reflection per orthogonal factor (``O = SO + reflection``).
The candidate generators (trace words, pairings) are expanded symbolically
and their span is measured by exact rank.
"""

from dataclasses import dataclass
from itertools import product
from math import comb

from .errors import TooLarge
from .evaluate import Representation, evaluate_word
from .linalg import Matrix, sparse_kernel, sparse_rank, standard_symplectic
from .poly import Poly, derive, monomials
from .quiver import FormAssignment, VertexKind, build_doubled, gram_matrix, validate_dimension
from .words import enumerate_cycles

DEFAULT_GUARD = 20000


# -- Lie algebra bases -------------------------------------------------------


def _unit(n, p, q, c=1):
    return {(p, q): c}


def so_basis(n):
    return [{(p, q): 1, (q, p): -1} for p in range(n) for q in range(p + 1, n)]


def sp_basis(n):
    """``J S`` for ``S`` running over a basis of symmetric matrices."""
    j = standard_symplectic(n)
    out = []
    for p in range(n):
        for q in range(p, n):
            s = {(p, q): 1, (q, p): 1} if p != q else {(p, p): 1}
            x = {}
            for (k, c), val in s.items():
                for r in range(n):
                    if j[r, k]:
                        x[(r, c)] = x.get((r, c), 0) + j[r, k] * val
            out.append({k: v for k, v in x.items() if v})
    return out


def gl_basis(n):
    return [_unit(n, p, q) for p in range(n) for q in range(n)]


@dataclass
class LinearAction:
    """A Lie algebra acting linearly on ``nvars`` coordinates, plus reflections.

    Each generator maps a variable to a dict ``{var: coeff}`` (its image
    under the infinitesimal action).  Each reflection is a tuple of signs,
    one per variable.
    """

    nvars: int
    generators: list
    reflections: list

    def split_generators(self):
        diag, other = [], []
        for g in self.generators:
            if all(set(img) <= {v} for v, img in g.items()):
                diag.append(g)
            else:
                other.append(g)
        return diag, other


def invariant_space(action, columns, parity=None, want_basis=False):
    """Kernel of the action on ``span(columns)``.

    ``parity`` gives, per reflection, whether invariants (+1) or
    anti-invariants (-1) are wanted; ``None`` means invariants under all
    reflections, and an empty list ignores reflections.  Returns the
    dimension, or ``(dimension, basis)`` with basis polynomials.
    """
    if parity is None:
        parity = [1] * len(action.reflections)
    cols = []
    for m in columns:
        ok = True
        for refl, want in zip(action.reflections, parity):
            s = 1
            for v in m:
                s *= refl[v]
            if s != want:
                ok = False
                break
        if ok:
            cols.append(m)
    diag, other = action.split_generators()
    for g in diag:
        cols = [m for m in cols if sum(g.get(v, {}).get(v, 0) for v in m) == 0]
    rows = {}
    for gi, g in enumerate(other):
        for m in cols:
            for mu, c in derive(m, g).items():
                rows.setdefault((gi, mu), {})[m] = c
    if not want_basis:
        return len(cols) - sparse_rank(rows.values(), key=_col_key(cols))
    basis = sparse_kernel(list(rows.values()), cols)
    return len(basis), [Poly(b) for b in basis]


def _col_key(cols):
    order = {c: i for i, c in enumerate(cols)}
    return order.__getitem__


# -- quiver instances --------------------------------------------------------


def coordinates(q, alpha):
    """Coordinate labels ``(arrow, i, j)`` for the entries of all maps."""
    out = []
    for a in q.arrows:
        for i in range(alpha[a.dst]):
            for j in range(alpha[a.src]):
                out.append((a.id, i, j))
    return out


def quiver_action(q, alpha):
    alpha = validate_dimension(q, alpha)
    coords = coordinates(q, alpha)
    index = {c: k for k, c in enumerate(coords)}
    # each group generator is a dict vertex -> matrix entries
    group_gens = []
    for v, k in q.vertices:
        n = alpha[v]
        if k is VertexKind.ORTHOGONAL:
            group_gens += [{v: x} for x in so_basis(n)]
        elif k is VertexKind.SYMPLECTIC:
            group_gens += [{v: x} for x in sp_basis(n)]
    for u, us in q.pairs:
        for x in gl_basis(alpha[u]):
            group_gens.append({u: x, us: {(c, r): -val for (r, c), val in x.items()}})

    gens = []
    for gg in group_gens:
        lin = {}
        for a in q.arrows:
            xd = gg.get(a.dst, {})
            xs = gg.get(a.src, {})
            if not xd and not xs:
                continue
            for i in range(alpha[a.dst]):
                for j in range(alpha[a.src]):
                    img = {}
                    # (X_dst f)_{ij} = sum_k X_dst[i,k] f_{kj}
                    for (r, kk), val in xd.items():
                        if r == i:
                            w = index[(a.id, kk, j)]
                            img[w] = img.get(w, 0) + val
                    # -(f X_src)_{ij} = -sum_k f_{ik} X_src[k,j]
                    for (kk, c), val in xs.items():
                        if c == j:
                            w = index[(a.id, i, kk)]
                            img[w] = img.get(w, 0) - val
                    img = {w: c for w, c in img.items() if c}
                    if img:
                        lin[index[(a.id, i, j)]] = img
        if lin:
            gens.append(lin)

    reflections = []
    for v, k in q.vertices:
        if k is VertexKind.ORTHOGONAL and alpha[v] > 0:
            signs = []
            for aid, i, j in coords:
                a = q.arrow(aid)
                s = 1
                if a.dst == v and i == 0:
                    s = -s
                if a.src == v and j == 0:
                    s = -s
                signs.append(s)
            reflections.append(tuple(signs))
    return LinearAction(len(coords), gens, reflections)


def _check_guard(size, guard):
    if guard is not None and size > guard:
        raise TooLarge(f"monomial space of size {size} exceeds guard rail {guard}")


def lie_invariant_dim(q, alpha, d, guard=DEFAULT_GUARD, reflections=True):
    """Dimension of degree-``d`` invariants of the full group on ``R(Q, alpha)``.

    With ``reflections=False`` the orthogonal factors are replaced by SO.
    """
    action = quiver_action(q, alpha)
    _check_guard(comb(action.nvars + d - 1, d), guard)
    parity = None if reflections else []
    return invariant_space(action, monomials(action.nvars, d), parity)


def symbolic_representation(q, alpha):
    """Representation whose entries are the coordinate variables."""
    coords = coordinates(q, alpha)
    index = {c: k for k, c in enumerate(coords)}
    maps = {}
    for a in q.arrows:
        r, c = alpha[a.dst], alpha[a.src]
        maps[a.id] = Matrix([[Poly.var(index[(a.id, i, j)]) for j in range(c)] for i in range(r)], r, c)
    return Representation(q, dict(alpha), maps)


def word_polynomials(words, q, alpha, forms=None):
    forms = forms or gram_matrix(q, alpha)
    rho = symbolic_representation(q, alpha)
    dq = build_doubled(q)
    out = []
    for w in words:
        p = evaluate_word(w, rho, forms, dq)
        out.append(p if isinstance(p, Poly) else Poly.const(p))
    return out


def products_of_degree(polys, lengths, d):
    """All products of the given polynomials (with repetition) of total degree ``d``."""
    order = sorted(range(len(polys)), key=lambda i: lengths[i])
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(acc)
            return
        for pos in range(start, len(order)):
            i = order[pos]
            if lengths[i] <= remaining:
                rec(pos, remaining - lengths[i], acc * polys[i])

    rec(0, d, Poly.const(1))
    return out


def polys_rank(polys):
    return sparse_rank([p.terms for p in polys if p])


def span_dim(words, q, alpha, d, guard=DEFAULT_GUARD, forms=None):
    """Dimension of the degree-``d`` span of products of trace words."""
    alpha = validate_dimension(q, alpha)
    nvars = len(coordinates(q, alpha))
    _check_guard(comb(nvars + d - 1, d), guard)
    words = [w for w in dict.fromkeys(words) if len(w) <= d]
    if not words:
        return 0
    polys = word_polynomials(words, q, alpha, forms)
    keep = [(p, len(w)) for p, w in zip(polys, words) if p]
    if not keep:
        return 0
    prods = products_of_degree([p for p, _ in keep], [n for _, n in keep], d)
    return polys_rank(prods)


def check_spanning(q, alpha, d, max_word_len, guard=DEFAULT_GUARD):
    """Compare the trace-word span with the oracle dimension at degree ``d``."""
    alpha = validate_dimension(q, alpha)
    oracle = lie_invariant_dim(q, alpha, d, guard)
    words = enumerate_cycles(build_doubled(q), max_word_len) if q.arrows else []
    spanned = span_dim(words, q, alpha, d, guard)
    return {"degree": d, "oracle_dim": oracle, "span_dim": spanned, "pass": oracle == spanned}


# -- first fundamental theorem ----------------------------------------------


@dataclass(frozen=True)
class PairingFunctional:
    """Product of pairings ``<v_p, v_q>`` over an ordered perfect matching."""

    pairs: tuple

    def poly(self, dim, form):
        out = Poly.const(1)
        for p, q in self.pairs:
            term = Poly()
            for j in range(dim):
                for l in range(dim):
                    c = form[j, l]
                    if c:
                        term = term + Poly.var(p * dim + j) * Poly.var(q * dim + l) * c
            out = out * term
        return out

    def evaluate(self, vectors, form):
        total = 1
        for p, q in self.pairs:
            vp, vq = vectors[p], vectors[q]
            s = 0
            for j, x in enumerate(vp):
                for l, y in enumerate(vq):
                    if form[j, l]:
                        s += x * form[j, l] * y
            total *= s
        return total


def perfect_matchings(points):
    points = list(points)
    if not points:
        yield ()
        return
    first = points[0]
    for k in range(1, len(points)):
        rest = points[1:k] + points[k + 1:]
        for m in perfect_matchings(rest):
            yield ((first, points[k]),) + m


def ordered_pairings(n_points):
    """Every ``phi_sigma``: perfect matchings with both orientations of each pair."""
    out = []
    for m in perfect_matchings(range(n_points)):
        for flips in product((False, True), repeat=len(m)):
            out.append(PairingFunctional(tuple((q, p) if f else (p, q) for (p, q), f in zip(m, flips))))
    return out


def fft_form(n, n_sp):
    m = [[0] * (n + n_sp) for _ in range(n + n_sp)]
    for i in range(n):
        m[i][i] = 1
    if n_sp:
        j = standard_symplectic(n_sp)
        for a in range(n_sp):
            for b in range(n_sp):
                m[n + a][n + b] = j[a, b]
    return Matrix(m, n + n_sp, n + n_sp)


def fft_action(n, n_sp, n_vectors):
    dim = n + n_sp
    blocks = [{k: x for k, x in g.items()} for g in so_basis(n)]
    blocks += [{(a + n, b + n): x for (a, b), x in g.items()} for g in sp_basis(n_sp)] if n_sp else []
    gens = []
    for x in blocks:
        lin = {}
        for k in range(n_vectors):
            for (r, c), val in x.items():
                # delta v_r = sum_c X[r, c] v_c
                lin.setdefault(k * dim + r, {})[k * dim + c] = val
        gens.append(lin)
    refl = []
    if n:
        refl.append(tuple(-1 if v % dim == 0 else 1 for v in range(dim * n_vectors)))
    return LinearAction(dim * n_vectors, gens, refl)


def multilinear_monomials(dim, n_vectors):
    return [tuple(k * dim + j for k, j in enumerate(js)) for js in product(range(dim), repeat=n_vectors)]


def fft_check(n, n_sp, i, guard=DEFAULT_GUARD, oriented=True):
    """Span of pairing functionals vs. invariant multilinear forms on ``V^(2i)``.

    ``oriented=False`` keeps one orientation per matched pair.
    """
    if n_sp % 2:
        raise ValueError("symplectic part must have even dimension")
    dim = n + n_sp
    npts = 2 * i
    _check_guard(dim ** npts, guard)
    action = fft_action(n, n_sp, npts)
    oracle = invariant_space(action, multilinear_monomials(dim, npts))
    form = fft_form(n, n_sp)
    functionals = ordered_pairings(npts) if oriented else [
        PairingFunctional(m) for m in perfect_matchings(range(npts))
    ]
    spanned = polys_rank([f.poly(dim, form) for f in functionals])
    return {
        "N": n,
        "N_sp": n_sp,
        "i": i,
        "functionals": len(functionals),
        "pairing_span_dim": spanned,
        "oracle_dim": oracle,
        "pass": spanned == oracle,
    }
