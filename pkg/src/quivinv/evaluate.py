"""Representations, the group action, and trace-word evaluation."""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotInGroup, ShapeMismatch
from .linalg import (
    Matrix,
    adjoint,
    inverse,
    sample_full_orthogonal,
    sample_gl,
    sample_symplectic,
)
from .quiver import VertexKind, build_doubled, gram_matrix, sign_rule, validate_dimension
from .rng import small_int, stream


@dataclass(frozen=True)
class Representation:
    """Maps ``f_a`` of shape ``alpha[dst] x alpha[src]`` for every arrow."""

    quiver: object
    dims: dict = field(hash=False)
    maps: dict = field(hash=False)

    def __post_init__(self):
        for a in self.quiver.arrows:
            f = self.maps.get(a.id)
            if f is None:
                raise ShapeMismatch(f"no map for arrow {a.id!r}")
            want = (self.dims[a.dst], self.dims[a.src])
            if f.shape != want:
                raise ShapeMismatch(f"arrow {a.id!r}: map has shape {f.shape}, expected {want}")

    def to_json(self):
        return {
            aid: [[str(Fraction(x)) for x in row] for row in f.data]
            for aid, f in sorted(self.maps.items())
        }


def representation_from_json(q, alpha, d):
    maps = {}
    for a in q.arrows:
        rows, cols = alpha[a.dst], alpha[a.src]
        entries = d.get(a.id)
        if entries is None:
            raise ShapeMismatch(f"no entries for arrow {a.id!r}")
        if entries and not isinstance(entries[0], list):
            if len(entries) != rows * cols:
                raise ShapeMismatch(f"arrow {a.id!r}: expected {rows * cols} entries")
            entries = [entries[i * cols:(i + 1) * cols] for i in range(rows)]
        maps[a.id] = Matrix([[Fraction(x) for x in r] for r in entries], rows, cols)
    return Representation(q, dict(alpha), maps)


def random_representation(q, alpha, seed, *labels, bound=5):
    rng = stream(seed, "rep", *labels)
    maps = {}
    for a in q.arrows:
        r, c = alpha[a.dst], alpha[a.src]
        maps[a.id] = Matrix([[small_int(rng, bound) for _ in range(c)] for _ in range(r)], r, c)
    return Representation(q, dict(alpha), maps)


def zero_representation(q, alpha):
    return Representation(
        q, dict(alpha), {a.id: Matrix.zeros(alpha[a.dst], alpha[a.src]) for a in q.arrows}
    )


# -- evaluation --------------------------------------------------------------


def step_matrix(aid, star, rho, forms, dq, corrupt=None):
    """``f_a`` or ``eps(a) * adjoint(f_a)``.

    ``corrupt`` is only for negative controls: ``"skip-sign"`` drops eps,
    ``"transpose"`` replaces the adjoint by the plain transpose.
    """
    f = rho.maps[aid]
    if not star:
        return f
    if corrupt == "transpose":
        return f.T
    a = dq.base.arrow(aid)
    adj = adjoint(f, forms.pairing[a.src], forms.pairing[a.dst], forms.pairing_inv[a.src])
    if corrupt == "skip-sign":
        return adj
    return adj.scale(dq.eps[aid])


def evaluate_word(w, rho, forms, dq=None, corrupt=None, _cache=None):
    dq = dq or build_doubled(rho.quiver)
    start, _ = dq.step_ends(*w[0])
    prod = Matrix.identity(rho.dims[start])
    for aid, star in w:
        key = (aid, star)
        if _cache is not None and key in _cache:
            m = _cache[key]
        else:
            m = step_matrix(aid, star, rho, forms, dq, corrupt)
            if _cache is not None:
                _cache[key] = m
        if m.cols != prod.rows:
            raise ShapeMismatch(f"word {w!r} does not compose at step {aid}")
        prod = m @ prod
    return prod.trace()


def evaluate_words(words, rho, forms, dq=None, corrupt=None):
    dq = dq or build_doubled(rho.quiver)
    cache = {}
    return [evaluate_word(w, rho, forms, dq, corrupt, cache) for w in words]


def compatibility_failures(rho, forms, dq, corrupt=None):
    """Arrows where the starred step is not compatible with the order-4 involution.

    The involution sends ``a`` to ``eps(a) a*`` and ``a*`` to ``eps(a*) a``,
    so the adjoint of the starred step must equal ``eps(a*) f_a``.  Since
    the adjoint squares to ``-1`` on maps between a symplectic and a
    non-symplectic space, dropping the signs is caught here even though it
    only changes trace words by a global sign.
    """
    q = rho.quiver
    kinds = q.kinds
    bad = []
    for a in q.arrows:
        f = rho.maps[a.id]
        star = step_matrix(a.id, True, rho, forms, dq, corrupt)
        s, t = dq.star_ends[a.id]
        back = adjoint(star, forms.pairing[s], forms.pairing[t], forms.pairing_inv[s])
        eps_star = 1 if corrupt == "skip-sign" else sign_rule(kinds[s], kinds[t])
        if back != f.scale(eps_star):
            bad.append(a.id)
    return bad


# -- group action ------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    """Block ``g_v`` for every vertex; ``g_{u*}`` is the transpose-inverse of ``g_u``."""

    quiver: object
    blocks: dict = field(hash=False)

    def inverse_blocks(self):
        return {v: inverse(g) for v, g in self.blocks.items()}


def make_group_element(q, alpha, blocks, check=True):
    """Build a group element from blocks at orthogonal, symplectic and ``u`` vertices."""
    full = {}
    for v, k in q.vertices:
        if k is not VertexKind.GLPAIR:
            full[v] = blocks.get(v, Matrix.identity(alpha[v]))
    for u, us in q.pairs:
        g = blocks.get(u, Matrix.identity(alpha[u]))
        full[u] = g
        full[us] = inverse(g).T if alpha[u] else g
    g = GroupElement(q, full)
    if check:
        check_group_element(g, q, alpha)
    return g


def check_group_element(g, q, alpha):
    forms = gram_matrix(q, alpha)
    for v, k in q.vertices:
        b = g.blocks[v]
        if b.shape != (alpha[v], alpha[v]):
            raise ShapeMismatch(f"block at {v!r} has shape {b.shape}")
        if k is VertexKind.ORTHOGONAL and b.T @ b != Matrix.identity(alpha[v]):
            raise NotInGroup(f"block at {v!r} is not orthogonal")
        if k is VertexKind.SYMPLECTIC:
            j = forms.pairing[v]
            if b.T @ j @ b != j:
                raise NotInGroup(f"block at {v!r} is not symplectic")
    for u, us in q.pairs:
        if g.blocks[us] @ g.blocks[u].T != Matrix.identity(alpha[u]):
            raise NotInGroup(f"blocks at ({u!r}, {us!r}) are not transpose-inverse")


def compose(g, h):
    return GroupElement(g.quiver, {v: g.blocks[v] @ h.blocks[v] for v in g.blocks})


def identity_element(q, alpha):
    return GroupElement(q, {v: Matrix.identity(alpha[v]) for v in q.vertex_ids})


def random_group_element(q, alpha, seed, *labels, flip=None):
    """Blockwise sample: O (either component), Sp and GL.

    ``flip`` forces every orthogonal block into the determinant -1
    component (``True``) or SO (``False``); ``None`` chooses at random.
    """
    rng = stream(seed, "group", *labels)
    blocks = {}
    for v, k in q.vertices:
        n = alpha[v]
        if n == 0:
            blocks[v] = Matrix([], 0, 0)
        elif k is VertexKind.ORTHOGONAL:
            blocks[v] = sample_full_orthogonal(n, rng, flip)
        elif k is VertexKind.SYMPLECTIC:
            blocks[v] = sample_symplectic(n, rng)
    for u, _ in q.pairs:
        blocks[u] = sample_gl(alpha[u], rng) if alpha[u] else Matrix([], 0, 0)
    return make_group_element(q, alpha, blocks, check=False)


def act(g, rho, check=False):
    """``f_a -> g_dst f_a g_src^-1`` for every arrow."""
    if check:
        check_group_element(g, rho.quiver, rho.dims)
    inv = {}
    maps = {}
    for a in rho.quiver.arrows:
        if a.src not in inv:
            inv[a.src] = inverse(g.blocks[a.src]) if rho.dims[a.src] else g.blocks[a.src]
        maps[a.id] = g.blocks[a.dst] @ rho.maps[a.id] @ inv[a.src]
    return Representation(rho.quiver, rho.dims, maps)


def invariance_report(words, q, alpha, samples, seed, corrupt=None):
    """Fuzz the invariance of each word under random group elements.

    Odd-numbered samples use orthogonal blocks of determinant -1.  Each
    sample also checks compatibility of starred steps with the involution
    (see :func:`compatibility_failures`).
    """
    alpha = validate_dimension(q, alpha)
    forms = gram_matrix(q, alpha)
    dq = build_doubled(q)
    words = list(words)
    failures = [0] * len(words)
    compat = {}
    flipped = 0
    for k in range(samples):
        rho = random_representation(q, alpha, seed, "invariance", k)
        flip = bool(k % 2)
        flipped += flip and any(kd is VertexKind.ORTHOGONAL and alpha[v] for v, kd in q.vertices)
        g = random_group_element(q, alpha, seed, "invariance", k, flip=flip)
        before = evaluate_words(words, rho, forms, dq, corrupt)
        after = evaluate_words(words, act(g, rho), forms, dq, corrupt)
        for i, (x, y) in enumerate(zip(before, after)):
            if x != y:
                failures[i] += 1
        for aid in compatibility_failures(rho, forms, dq, corrupt):
            compat[aid] = compat.get(aid, 0) + 1
    return {
        "samples": samples,
        "det_minus_one_samples": flipped,
        "words": [w.to_json() for w in words],
        "failures": failures,
        "compatibility_failures": dict(sorted(compat.items())),
        "total_failures": sum(failures) + sum(compat.values()),
        "corrupt": corrupt,
    }
