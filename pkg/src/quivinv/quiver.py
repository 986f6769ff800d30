"""Symmetric quivers, admissible dimension vectors and the doubled quiver.

Vertices come in three classes.  An orthogonal vertex carries a quadratic
space, a symplectic vertex a symplectic space, and a GL pair ``(u, u*)``
two spaces put in duality by a hyperbolic pairing.  The involution
``sigma`` fixes orthogonal and symplectic vertices and swaps pair partners.
"""

import json
from dataclasses import dataclass, field
from enum import Enum

from .errors import MalformedQuiver, MissingVertex, OddSymplecticDim, UnbalancedPair
from .linalg import Matrix, block_diag, hyperbolic, standard_symplectic


class VertexKind(str, Enum):
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"
    GLPAIR = "gl"


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class SymQuiver:
    """A quiver whose vertices carry a class; pairs list the GL couples."""

    vertices: tuple  # of (id, VertexKind)
    arrows: tuple = ()  # of Arrow
    pairs: tuple = ()  # of (u, u_star)

    def __post_init__(self):
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise MalformedQuiver("duplicate vertex id")
        kinds = dict(self.vertices)
        seen = set()
        for u, us in self.pairs:
            for x in (u, us):
                if x not in kinds:
                    raise MissingVertex(f"pair references unknown vertex {x!r}")
                if kinds[x] is not VertexKind.GLPAIR:
                    raise MalformedQuiver(f"vertex {x!r} is paired but not of class gl")
                if x in seen:
                    raise MalformedQuiver(f"vertex {x!r} appears in two pairs")
                seen.add(x)
            if u == us:
                raise MalformedQuiver("a vertex cannot be its own partner")
        unpaired = [v for v, k in self.vertices if k is VertexKind.GLPAIR and v not in seen]
        if unpaired:
            raise MalformedQuiver(f"gl vertices without partner: {unpaired}")
        aids = [a.id for a in self.arrows]
        if len(set(aids)) != len(aids):
            raise MalformedQuiver("duplicate arrow id")
        for a in self.arrows:
            for x in (a.src, a.dst):
                if x not in kinds:
                    raise MissingVertex(f"arrow {a.id!r} references unknown vertex {x!r}")

    @property
    def kinds(self):
        return dict(self.vertices)

    @property
    def vertex_ids(self):
        return [v for v, _ in self.vertices]

    def kind(self, v):
        return self.kinds[v]

    def sigma(self, v):
        for u, us in self.pairs:
            if v == u:
                return us
            if v == us:
                return u
        return v

    def arrow(self, aid):
        for a in self.arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def canonical_order(self):
        """Orthogonal vertices, then symplectic, then pairs (u before u*)."""
        orth = [v for v, k in self.vertices if k is VertexKind.ORTHOGONAL]
        symp = [v for v, k in self.vertices if k is VertexKind.SYMPLECTIC]
        gl = [x for pair in self.pairs for x in pair]
        return orth + symp + gl

    @classmethod
    def from_dict(cls, d):
        try:
            vertices = tuple((v["id"], VertexKind(v["class"])) for v in d.get("vertices", []))
            pairs = tuple(tuple(p) for p in d.get("pairs", []))
            arrows = tuple(Arrow(a["id"], a["src"], a["dst"]) for a in d.get("arrows", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedQuiver(f"bad quiver description: {exc}") from exc
        if any(len(p) != 2 for p in pairs):
            raise MalformedQuiver("pairs must have two entries")
        return cls(vertices, arrows, pairs)

    def to_dict(self):
        return {
            "vertices": [{"id": v, "class": k.value} for v, k in self.vertices],
            "pairs": [list(p) for p in self.pairs],
            "arrows": [{"id": a.id, "src": a.src, "dst": a.dst} for a in self.arrows],
        }


def load_quiver(path):
    """Read a quiver description; returns ``(quiver, dims or None)``."""
    with open(path) as fh:
        d = json.load(fh)
    return parse_quiver(d)


def parse_quiver(d):
    q = SymQuiver.from_dict(d)
    dims = d.get("dims")
    if dims is not None:
        dims = validate_dimension(q, dims)
    return q, dims


def validate_dimension(q, alpha):
    """Check that ``alpha`` is admissible for ``q`` and return it as a dict."""
    alpha = dict(alpha)
    for v, k in q.vertices:
        if v not in alpha:
            raise MissingVertex(f"no dimension for vertex {v!r}")
        n = alpha[v]
        if not isinstance(n, int) or n < 0:
            raise MalformedQuiver(f"dimension at {v!r} must be a nonnegative integer")
        if k is VertexKind.SYMPLECTIC and n % 2:
            raise OddSymplecticDim(f"symplectic vertex {v!r} has odd dimension {n}")
    for u, us in q.pairs:
        if alpha[u] != alpha[us]:
            raise UnbalancedPair(f"pair ({u!r}, {us!r}) has dimensions {alpha[u]} != {alpha[us]}")
    extra = set(alpha) - set(q.vertex_ids)
    if extra:
        raise MissingVertex(f"dimensions given for unknown vertices {sorted(extra)}")
    return alpha


# -- doubled quiver ----------------------------------------------------------


def sign_rule(src_kind, dst_kind):
    """-1 for arrows from an orthogonal or GL vertex into a symplectic one."""
    if dst_kind is VertexKind.SYMPLECTIC and src_kind is not VertexKind.SYMPLECTIC:
        return -1
    return 1


@dataclass(frozen=True)
class DoubledQuiver:
    base: SymQuiver
    star_ends: dict = field(hash=False)  # arrow id -> (src, dst) of a*
    eps: dict = field(hash=False)  # arrow id -> +-1

    def step_ends(self, aid, star):
        """Endpoints of ``a`` or ``a*``."""
        if star:
            return self.star_ends[aid]
        a = self.base.arrow(aid)
        return a.src, a.dst

    def steps(self):
        """All arrows of the doubled quiver as ``(arrow id, star, src, dst)``."""
        out = []
        for a in self.base.arrows:
            out.append((a.id, False, a.src, a.dst))
            s, t = self.star_ends[a.id]
            out.append((a.id, True, s, t))
        return out


def build_doubled(q):
    star_ends = {}
    eps = {}
    kinds = q.kinds
    for a in q.arrows:
        star_ends[a.id] = (q.sigma(a.dst), q.sigma(a.src))
        eps[a.id] = sign_rule(kinds[a.src], kinds[a.dst])
    return DoubledQuiver(q, star_ends, eps)


# -- forms -------------------------------------------------------------------


@dataclass(frozen=True)
class FormAssignment:
    """Gram data per vertex.

    ``pairing[v]`` is the block of the global form with rows indexed by
    ``V_v`` and columns by ``V_sigma(v)``; ``pairing_inv[v]`` its inverse.
    """

    quiver: SymQuiver
    dims: dict = field(hash=False)
    pairing: dict = field(hash=False)
    pairing_inv: dict = field(hash=False)

    @property
    def size(self):
        return sum(self.dims.values())

    def vertex_block(self, v):
        """The diagonal Gram block for ``v`` (the full hyperbolic block for pairs)."""
        k = self.quiver.kind(v)
        if k is VertexKind.GLPAIR:
            return hyperbolic(self.dims[v])
        return self.pairing[v]

    def matrix(self):
        """Assembled block-diagonal form in canonical vertex order."""
        blocks = []
        done = set()
        for v in self.quiver.canonical_order():
            if v in done:
                continue
            done.add(v)
            done.add(self.quiver.sigma(v))
            blocks.append(self.vertex_block(v))
        return block_diag(*blocks) if blocks else Matrix([], 0, 0)


def gram_matrix(q, alpha):
    alpha = validate_dimension(q, alpha)
    pairing = {}
    pairing_inv = {}
    for v, k in q.vertices:
        n = alpha[v]
        if k is VertexKind.SYMPLECTIC:
            pairing[v] = standard_symplectic(n)
            pairing_inv[v] = -pairing[v]
        else:
            pairing[v] = Matrix.identity(n)
            pairing_inv[v] = pairing[v]
    return FormAssignment(q, alpha, pairing, pairing_inv)
