"""Numerical shadow of the local structure of the moduli of orthogonal bundles.

A polystable point is described by its summands ``F_i (x) V_i``: the kind
of stable bundle ``F_i``, its rank and the dimension of the multiplicity
space ``V_i``.  From this we build the Ext-quiver, the summands of
``H^1(C, Ad P)``, and, in the cases where the isotropy group is finite or a
one-dimensional torus, the Hilbert series of the invariant ring, its
multiplicity and embedding (tangent) dimension.

All bundles have degree 0 and distinct summands have no homomorphisms
between them, so Riemann-Roch gives ``dim Ext^1(F, G) = rk F rk G (g-1)``
plus one when ``F = G``.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .errors import InvalidSpec, UnsupportedConfiguration
from .quiver import Arrow, SymQuiver, VertexKind

ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"
PAIR = "pair"
KINDS = (ORTHOGONAL, SYMPLECTIC, PAIR)
_KIND_ALIASES = {
    "orthogonal": ORTHOGONAL,
    "orthogonalstable": ORTHOGONAL,
    "symplectic": SYMPLECTIC,
    "symplecticstable": SYMPLECTIC,
    "pair": PAIR,
    "nonselfdualpair": PAIR,
    "hyperbolic": PAIR,
}


@dataclass(frozen=True)
class SummandSpec:
    kind: str
    rank: int
    mult: int = 1

    @property
    def self_dual(self):
        return self.kind != PAIR

    @property
    def bundle_rank(self):
        """Rank of ``F`` (or ``F + F*`` for a pair) before tensoring with ``V``."""
        return 2 * self.rank if self.kind == PAIR else self.rank


@dataclass(frozen=True)
class DecompositionSpec:
    genus: int
    summands: tuple
    flavor: str = ORTHOGONAL

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 2:
            raise InvalidSpec(f"genus must be an integer >= 2, got {self.genus!r}")
        if self.flavor not in (ORTHOGONAL, SYMPLECTIC):
            raise InvalidSpec(f"unknown flavor {self.flavor!r}")
        if not self.summands:
            raise InvalidSpec("need at least one summand")
        for s in self.summands:
            if s.kind not in KINDS:
                raise InvalidSpec(f"unknown summand kind {s.kind!r}")
            if not isinstance(s.rank, int) or s.rank < 1:
                raise InvalidSpec("bundle ranks must be positive integers")
            if not isinstance(s.mult, int) or s.mult < 1:
                raise InvalidSpec("multiplicity spaces must have positive dimension")
            if s.kind == SYMPLECTIC and s.rank % 2:
                raise InvalidSpec("a symplectic bundle has even rank")
            if vertex_kind(self, s) is VertexKind.SYMPLECTIC and s.mult % 2:
                raise InvalidSpec(f"multiplicity space of a {s.kind} summand is symplectic, needs even dimension")

    @property
    def total_rank(self):
        return sum(s.bundle_rank * s.mult for s in self.summands)

    @classmethod
    def from_dict(cls, d):
        try:
            summands = []
            for s in d["summands"]:
                kind = _KIND_ALIASES.get(str(s["kind"]).lower().replace("_", "").replace("-", ""))
                if kind is None:
                    raise InvalidSpec(f"unknown summand kind {s['kind']!r}")
                summands.append(SummandSpec(kind, s["rank"], s.get("mult", 1)))
            return cls(d["genus"], tuple(summands), d.get("flavor", ORTHOGONAL))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidSpec(f"bad spec: {exc}") from exc

    def to_dict(self):
        return {
            "genus": self.genus,
            "flavor": self.flavor,
            "summands": [{"kind": s.kind, "rank": s.rank, "mult": s.mult} for s in self.summands],
        }


def load_spec(path):
    try:
        with open(path) as fh:
            d = json.load(fh)
    except OSError as exc:
        raise InvalidSpec(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"not valid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise InvalidSpec("spec must be a JSON object")
    return DecompositionSpec.from_dict(d)


def make_spec(genus, ranks, kind=ORTHOGONAL, mults=None, flavor=ORTHOGONAL):
    mults = mults or [1] * len(ranks)
    return DecompositionSpec(genus, tuple(SummandSpec(kind, r, m) for r, m in zip(ranks, mults)), flavor)


def vertex_kind(spec, s):
    """Class of the multiplicity space.

    In the orthogonal flavor an orthogonal bundle pairs with a quadratic
    space and a symplectic bundle with a symplectic space; the symplectic
    flavor exchanges the two.
    """
    if s.kind == PAIR:
        return VertexKind.GLPAIR
    same = (s.kind == ORTHOGONAL) == (spec.flavor == ORTHOGONAL)
    return VertexKind.ORTHOGONAL if same else VertexKind.SYMPLECTIC


# -- dimensions -------------------------------------------------------------


def s2(n):
    return n * (n + 1) // 2


def l2(n):
    return n * (n - 1) // 2


def form_split(g, s):
    """``h^1(S^2 F*)`` and ``h^1(Lambda^2 F*)`` for the stable bundle ``F`` of ``s``.

    The self-dual form of ``F`` contributes one section to ``S^2`` (orthogonal)
    or ``Lambda^2`` (symplectic); a non self-dual ``F`` has none.  For pairs,
    the values for ``F`` and ``F*`` coincide.
    """
    r = s.rank
    h1_s2 = s2(r) * (g - 1)
    h1_l2 = l2(r) * (g - 1)
    if s.kind == ORTHOGONAL:
        h1_s2 += 1
    elif s.kind == SYMPLECTIC:
        h1_l2 += 1
    return {"S2": h1_s2, "L2": h1_l2}


@dataclass(frozen=True)
class LocalVertex:
    id: str
    summand: int
    dual: bool
    rank: int
    mult: int


def local_vertices(spec):
    out = []
    for i, s in enumerate(spec.summands):
        if s.kind == PAIR:
            out.append(LocalVertex(f"s{i}", i, False, s.rank, s.mult))
            out.append(LocalVertex(f"s{i}*", i, True, s.rank, s.mult))
        else:
            out.append(LocalVertex(f"s{i}", i, False, s.rank, s.mult))
    return out


def ext_dimensions(spec):
    """``dim Ext^1`` between all stable pieces, plus form splits of self-paired ones."""
    g = spec.genus
    verts = local_vertices(spec)
    matrix = [[vi.rank * vj.rank * (g - 1) + (vi == vj) for vj in verts] for vi in verts]
    splits = {f"s{i}": form_split(g, s) for i, s in enumerate(spec.summands)}
    return {"vertices": [v.id for v in verts], "ext_matrix": matrix, "form_splits": splits}


def build_local_quiver(spec):
    """Ext-quiver with dimension vector given by the multiplicity spaces."""
    ext = ext_dimensions(spec)
    verts = local_vertices(spec)
    vertices = tuple((v.id, vertex_kind(spec, spec.summands[v.summand])) for v in verts)
    pairs = tuple((f"s{i}", f"s{i}*") for i, s in enumerate(spec.summands) if s.kind == PAIR)
    arrows = []
    for a, va in enumerate(verts):
        for b, vb in enumerate(verts):
            for k in range(ext["ext_matrix"][a][b]):
                arrows.append(Arrow(f"{va.id}>{vb.id}#{k}", va.id, vb.id))
    q = SymQuiver(vertices, tuple(arrows), pairs)
    alpha = {v.id: v.mult for v in verts}
    return q, alpha


def _sym_alt(spec, s):
    """Dimensions of ``S^2 V*`` and ``Lambda^2 V*`` for the multiplicity space of ``s``."""
    return s2(s.mult), l2(s.mult)


def diagonal_summands(spec, i, flavor=None):
    """Labelled pieces of the diagonal block of ``s_i`` inside ``H^1(C, Ad P)``."""
    g = spec.genus
    s = spec.summands[i]
    fs = form_split(g, s)
    sym_v, alt_v = _sym_alt(spec, s)
    # adjoint bundle is Lambda^2 E* (orthogonal) or S^2 E* (symplectic)
    orth = (flavor or spec.flavor) == ORTHOGONAL
    if s.kind != PAIR:
        if orth:
            return [
                ("H1(S2 F*) x L2 V*", fs["S2"], alt_v),
                ("H1(L2 F*) x S2 V*", fs["L2"], sym_v),
            ]
        return [
            ("H1(L2 F*) x L2 V*", fs["L2"], alt_v),
            ("H1(S2 F*) x S2 V*", fs["S2"], sym_v),
        ]
    ext_ff = s.rank * s.rank * (g - 1) + 1
    a_, b_ = ("S2", "L2") if orth else ("L2", "S2")
    return [
        ("Ext1(F,F) x gl(V)", ext_ff, s.mult * s.mult),
        (f"H1({a_} F*) x L2 V*", fs[a_], alt_v),
        (f"H1({b_} F*) x S2 V*", fs[b_], sym_v),
        (f"H1({a_} F) x L2 V*", fs[a_], alt_v),
        (f"H1({b_} F) x S2 V*", fs[b_], sym_v),
    ]


def h1ad_inventory(spec, flavor=None):
    """Summands of ``H^1(C, Ad P)`` with their dimensions, and two cross-checks.

    ``riemann_roch`` recomputes the total from ``rank(ad) (g-1) + dim aut``;
    the complementary inventory (``flavor`` overridden to the other
    adjoint type) together with this one fills ``Ext^1(E, E)`` as counted
    by the Ext-quiver.
    """
    flavor = flavor or spec.flavor
    items = []
    for i, s in enumerate(spec.summands):
        for label, h1, vdim in diagonal_summands(spec, i, flavor):
            items.append({"block": f"s{i}", "label": label, "h1": h1, "tensor": vdim, "dim": h1 * vdim})
    g = spec.genus
    for i, j in combinations(range(len(spec.summands)), 2):
        si, sj = spec.summands[i], spec.summands[j]
        d = si.bundle_rank * si.mult * sj.bundle_rank * sj.mult * (g - 1)
        items.append({"block": f"s{i},s{j}", "label": "Ext1(E_i,E_j)", "h1": d, "tensor": 1, "dim": d})
    total = sum(x["dim"] for x in items)
    return {"flavor": flavor, "summands": items, "total": total}


def isotropy_dim(spec):
    out = 0
    for s in spec.summands:
        k = vertex_kind(spec, s)
        if k is VertexKind.ORTHOGONAL:
            out += l2(s.mult)
        elif k is VertexKind.SYMPLECTIC:
            out += s2(s.mult)
        else:
            out += s.mult * s.mult
    return out


def riemann_roch_total(spec):
    r = spec.total_rank
    adj = l2(r) if spec.flavor == ORTHOGONAL else s2(r)
    return adj * (spec.genus - 1) + isotropy_dim(spec)


def quiver_ext_total(spec):
    q, alpha = build_local_quiver(spec)
    return sum(alpha[a.src] * alpha[a.dst] for a in q.arrows)


def inventory_cross_check(spec):
    inv = h1ad_inventory(spec)["total"]
    other = SYMPLECTIC if spec.flavor == ORTHOGONAL else ORTHOGONAL
    complement = h1ad_inventory(spec, other)["total"]
    ext_total = quiver_ext_total(spec)
    return {
        "inventory_total": inv,
        "riemann_roch_total": riemann_roch_total(spec),
        "complement_total": complement,
        "quiver_ext_total": ext_total,
        "riemann_roch_ok": inv == riemann_roch_total(spec),
        "quiver_ok": inv + complement == ext_total,
    }


# -- Hilbert series ---------------------------------------------------------


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_pow(a, k):
    out = [1]
    for _ in range(k):
        out = _poly_mul(out, a)
    return out


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / ((1 - t)^a (1 - t^2)^b)`` with exact coefficients."""

    numerator: tuple
    a: int
    b: int

    def coefficients(self, n):
        """First ``n`` coefficients of the power series expansion."""
        series = list(self.numerator[:n]) + [0] * max(0, n - len(self.numerator))
        for _ in range(self.a):
            for i in range(1, n):
                series[i] += series[i - 1]
        for _ in range(self.b):
            for i in range(2, n):
                series[i] += series[i - 2]
        return [_as_int(x) for x in series]

    def multiplicity(self):
        """``lim_{t -> 1} (1 - t)^a (1 - t^2)^b H(t)``, i.e. ``numerator(1)``."""
        return _as_int(sum(self.numerator))

    def is_even(self):
        return all(x == 0 for x in self.numerator[1::2])

    def regraded(self):
        """Give the ``(1 - t^2)`` generators degree one: ``t^2 -> t`` on that factor.

        Only defined when the numerator is even and ``a == 0``; combine
        with a separate ``(1 - t)`` factor via ``with_free``.
        """
        if not self.is_even():
            raise UnsupportedConfiguration("numerator has odd terms; regrading is not defined")
        return HilbertSeries(tuple(self.numerator[0::2]), self.a + self.b, 0)

    def with_free(self, k):
        """Multiply by ``1 / (1 - t)^k`` (a polynomial factor in ``k`` variables)."""
        return HilbertSeries(self.numerator, self.a + k, self.b)

    def to_json(self):
        return {
            "numerator": [str(Fraction(x)) for x in self.numerator],
            "one_minus_t_power": self.a,
            "one_minus_t2_power": self.b,
        }


def _as_int(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def molien_sign_group(n_factors, characters):
    """Molien series of ``(Z/2)^n`` acting diagonally.

    ``characters`` lists, per coordinate, the subset of factors whose
    product is the character (e.g. ``(i, j)`` for ``eps_i eps_j``).
    Returns a :class:`HilbertSeries` over ``(1 - t^2)^d``.
    """
    d = len(characters)
    total = [0] * (d + 1)
    for signs in product((1, -1), repeat=n_factors):
        minus = 0
        for ch in characters:
            v = 1
            for i in ch:
                v *= signs[i]
            minus += v == -1
        # 1 / ((1 - t)^(d - k) (1 + t)^k) = (1 + t)^(d - k) (1 - t)^k / (1 - t^2)^d
        term = _poly_mul(_poly_pow([1, 1], d - minus), _poly_pow([1, -1], minus))
        for i, c in enumerate(term):
            total[i] += c
    order = 2 ** n_factors
    return HilbertSeries(tuple(_trim([Fraction(c, order) for c in total])), 0, d)


def segre_series(a, b):
    """Series of the cone over ``P^(a-1) x P^(b-1)`` in the grading where ``x_i y_j`` has degree 2."""
    if a == 0 or b == 0:
        return HilbertSeries((1,), 0, 0)
    dim = a + b - 1
    n = dim + max(a, b) + 2
    coeffs = [0] * (2 * n)
    for k in range(n):
        coeffs[2 * k] = comb(k + a - 1, a - 1) * comb(k + b - 1, b - 1)
    num = _poly_mul(coeffs, _poly_pow([1, 0, -1], dim))[: 2 * n]
    return HilbertSeries(tuple(_trim(num)), 0, dim)


def _stable_case(spec):
    """True for a stable point: every summand self-dual, quadratic ``V`` of dimension 1."""
    return all(s.kind != PAIR and s.mult == 1 and vertex_kind(spec, s) is VertexKind.ORTHOGONAL
               for s in spec.summands)


def _pair_case(spec):
    return len(spec.summands) == 1 and spec.summands[0].kind == PAIR and spec.summands[0].mult == 1


def _diag_total(spec):
    return sum(x["dim"] for x in h1ad_inventory(spec)["summands"] if "," not in x["block"])


def _offdiag_dims(spec):
    g = spec.genus
    return {
        (i, j): spec.summands[i].rank * spec.summands[j].rank * (g - 1)
        for i, j in combinations(range(len(spec.summands)), 2)
    }


def _segre_dims(spec):
    s = spec.summands[0]
    fs = form_split(spec.genus, s)
    key = "L2" if spec.flavor == ORTHOGONAL else "S2"
    return fs[key], fs[key], s.rank * s.rank * (spec.genus - 1) + 1


def hilbert_series(spec):
    """Hilbert series of ``k[H^1(C, Ad P)]`` invariants under the isotropy group.

    Stable points: ``(Z/2)^n`` acting by ``eps_i eps_j`` on ``Ext^1(E_i, E_j)``.
    Single pair with one-dimensional ``V``: the torus acts with weights
    ``-2, +2`` on the two ``H^1(Lambda^2)`` pieces, leaving a Segre cone.
    """
    if _stable_case(spec):
        off = _offdiag_dims(spec)
        chars = [pair for pair, d in off.items() for _ in range(d)]
        return molien_sign_group(len(spec.summands), chars).with_free(_diag_total(spec))
    if _pair_case(spec):
        a, b, free = _segre_dims(spec)
        return segre_series(a, b).with_free(free)
    raise UnsupportedConfiguration(
        "Hilbert series is only computed for stable points and single hyperbolic pairs"
    )


def multiplicity(spec):
    if _stable_case(spec):
        off = _offdiag_dims(spec)
        chars = [pair for pair, d in off.items() for _ in range(d)]
        return molien_sign_group(len(spec.summands), chars).multiplicity()
    if _pair_case(spec):
        a, b, _ = _segre_dims(spec)
        return segre_series(a, b).multiplicity()
    raise UnsupportedConfiguration("multiplicity is only certified for stable points and single pairs")


def closed_form_multiplicity(spec):
    """The closed forms for two, three and four stable summands."""
    if not _stable_case(spec):
        raise UnsupportedConfiguration("closed forms only cover stable points")
    n = len(spec.summands)
    prefactor = {1: None, 2: 1, 3: 2, 4: 8}.get(n)
    if n == 1:
        return 1
    if prefactor is None:
        raise UnsupportedConfiguration("no closed form beyond four summands")
    out = prefactor
    for d in _offdiag_dims(spec).values():
        out *= 2 ** (d - 1)
    return out


def _simple_cycles(n):
    """Simple cycles of length >= 3 in the complete graph on ``n`` vertices, as edge tuples."""
    out = []
    for k in range(3, n + 1):
        for subset in combinations(range(n), k):
            first, rest = subset[0], subset[1:]
            seen = set()
            from itertools import permutations

            for perm in permutations(rest):
                if perm[0] > perm[-1] or perm in seen:
                    continue
                seen.add(perm)
                cyc = (first,) + perm
                out.append(tuple(tuple(sorted((cyc[t], cyc[(t + 1) % k]))) for t in range(k)))
    return out


def tangent_dim(spec):
    """Embedding dimension of the invariant ring at the origin.

    For stable points the invariant monomials are generated by ``y y'``
    inside one block and by products along simple cycles of blocks.
    """
    if _stable_case(spec):
        off = _offdiag_dims(spec)
        out = _diag_total(spec) + sum(s2(d) for d in off.values())
        for cyc in _simple_cycles(len(spec.summands)):
            prod_ = 1
            for e in cyc:
                prod_ *= off[e]
            out += prod_
        return out
    if _pair_case(spec):
        a, b, free = _segre_dims(spec)
        return free + a * b
    raise UnsupportedConfiguration("tangent dimension is only computed for stable points and single pairs")


def corollary_tangent_dim(spec):
    """Two stable summands: ``h^1(L2 E1*) + h^1(L2 E2*) + dim S^2 Ext^1(E1, E2)``."""
    if not _stable_case(spec) or len(spec.summands) != 2:
        raise UnsupportedConfiguration("the closed tangent formula needs two stable summands")
    g = spec.genus
    fs = [form_split(g, s) for s in spec.summands]
    key = "L2" if spec.flavor == ORTHOGONAL else "S2"
    d = spec.summands[0].rank * spec.summands[1].rank * (g - 1)
    return fs[0][key] + fs[1][key] + s2(d)


def regraded_t_coefficient(spec):
    """Degree-one coefficient after giving even-degree generators degree one."""
    if _stable_case(spec):
        off = _offdiag_dims(spec)
        chars = [pair for pair, d in off.items() for _ in range(d)]
        hb = molien_sign_group(len(spec.summands), chars)
        return hb.regraded().with_free(_diag_total(spec)).coefficients(2)[1]
    if _pair_case(spec):
        a, b, free = _segre_dims(spec)
        return segre_series(a, b).regraded().with_free(free).coefficients(2)[1]
    raise UnsupportedConfiguration("regrading needs a stable point or a single pair")


def fiber_cardinality(spec):
    """Preimages in the SO moduli of the point: 2 iff every orthogonal summand has even rank."""
    if spec.flavor != ORTHOGONAL:
        raise InvalidSpec("fiber cardinality is defined for the orthogonal flavor")
    if spec.total_rank % 2:
        return 1
    if all(s.rank % 2 == 0 for s in spec.summands if s.kind == ORTHOGONAL):
        return 2
    return 1


# -- report -----------------------------------------------------------------


@dataclass
class LocalModelReport:
    spec: dict
    ext_matrix: dict
    h1ad_summands: dict
    cross_check: dict
    tangent_dim: object = None
    hilbert_series: object = None
    multiplicity: object = None
    fiber_cardinality: object = None
    provenance: dict = field(default_factory=dict)
    unsupported: list = field(default_factory=list)

    def to_json(self):
        return {
            "spec": self.spec,
            "ext": self.ext_matrix,
            "h1ad": self.h1ad_summands,
            "cross_check": self.cross_check,
            "tangent_dim": self.tangent_dim,
            "hilbert_series": self.hilbert_series,
            "multiplicity": self.multiplicity,
            "fiber_cardinality": self.fiber_cardinality,
            "provenance": self.provenance,
            "unsupported": self.unsupported,
        }


def local_model_report(spec):
    """Everything computable for ``spec``; unsupported fields are left ``None``.

    ``provenance`` marks values with a closed form stated by the source as
    ``paper`` and everything else as ``derived``.
    """
    report = LocalModelReport(
        spec.to_dict(),
        ext_dimensions(spec),
        h1ad_inventory(spec),
        inventory_cross_check(spec),
    )
    prov = report.provenance
    prov["ext"] = prov["h1ad"] = "derived"
    n = len(spec.summands)
    try:
        hs = hilbert_series(spec)
        report.hilbert_series = hs.to_json()
        report.hilbert_series["first_coefficients"] = [str(c) for c in hs.coefficients(8)]
        prov["hilbert_series"] = "derived"
    except UnsupportedConfiguration as exc:
        report.unsupported.append(f"hilbert_series: {exc}")
    try:
        report.multiplicity = multiplicity(spec)
        if _stable_case(spec) and spec.flavor == ORTHOGONAL and 2 <= n <= 4:
            report.cross_check["closed_form_multiplicity"] = closed_form_multiplicity(spec)
            prov["multiplicity"] = "paper"
        else:
            prov["multiplicity"] = "derived"
    except UnsupportedConfiguration as exc:
        report.unsupported.append(f"multiplicity: {exc}")
    try:
        report.tangent_dim = tangent_dim(spec)
        prov["tangent_dim"] = "paper" if (_stable_case(spec) and n == 2 and spec.flavor == ORTHOGONAL) else "derived"
        if _stable_case(spec) and n == 2:
            report.cross_check["corollary_tangent_dim"] = corollary_tangent_dim(spec)
            report.cross_check["regraded_t_coefficient"] = regraded_t_coefficient(spec)
    except UnsupportedConfiguration as exc:
        report.unsupported.append(f"tangent_dim: {exc}")
    if spec.flavor == ORTHOGONAL:
        report.fiber_cardinality = fiber_cardinality(spec)
        prov["fiber_cardinality"] = "paper"
    return report
