"""Closed walks in the doubled quiver, i.e. trace-word invariants.

A word ``(s_1, ..., s_p)`` lists steps in the order they are traversed;
its invariant is ``tr(f_{s_p} ... f_{s_1})``.  Two words give the same
function up to sign when they differ by a rotation, or by reversing the
word and toggling every star (the trace is invariant under adjunction).
"""

from collections import namedtuple

from .errors import NotComposable
from .quiver import build_doubled, validate_dimension

SignedArrow = namedtuple("SignedArrow", ["arrow", "star"])


class TraceWord(tuple):
    """Nonempty cyclic sequence of :class:`SignedArrow` steps."""

    def __new__(cls, steps):
        steps = tuple(SignedArrow(a, bool(s)) for a, s in steps)
        if not steps:
            raise ValueError("a trace word needs at least one step")
        return super().__new__(cls, steps)

    def __repr__(self):
        return "TraceWord(" + " ".join(a + ("*" if s else "") for a, s in self) + ")"

    def rotations(self):
        return [TraceWord(self[i:] + self[:i]) for i in range(len(self))]

    def adjoint_reversal(self):
        return TraceWord((a, not s) for a, s in reversed(self))

    def to_json(self):
        return [{"arrow": a, "star": s} for a, s in self]

    @classmethod
    def from_json(cls, items):
        return cls((d["arrow"], d["star"]) for d in items)


def is_composable(w, dq):
    for i, (a, s) in enumerate(w):
        _, dst = dq.step_ends(a, s)
        b, t = w[(i + 1) % len(w)]
        src, _ = dq.step_ends(b, t)
        if dst != src:
            return False
    return True


def _key(w):
    return tuple((a, s) for a, s in w)


def canonicalize(w, dq=None):
    """Lexicographically least rotation of ``w`` or of its adjoint reversal."""
    w = TraceWord(w)
    if dq is not None and not is_composable(w, dq):
        raise NotComposable(f"{w!r} is not a closed walk")
    candidates = w.rotations() + w.adjoint_reversal().rotations()
    return min(candidates, key=_key)


def enumerate_cycles(dq, max_len):
    """All closed walks of length ``<= max_len`` up to canonical equivalence.

    Ordered by length, then by canonical form.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    out_steps = {}
    for aid, star, src, dst in dq.steps():
        out_steps.setdefault(src, []).append((aid, star, dst))
    found = set()

    def extend(start, here, path):
        for aid, star, dst in out_steps.get(here, ()):
            path.append((aid, star))
            if dst == start:
                found.add(canonicalize(path))
            if len(path) < max_len:
                extend(start, dst, path)
            path.pop()

    for v in dq.base.vertex_ids:
        extend(v, v, [])
    return sorted(found, key=lambda w: (len(w), _key(w)))


def generators(q, alpha, max_degree, seed=0, forms=None):
    """Trace words of length ``<= max_degree`` that do not vanish at ``alpha``.

    Vanishing is tested by evaluating at a random representation with large
    entries; a zero there is confirmed on a second independent sample.
    """
    from .evaluate import evaluate_word, random_representation
    from .quiver import gram_matrix

    alpha = validate_dimension(q, alpha)
    dq = build_doubled(q)
    forms = forms or gram_matrix(q, alpha)
    words = enumerate_cycles(dq, max_degree) if q.arrows else []
    keep = []
    for i, w in enumerate(words):
        for attempt in range(2):
            rho = random_representation(q, alpha, seed, "zero-test", i, attempt, bound=10**6)
            if evaluate_word(w, rho, forms, dq) != 0:
                keep.append(w)
                break
    return keep
