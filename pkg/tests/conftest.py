import os

from hypothesis import HealthCheck, settings

from quivinv.quiver import SymQuiver

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def make_quiver(vertices, arrows=(), pairs=()):
    """``vertices``: (id, class) pairs; ``arrows``: (id, src, dst) triples."""
    return SymQuiver.from_dict({
        "vertices": [{"id": v, "class": c} for v, c in vertices],
        "arrows": [{"id": a, "src": s, "dst": d} for a, s, d in arrows],
        "pairs": [list(p) for p in pairs],
    })
