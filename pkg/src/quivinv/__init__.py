"""Invariants of representations of symmetric quivers.

Trace-word generators for orthogonal, symplectic and general linear
isotropy groups, a brute-force oracle to check them, polarized pfaffians
for SO versus O, and local models of moduli of orthogonal bundles.
"""

from .errors import QuivInvError, TooLarge, UnsupportedConfiguration
from .evaluate import act, evaluate_word, invariance_report, random_group_element, random_representation
from .local_model import DecompositionSpec, SummandSpec, local_model_report, make_spec
from .oracle import check_spanning, fft_check, lie_invariant_dim, span_dim
from .pfaffian_so import PfaffianContext, generic_degree_report, pfaffian_functional, so_extension_check
from .quiver import SymQuiver, VertexKind, build_doubled, gram_matrix, validate_dimension
from .words import TraceWord, canonicalize, enumerate_cycles, generators

__version__ = "0.1.0"
