"""Deciding freeness and membership for groups acting on trees.

The two shipped actions are the free group on its Cayley tree (exact, used
as the reference oracle) and the projective matrix group over Q_p on its
(p+1)-regular tree.  On top of either: strong basis reduction with tracked
rewriting words, pure-hyperbolicity certification, fundamental domains, and
constructive membership.
"""

from .bttree import BruhatTitsTree, Vertex
from .cayley import (
    CayleyTree,
    StallingsGraph,
    concat,
    invert_word,
    reduce_word,
    scramble,
)
from .errors import (
    ContextMismatch,
    DegenerateMatrix,
    DivisionByZero,
    EllipticEncountered,
    NotHyperbolic,
    OriginMismatch,
    PrecisionExhausted,
    PreconditionViolated,
    TreeGroupsError,
)
from .fundamental import (
    AxisSegment,
    MembershipResult,
    admits_fundamental_system,
    axis_position,
    axis_window,
    in_core_interval,
    in_fundamental_domain,
    membership,
    project_to_axis,
    to_fundamental_domain,
)
from .nielsen import (
    ReductionFlag,
    ReductionOutcome,
    TrackedGen,
    evaluate_word,
    groups_equal,
    is_strongly_reduced,
    reduce,
)
from .padic import PAdic, PadicContext
from .projlinear import ProjMatrix
from .treeaction import (
    GREATER,
    LESS,
    SAME,
    CheckResult,
    TreeAction,
    TreePath,
    compare_paths,
)

__all__ = [
    "BruhatTitsTree",
    "Vertex",
    "CayleyTree",
    "StallingsGraph",
    "concat",
    "invert_word",
    "reduce_word",
    "scramble",
    "ContextMismatch",
    "DegenerateMatrix",
    "DivisionByZero",
    "EllipticEncountered",
    "NotHyperbolic",
    "OriginMismatch",
    "PrecisionExhausted",
    "PreconditionViolated",
    "TreeGroupsError",
    "AxisSegment",
    "MembershipResult",
    "admits_fundamental_system",
    "axis_position",
    "axis_window",
    "in_core_interval",
    "in_fundamental_domain",
    "membership",
    "project_to_axis",
    "to_fundamental_domain",
    "ReductionFlag",
    "ReductionOutcome",
    "TrackedGen",
    "evaluate_word",
    "groups_equal",
    "is_strongly_reduced",
    "reduce",
    "PAdic",
    "PadicContext",
    "ProjMatrix",
    "GREATER",
    "LESS",
    "SAME",
    "CheckResult",
    "TreeAction",
    "TreePath",
    "compare_paths",
    "__version__",
]

__version__ = "0.1.0"
