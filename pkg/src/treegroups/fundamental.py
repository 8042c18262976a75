"""Fundamental domains for purely hyperbolic groups and membership.

A strongly reduced basis X gives the group a fundamental domain
D = {w : [v0, w] < [v0, x w] for every x in X^+-}, where < compares
geodesics from the base vertex by length and then label sequence.  Every
orbit meets D in exactly one vertex, and steepest descent on the path order
(repeatedly apply any x that shortens/lowers the base path) lands there in
finitely many steps.  Constructive membership falls out: feed g v0 through
the descent; g lies in the group iff the descent word recovers g itself.

The per-generator picture is the classical one: each x acts along its axis
by translation length l(x), v0 projects to an anchor on the axis, and the
descent condition cuts out the slab of vertices whose axis projection lands
within l/2 of the anchor, half-open at the boundary.  The positions are
kept doubled so the slab boundary is an integer even when l is odd; the
closed end of the slab is the one whose boundary point has the smaller
base path.  These diagnostics are exposed for testing and inspection; the
path-order predicate above is what the algorithms run on.
"""

from dataclasses import dataclass

from .cayley import concat, invert_word, reduce_word
from .errors import EllipticEncountered, NotHyperbolic, PreconditionViolated
from .nielsen import ReductionOutcome, is_strongly_reduced, reduce
from .treeaction import LESS, CheckResult


@dataclass(frozen=True)
class AxisSegment:
    """One translation period of an axis: the geodesic from an on-axis
    vertex a to g a.  Every carrier vertex realizes the minimal
    displacement."""

    carrier: object
    length: int

    @property
    def vertices(self):
        return self.carrier.vertices


def axis_window(action, g):
    l = action.translation_length(g)
    if l == 0:
        raise NotHyperbolic("translation length is zero")
    a = project_to_axis(action, g, action.base_vertex)
    return AxisSegment(action.path(a, action.act(g, a)), l)


def project_to_axis(action, g, w):
    """Nearest axis vertex to w: the midpoint overshoot of [w, g w]."""
    l = action.translation_length(g)
    if l == 0:
        raise NotHyperbolic("translation length is zero")
    pth = action.path(w, action.act(g, w))
    return pth.vertices[(len(pth) - l) // 2]


def axis_position(action, g, w):
    """Doubled signed axis coordinate of w's projection.

    The anchor (projection of the base vertex) sits at 0; g moves a
    projection at position t to t + 2 l(g).  Positive direction is toward
    g a.
    """
    l = action.translation_length(g)
    if l == 0:
        raise NotHyperbolic("translation length is zero")
    a = project_to_axis(action, g, action.base_vertex)
    y = project_to_axis(action, g, w)
    t = action.distance(a, y)
    if t == 0:
        return 0
    ga = action.act(g, a)
    toward = action.distance(y, ga) == abs(t - l)
    return 2 * t if toward else -2 * t


def core_boundary_sign(action, g):
    """Which end of the slab around the anchor is closed: +1 for the g a
    side, -1 for the other.

    The two candidate boundary points differ first at the anchor, so the
    comparison reduces to the labels of the two axis edges leaving it.
    """
    a = project_to_axis(action, g, action.base_vertex)
    fwd = action.path(a, action.act(g, a)).vertices[1]
    bwd = action.path(a, action.act(action.inverse(g), a)).vertices[1]
    kf = action.base_labels(fwd)
    kb = action.base_labels(bwd)
    assert len(kf) == len(kb) and kf != kb
    return 1 if kf < kb else -1


def in_core_interval(action, g, w):
    """Slab membership by coordinates: |pos| < l, or |pos| = l on the
    closed end.  Agrees with the path-order descent condition for the
    cyclic group generated by g."""
    l = action.translation_length(g)
    pos = axis_position(action, g, w)
    if abs(pos) != l:
        return abs(pos) < l
    return core_boundary_sign(action, g) == (1 if pos > 0 else -1)


def admits_fundamental_system(action, elements):
    """Whether [v0, h v0] < [v0, g h v0] across all signed pairs.

    The input must already be inverse-free and purely hyperbolic;
    violations raise PreconditionViolated rather than returning False,
    since the condition is only meaningful past them.
    """
    if not action.check_n1(elements):
        raise PreconditionViolated("generating set contains an inverse pair")
    for x in elements:
        if action.is_nontrivial_elliptic(x):
            raise PreconditionViolated("generating set contains an elliptic")
    signed = action.signed_elements(elements)
    base = action.base_vertex
    paths = [(i, s, g, action.base_path(action.act(g, base))) for i, s, g in signed]
    for i, si, g, _ in paths:
        for j, sj, h, ph in paths:
            if i == j and si == -sj:
                continue
            pgh = action.base_path(action.act(action.compose(g, h), base))
            if action.compare_paths(ph, pgh) != LESS:
                return CheckResult(False, (g, h))
    return CheckResult(True)


def in_fundamental_domain(action, elements, w, verify=True):
    """Whether w is its orbit's canonical representative."""
    if verify and not is_strongly_reduced(action, elements):
        raise PreconditionViolated("basis is not strongly reduced")
    pw = action.base_path(w)
    for _, _, x in action.signed_elements(elements):
        px = action.base_path(action.act(x, w))
        if action.compare_paths(pw, px) != LESS:
            return False
    return True


def to_fundamental_domain(action, elements, w, verify=True):
    """Descend w to its orbit representative.

    Returns (representative, word); the word is over 1-based signed basis
    indices and satisfies  evaluate_word(action, elements, word) . w ==
    representative.
    """
    if verify and not is_strongly_reduced(action, elements):
        raise PreconditionViolated("basis is not strongly reduced")
    word = ()
    cur = w
    pcur = action.base_path(cur)
    while True:
        for i, s, x in action.signed_elements(elements):
            nxt = action.act(x, cur)
            pnxt = action.base_path(nxt)
            if action.compare_paths(pnxt, pcur) == LESS:
                word = concat((s * (i + 1),), word)
                cur, pcur = nxt, pnxt
                break
        else:
            return cur, word


@dataclass
class MembershipResult:
    """Outcome of a constructive membership query.

    basis_word expresses g over the reduced basis, input_word over the
    caller's original generators; both None when g is not a member.
    reduction carries the basis so repeated queries can reuse it.
    """

    member: bool
    basis_word: object
    input_word: object
    reduction: ReductionOutcome

    def __bool__(self):
        return self.member


def membership(action, generators, g, reduction=None):
    """Decide g in <generators> and express g over them when it is.

    reduction may be passed in to amortize the basis computation across
    queries; it must be the ReductionOutcome for the same generators.
    Raises EllipticEncountered (from the reduction) when the generated
    group is not purely hyperbolic.
    """
    if reduction is None:
        reduction = reduce(action, generators)
    if not reduction.is_free_basis:
        raise EllipticEncountered(
            "generating set is not purely hyperbolic; membership undecided"
        )
    basis = reduction.elements
    rep, word = to_fundamental_domain(
        action, basis, action.act(g, action.base_vertex), verify=False
    )
    if rep != action.base_vertex:
        return MembershipResult(False, None, None, reduction)
    h = _evaluate_basis_word(action, basis, word)
    if not action.equal(g, action.inverse(h)):
        return MembershipResult(False, None, None, reduction)
    basis_word = invert_word(word)
    input_word = _substitute(reduction.basis, basis_word)
    return MembershipResult(True, basis_word, input_word, reduction)


def _evaluate_basis_word(action, basis, word):
    out = action.identity()
    for a in word:
        x = basis[abs(a) - 1]
        out = action.compose(out, x if a > 0 else action.inverse(x))
    return out


def _substitute(tracked, word):
    """Rewrite a word over the reduced basis as a word over the input."""
    out = []
    for a in word:
        t = tracked[abs(a) - 1].word
        out.extend(t if a > 0 else invert_word(t))
    return reduce_word(out)
