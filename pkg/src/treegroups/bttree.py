"""The Bruhat-Tits tree of the projective linear group over Q_p.

Vertices are homothety classes of rank-2 Z_p-lattices.  Every class has a
unique column-Hermite representative spanned by the columns of
[[p^n, u], [0, 1]], so a vertex is the pair (level n, offset u) with n an
integer and u a rational with p-power denominator, reduced mod p^n (digits at
exponents below n only, representative in [0, p^n)).  The base vertex is
(0, 0), the class of the standard lattice.

The tree is (p+1)-regular.  Neighbors of (n, u) are the p "children"
(n+1, u + c*p^n) for c = 0..p-1 and the "parent" (n-1, u mod p^(n-1)); the
edge labels 0 < 1 < ... < p-1 < infinity (stored as the int p) order the
edges at every vertex, independently of any group element, which makes path
comparison a genuine well-order.

All vertex-level computation (distance, geodesics, balls) is exact integer
arithmetic; truncated p-adics enter only through the matrix action, which
renormalizes g * [[p^n, u], [0, 1]] back to Hermite form.            """

from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionExhausted
from .treeaction import TreeAction, TreePath


@dataclass(frozen=True)
class Vertex:
    """Lattice class in normal form.  Build via BruhatTitsTree.vertex()."""

    level: int
    offset: Fraction

    def __str__(self):
        return f"({self.level}, {self.offset})"


def _vp_fraction(x, p):
    """Exact p-adic valuation of a nonzero Fraction."""
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _truncate_fraction(u, n, p):
    """Digits of the rational u at exponents < n: canonical rep mod p^n Z_p."""
    if u == 0:
        return Fraction(0)
    k = 0
    den = u.denominator
    while den % p == 0:
        den //= p
        k += 1
    if n + k <= 0:
        return Fraction(0)
    mod = p ** (n + k)
    m = (u.numerator * pow(den, -1, mod)) % mod
    return Fraction(m, p**k)


class BruhatTitsTree(TreeAction):
    """The (p+1)-regular tree with the projective-matrix action."""

    PARENT = None  # set per instance: the label p plays the role of infinity

    def __init__(self, ctx):
        self.ctx = ctx
        self.p = ctx.p
        self.PARENT = ctx.p
        self._base = Vertex(0, Fraction(0))

    # -- vertices -----------------------------------------------------------

    @property
    def base_vertex(self):
        return self._base

    def vertex(self, level, offset=0):
        """Canonical vertex: offset is truncated mod p^level.

        Accepts any int/Fraction/rational-string offset; the prime-to-p part
        of the denominator is absorbed by modular inversion.
        """
        if isinstance(offset, str):
            offset = Fraction(offset)
        offset = Fraction(offset)
        return Vertex(level, _truncate_fraction(offset, level, self.p))

    def offset_digit(self, u, i):
        """Base-p digit of the offset u at exponent i."""
        num, den = u.numerator, u.denominator
        k = 0
        while den % self.p == 0:
            den //= self.p
            k += 1
        assert den == 1, "offset must have p-power denominator"
        if i + k < 0:
            return 0
        return (num // self.p ** (i + k)) % self.p

    def label_str(self, label):
        return "inf" if label == self.PARENT else str(label)

    def neighbors(self, v):
        """The p+1 adjacent vertices as (label, vertex), label-ordered."""
        p = self.p
        out = [
            (c, Vertex(v.level + 1, v.offset + c * Fraction(p) ** v.level))
            for c in range(p)
        ]
        out.append(
            (p, Vertex(v.level - 1, _truncate_fraction(v.offset, v.level - 1, p)))
        )
        return out

    # -- metric ------------------------------------------------------------

    def meet_level(self, v, w):
        """Level of the deepest common ancestor in the digit coordinates."""
        if v.offset == w.offset:
            return min(v.level, w.level)
        return min(v.level, w.level, _vp_fraction(v.offset - w.offset, self.p))

    def distance(self, v, w):
        m = self.meet_level(v, w)
        return (v.level - m) + (w.level - m)

    def path(self, v, w):
        """The geodesic, by closed form: ascend to the meet, then append the
        base-p digits of w's offset."""
        p = self.p
        m = self.meet_level(v, w)
        labels, vertices = [], [v]
        cur = v
        for lvl in range(v.level - 1, m - 1, -1):
            cur = Vertex(lvl, _truncate_fraction(cur.offset, lvl, p))
            labels.append(self.PARENT)
            vertices.append(cur)
        off = cur.offset
        for lvl in range(m, w.level):
            c = self.offset_digit(w.offset, lvl)
            off = off + c * Fraction(p) ** lvl
            cur = Vertex(lvl + 1, off)
            labels.append(c)
            vertices.append(cur)
        assert cur == w
        return TreePath(v, labels, vertices)

    def path_by_descent(self, v, w):
        """The geodesic, by greedy descent: at each vertex take the unique
        neighbor strictly closer to w.  O(d * p); self-verifying against
        distance()."""
        labels, vertices = [], [v]
        cur, d = v, self.distance(v, w)
        while cur != w:
            for label, nb in self.neighbors(cur):
                if self.distance(nb, w) == d - 1:
                    cur, d = nb, d - 1
                    labels.append(label)
                    vertices.append(nb)
                    break
            else:
                raise AssertionError("no neighbor decreased the distance")
        return TreePath(v, labels, vertices)

    def base_labels(self, v):
        # geodesic from (0,0): ascend to the meet level, then read digits
        m = self.meet_level(self._base, v)
        labels = [self.PARENT] * (-m)
        labels.extend(self.offset_digit(v.offset, i) for i in range(m, v.level))
        return tuple(labels)

    # -- group structure ------------------------------------------------------

    def act(self, g, v):
        """Hermite renormalization of g * [[p^n, u], [0, 1]].

        Only valuations of the bottom row and one entry quotient are needed:
        with N = g * M_v triangularized to [[A', B'], [0, D']] by column
        operations over Z_p, the new level is v(det N) - 2 v(D') and the new
        offset is the truncation of B'/D' below it.  Branching on which
        bottom-row entry clears never requires the modified top entry, so no
        cancellation-prone subtraction occurs here.
        """
        ctx = self.ctx
        pn = ctx.embed(Fraction(self.p) ** v.level)
        u = ctx.embed(v.offset)
        A = g.a * pn
        C = g.c * pn
        B = g.a * u + g.b
        D = g.c * u + g.d
        vdet = g.det_valuation + v.level

        if C.is_zero and D.is_zero:
            raise PrecisionExhausted("bottom row vanishes to precision")
        if C.is_zero:
            if not _zero_certified(C, D.valuation()):
                raise PrecisionExhausted("cannot certify bottom-left entry")
            q, w = B, D
        elif D.is_zero:
            if not _zero_certified(D, C.valuation()):
                raise PrecisionExhausted("cannot certify bottom-right entry")
            q, w = A, C
        elif C.valuation() <= D.valuation():
            q, w = A, C
        else:
            q, w = B, D

        level = vdet - 2 * w.valuation()
        offset = (q / w).truncate_below(level)
        return Vertex(level, offset)

    def compose(self, g, h):
        return g * h

    def inverse(self, g):
        return g.inverse()

    def identity(self):
        from .projlinear import ProjMatrix

        return ProjMatrix.identity(self.ctx)

    def is_identity(self, g):
        return g.is_identity()

    def equal(self, g, h):
        return g.proj_equal(h)

    # -- enumeration and export ---------------------------------------------

    def ball(self, radius, center=None):
        """Vertices within the radius, in deterministic BFS order."""
        center = center or self._base
        seen = {center}
        order = [center]
        frontier = [center]
        for _ in range(radius):
            nxt = []
            for v in frontier:
                for _, nb in self.neighbors(v):
                    if nb not in seen:
                        seen.add(nb)
                        order.append(nb)
                        nxt.append(nb)
            frontier = nxt
        return order

    def to_dot(self, radius, highlight=()):
        """Graphviz source for the ball around the base vertex.

        highlight is a collection of vertices to fill (e.g. the fundamental
        domain representatives inside the ball).
        """
        highlight = set(highlight)
        verts = self.ball(radius)
        inball = set(verts)
        lines = [
            "graph bttree {",
            '  node [shape=circle, fontsize=10];',
        ]
        for v in verts:
            attrs = [f'label="{v}"']
            if v in highlight:
                attrs.append('style=filled')
                attrs.append('fillcolor=lightblue')
            lines.append(f'  "{v}" [{", ".join(attrs)}];')
        for v in verts:
            for label, nb in self.neighbors(v):
                if nb in inball and (v.level, v.offset) < (nb.level, nb.offset):
                    lines.append(
                        f'  "{v}" -- "{nb}" [label="{self.label_str(label)}"];'
                    )
        lines.append("}")
        return "\n".join(lines) + "\n"


def _zero_certified(z, needed_valuation):
    """A zero-to-precision entry may be treated as exactly zero in the
    Hermite branch only when its absolute bound reaches the other pivot's
    valuation; exact zeros always qualify."""
    m = z.zero_bound
    return m is None or m >= needed_valuation
