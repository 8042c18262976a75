"""2x2 projective matrices over truncated p-adics.

Elements of the projective linear group are stored as any matrix
representative; every predicate and derived quantity is scale-invariant, so
no canonical scaling is ever chosen.  Inverses use the adjugate (projectively
equal to the true inverse, and free of divisions that would cost precision).
"""

from .errors import DegenerateMatrix, PrecisionExhausted


class ProjMatrix:
    """One projective matrix [[a, b], [c, d]] with PAdic entries.

    The determinant must not vanish to precision; its exact valuation is
    cached at construction (it is the one determinant fact the tree action
    needs, and computing it once keeps act() subtraction-free).
    """

    __slots__ = ("ctx", "a", "b", "c", "d", "det_valuation")

    def __init__(self, ctx, a, b, c, d):
        self.ctx = ctx
        self.a, self.b, self.c, self.d = a, b, c, d
        det = a * d - b * c
        if det.is_zero:
            raise DegenerateMatrix("determinant vanishes to precision")
        self.det_valuation = det.valuation()

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rationals(cls, ctx, rows):
        """Build from a 2x2 nest of ints, Fractions, or rational strings."""
        (a, b), (c, d) = rows
        return cls(ctx, ctx.embed(a), ctx.embed(b), ctx.embed(c), ctx.embed(d))

    @classmethod
    def identity(cls, ctx):
        return cls.from_rationals(ctx, ((1, 0), (0, 1)))

    # -- group structure -------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return ProjMatrix(
            self.ctx, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h
        )

    def inverse(self):
        """Adjugate: projectively the inverse, no division."""
        return ProjMatrix(self.ctx, self.d, -self.b, -self.c, self.a)

    def is_identity(self):
        """True when the matrix is a scalar, to precision."""
        return self.b.is_zero and self.c.is_zero and (self.a - self.d).is_zero

    def proj_equal(self, other):
        return (other.inverse() * self).is_identity()

    # -- diagnostics --------------------------------------------------------

    def translation_length_by_valuation(self):
        """max(0, v(det) - 2 v(trace)), scale-invariant.

        Zero for elliptics (including edge inversions, whose trace vanishes),
        and the exact minimal displacement for hyperbolics.  When the trace
        is zero only to precision and that bound cannot certify the clamp,
        raises PrecisionExhausted instead of guessing.
        """
        tr = self.a + self.d
        if tr.is_zero:
            m = tr.zero_bound
            if m is None or self.det_valuation - 2 * m <= 0:
                return 0
            raise PrecisionExhausted(
                "trace vanishes to O(p^%d); translation length unresolved" % m
            )
        return max(0, self.det_valuation - 2 * tr.valuation())

    def entries(self):
        return ((self.a, self.b), (self.c, self.d))

    def __repr__(self):
        return f"ProjMatrix[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def scaled(g, factor):
    """The same projective element with every entry multiplied by factor."""
    return ProjMatrix(
        g.ctx, g.a * factor, g.b * factor, g.c * factor, g.d * factor
    )
