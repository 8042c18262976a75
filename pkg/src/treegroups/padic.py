"""Truncated p-adic arithmetic with fail-fast precision tracking.

A nonzero element is stored in relative form p^v * u where v is the exact
valuation and u is a unit known modulo p^prec, 1 <= prec <= context precision.
The value it stands for is p^v * u + O(p^(v + prec)).

Exact cancellation produces a distinguished zero-to-precision state: no
valuation, no unit, only an absolute bound O(p^m) (m = None marks an exact
zero coming from an exact embedding).  Asking such an element for its
valuation, or for digits the bound cannot certify, raises PrecisionExhausted
rather than guessing.  This is the contract the tree layer relies on: every
reported valuation is exact.

All objects are immutable; sharing them across threads is safe.
"""

from fractions import Fraction

from .errors import ContextMismatch, DivisionByZero, PrecisionExhausted


def _is_prime(n):
    # deterministic Miller-Rabin, good far beyond any sensible residue prime
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PadicContext:
    """Residue prime plus working precision; the factory for PAdic values."""

    __slots__ = ("p", "precision", "modulus")

    def __init__(self, p, precision=1000):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if precision < 1:
            raise ValueError("precision must be >= 1")
        self.p = p
        self.precision = precision
        self.modulus = p**precision

    def __eq__(self, other):
        if not isinstance(other, PadicContext):
            return NotImplemented
        return self.p == other.p and self.precision == other.precision

    def __hash__(self):
        return hash((self.p, self.precision))

    def __repr__(self):
        return f"PadicContext(p={self.p}, precision={self.precision})"

    # -- constructors --------------------------------------------------

    def zero(self):
        return PAdic(self, None, None, 0, zero_bound=None)

    def one(self):
        return PAdic(self, 0, 1, self.precision)

    def from_valuation_unit(self, v, unit):
        """Element p^v * unit; unit must be coprime to p."""
        unit %= self.modulus
        if unit == 0 or unit % self.p == 0:
            raise ValueError("unit must be coprime to p")
        return PAdic(self, v, unit, self.precision)

    def embed(self, x):
        """Embed an int, Fraction, or rational string at full precision."""
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, int):
            x = Fraction(x)
        if not isinstance(x, Fraction):
            raise TypeError(f"cannot embed {type(x).__name__}")
        if x == 0:
            return self.zero()
        v = 0
        num, den = x.numerator, x.denominator
        while num % self.p == 0:
            num //= self.p
            v += 1
        while den % self.p == 0:
            den //= self.p
            v -= 1
        unit = num * pow(den, -1, self.modulus) % self.modulus
        return PAdic(self, v, unit, self.precision)


class PAdic:
    """One truncated p-adic number, immutable.

    Do not call the constructor directly; use the PadicContext factories.
    """

    __slots__ = ("ctx", "_v", "_u", "_prec", "_zbound")

    def __init__(self, ctx, v, u, prec, zero_bound=0):
        self.ctx = ctx
        self._v = v
        self._u = u
        self._prec = prec
        # only meaningful when _u is None: value is O(p^_zbound), None = exact 0
        self._zbound = zero_bound

    # -- state ----------------------------------------------------------

    @property
    def is_zero(self):
        """True when the element is zero to the carried precision."""
        return self._u is None

    @property
    def precision(self):
        """Number of significant base-p digits carried (0 for zero states)."""
        return self._prec

    @property
    def zero_bound(self):
        """For a zero state: the element is O(p^bound); None marks exact zero.

        Only meaningful when is_zero holds.
        """
        if self._u is not None:
            raise ValueError("zero_bound of a nonzero element")
        return self._zbound

    def valuation(self):
        if self._u is None:
            raise PrecisionExhausted("valuation of a zero-to-precision element")
        return self._v

    def unit_part(self):
        """The unit u with self = p^v * u + O(p^(v+prec))."""
        if self._u is None:
            raise PrecisionExhausted("unit of a zero-to-precision element")
        return self._u

    def _check_ctx(self, other):
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PAdic):
            return NotImplemented
        self._check_ctx(other)
        p = self.ctx.p
        a, b = self, other
        if a._u is None or b._u is None:
            if a._u is not None:
                a, b = b, a
            # a is a zero state
            if b._u is None:
                if a._zbound is None:
                    return b
                if b._zbound is None:
                    return a
                return PAdic(self.ctx, None, None, 0, zero_bound=min(a._zbound, b._zbound))
            if a._zbound is None:
                return b
            abs_b = min(a._zbound, b._v + b._prec)
            if abs_b <= b._v:
                return PAdic(self.ctx, None, None, 0, zero_bound=abs_b)
            prec = abs_b - b._v
            return PAdic(self.ctx, b._v, b._u % p**prec, prec)
        v = min(a._v, b._v)
        digits = min(a._v + a._prec, b._v + b._prec) - v
        mod = p**digits
        s = (a._u * p ** (a._v - v) + b._u * p ** (b._v - v)) % mod
        if s == 0:
            return PAdic(self.ctx, None, None, 0, zero_bound=v + digits)
        t = 0
        while s % p == 0:
            s //= p
            t += 1
        return PAdic(self.ctx, v + t, s % p ** (digits - t), digits - t)

    def __neg__(self):
        if self._u is None:
            return self
        p = self.ctx.p
        return PAdic(self.ctx, self._v, (-self._u) % p**self._prec, self._prec)

    def __sub__(self, other):
        if not isinstance(other, PAdic):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PAdic):
            return NotImplemented
        self._check_ctx(other)
        a, b = self, other
        if a._u is None or b._u is None:
            if a._u is not None:
                a, b = b, a
            if a._zbound is None:
                return a  # exact zero absorbs
            if b._u is None:
                if b._zbound is None:
                    return b
                return PAdic(self.ctx, None, None, 0, zero_bound=a._zbound + b._zbound)
            return PAdic(self.ctx, None, None, 0, zero_bound=a._zbound + b._v)
        prec = min(a._prec, b._prec)
        u = a._u * b._u % self.ctx.p**prec
        return PAdic(self.ctx, a._v + b._v, u, prec)

    def inverse(self):
        if self._u is None:
            raise DivisionByZero("inverse of a zero-to-precision element")
        mod = self.ctx.p**self._prec
        return PAdic(self.ctx, -self._v, pow(self._u, -1, mod), self._prec)

    def __truediv__(self, other):
        if not isinstance(other, PAdic):
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        """Equality to the shared precision: the difference is a zero state."""
        if isinstance(other, (int, Fraction)):
            other = self.ctx.embed(other)
        if not isinstance(other, PAdic):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None  # inexact equality; these are not dict keys

    # -- digit access -----------------------------------------------------

    def truncate_below(self, n):
        """The digits of self at exponents < n, as an exact Fraction.

        Returns the unique rational r = m/p^k with 0 <= m < p^(n+k) and
        v(self - r) >= n.  Raises PrecisionExhausted when the carried digits
        (or, for a zero state, the absolute bound) cannot certify the answer.
        """
        p = self.ctx.p
        if self._u is None:
            if self._zbound is not None and self._zbound < n:
                raise PrecisionExhausted(
                    f"truncation below p^{n} of a zero known only to O(p^{self._zbound})"
                )
            return Fraction(0)
        if self._v >= n:
            return Fraction(0)
        d = n - self._v
        if d > self._prec:
            raise PrecisionExhausted(
                f"need {d} digits below p^{n}, have {self._prec}"
            )
        m = self._u % p**d
        if self._v >= 0:
            return Fraction(m * p**self._v)
        return Fraction(m, p**-self._v)

    def __repr__(self):
        p = self.ctx.p
        if self._u is None:
            if self._zbound is None:
                return "0 (exact)"
            return f"O({p}^{self._zbound})"
        shown = min(self._prec, 6)
        u = self._u % p**shown
        dots = ".." if self._prec > shown else ""
        return f"{p}^{self._v}*{u}{dots} + O({p}^{self._v + self._prec})"
