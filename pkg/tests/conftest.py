"""Shared oracles and samplers.

The oracles recompute library answers by a different route: dense exact
linear algebra over Fraction and digit-at-a-time truncation, instead of the
valuation bookkeeping the library does.  Agreement between the two is what
the randomized tests assert.
"""

import random
from fractions import Fraction

import pytest

from treegroups import BruhatTitsTree, PadicContext, ProjMatrix


def fraction_vp(x, p):
    assert x != 0
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def truncate_oracle(x, n, p):
    """Digits of x at exponents below n, one digit at a time."""
    x = Fraction(x)
    total = Fraction(0)
    if x == 0:
        return total
    i = min(fraction_vp(x, p), n)
    rem = x
    while i < n and rem != 0:
        scaled = rem / Fraction(p) ** i
        digit = scaled.numerator * pow(scaled.denominator, -1, p) % p
        total += digit * Fraction(p) ** i
        rem -= digit * Fraction(p) ** i
        i += 1
    return total


def mat2_mul(A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return (
        (a * e + b * g, a * f + b * h),
        (c * e + d * g, c * f + d * h),
    )


def mat2_inv(A):
    (a, b), (c, d) = A
    det = a * d - b * c
    assert det != 0
    return ((d / det, -b / det), (-c / det, a / det))


def lattice_matrix(p, v):
    return ((Fraction(p) ** v.level, Fraction(v.offset)), (Fraction(0), Fraction(1)))


def snf_distance(p, v, w):
    """Tree distance via elementary divisors of the change of basis."""
    M = mat2_mul(mat2_inv(lattice_matrix(p, v)), lattice_matrix(p, w))
    entries = [e for row in M for e in row if e != 0]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    return fraction_vp(det, p) - 2 * min(fraction_vp(e, p) for e in entries)


def hermite_vertex(p, rows, v):
    """Exact column reduction of rows * M_v down to (level, offset).

    rows must be exact rationals with nonzero determinant.
    """
    rows = tuple(tuple(Fraction(e) for e in row) for row in rows)
    (A, B), (C, D) = mat2_mul(rows, lattice_matrix(p, v))
    if C != 0 and (D == 0 or fraction_vp(C, p) <= fraction_vp(D, p)):
        A, B, C, D = B, A, D, C
    # now 0 < |D|_p maximal on the bottom row; clear C over Z_p
    A = A - (C / D) * B
    n = fraction_vp(A, p) - fraction_vp(D, p)
    return n, truncate_oracle(B / D, n, p)


def random_vertex(rng, p, span=5, depth=6):
    n = rng.randint(-span, span)
    u = Fraction(0)
    for i in range(n - depth, n):
        u += rng.randrange(p) * Fraction(p) ** i
    return n, truncate_oracle(u, n, p)


def random_rational(rng, p, span=3):
    num = rng.randint(-20, 20)
    if num == 0:
        return Fraction(0)
    den = rng.randint(1, 12)
    return Fraction(num, den) * Fraction(p) ** rng.randint(-span, span)


def random_rational_matrix(rng, p, span=3):
    while True:
        rows = (
            (random_rational(rng, p, span), random_rational(rng, p, span)),
            (random_rational(rng, p, span), random_rational(rng, p, span)),
        )
        if rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0] != 0:
            return rows


def random_exact_sl2(rng, p, span=3):
    """Determinant-1 rational matrix, entries spread over p-valuations."""
    while True:
        a = random_rational(rng, p, span)
        b = random_rational(rng, p, span)
        c = random_rational(rng, p, span)
        if a == 0:
            continue
        d = (1 + b * c) / a
        return ((a, b), (c, d))


@pytest.fixture(params=[2, 3, 5], ids=lambda p: f"p{p}")
def prime(request):
    return request.param


@pytest.fixture
def ctx(prime):
    return PadicContext(prime, 60)


@pytest.fixture
def tree(ctx):
    return BruhatTitsTree(ctx)


def embed_matrix(ctx, rows):
    return ProjMatrix.from_rationals(ctx, rows)
