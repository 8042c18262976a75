"""Projective matrix layer: construction, scale invariance, valuation data."""

import random

import pytest

from treegroups import DegenerateMatrix, PadicContext, PrecisionExhausted, ProjMatrix
from treegroups.projlinear import scaled

from conftest import random_exact_sl2

CTX = PadicContext(5, 40)


def mat(rows, ctx=CTX):
    return ProjMatrix.from_rationals(ctx, rows)


# translation lengths by valuation: v(det) - 2 v(trace), clamped at 0
KNOWN_LENGTHS = [
    (((5, 0), (0, 1)), 1),
    (((25, 0), (0, 1)), 2),
    ((("1/5", 0), (0, 5)), 2),  # det 1, trace valuation -1
    (((0, 1), (5, 0)), 0),  # edge inversion, exact zero trace
    (((0, 1), (1, 0)), 0),
    (((1, 1), (0, 1)), 0),  # unipotent
    (((9, -4), (8, -3)), 1),  # conjugate of diag(5, 1)
]


@pytest.mark.parametrize("rows,length", KNOWN_LENGTHS)
def test_translation_length_by_valuation(rows, length):
    assert mat(rows).translation_length_by_valuation() == length


def test_degenerate_exact():
    with pytest.raises(DegenerateMatrix):
        mat(((1, 2), (2, 4)))


def test_degenerate_to_precision():
    # determinant 5^6 is invisible at precision 4
    ctx = PadicContext(5, 4)
    with pytest.raises(DegenerateMatrix):
        ProjMatrix.from_rationals(ctx, ((1, 1), (1, 1 + 5 ** 6)))
    # visible at precision 8
    g = ProjMatrix.from_rationals(PadicContext(5, 8), ((1, 1), (1, 1 + 5 ** 6)))
    assert g.det_valuation == 6


def test_identity_and_scalars():
    assert ProjMatrix.identity(CTX).is_identity()
    assert mat(((3, 0), (0, 3))).is_identity()
    assert mat(((5, 0), (0, 5))).is_identity()
    assert not mat(((5, 0), (0, 1))).is_identity()


def test_proj_equal_ignores_scaling():
    g = mat(((9, -4), (8, -3)))
    assert g.proj_equal(scaled(g, CTX.embed(7)))
    # scaling by p shifts every entry valuation but not the element
    assert g.proj_equal(scaled(g, CTX.embed(5)))
    assert not g.proj_equal(mat(((5, 0), (0, 1))))


def test_scaling_preserves_translation_length():
    g = mat(((5, 0), (0, 1)))
    assert scaled(g, CTX.embed(25)).translation_length_by_valuation() == 1
    assert scaled(g, CTX.embed("1/5")).translation_length_by_valuation() == 1


def test_inverse_is_adjugate():
    g = mat(((9, -4), (8, -3)))
    assert (g * g.inverse()).is_identity()
    assert (g.inverse() * g).is_identity()


def test_det_valuation_multiplicative():
    rng = random.Random(0)
    for _ in range(50):
        g = mat(random_exact_sl2(rng, 5))
        h = mat(random_exact_sl2(rng, 5))
        assert (g * h).det_valuation == g.det_valuation + h.det_valuation


def test_translation_length_conjugation_invariant():
    rng = random.Random(1)
    for _ in range(100):
        g = mat(random_exact_sl2(rng, 5))
        c = mat(random_exact_sl2(rng, 5))
        l = g.translation_length_by_valuation()
        assert (c * g * c.inverse()).translation_length_by_valuation() == l
        assert g.inverse().translation_length_by_valuation() == l


def test_zero_trace_within_precision_is_elliptic():
    # trace cancels exactly but the truncated difference only carries a bound;
    # the clamp certifies length 0 because v(det) stays below twice the bound
    ctx = PadicContext(5, 8)
    g = ProjMatrix.from_rationals(ctx, ((1, 1), (1, -1)))
    tr = g.a + g.d
    assert tr.is_zero and tr.zero_bound is not None
    assert g.translation_length_by_valuation() == 0


def test_uncertifiable_trace_raises():
    # unreachable through the public constructors (a visible determinant
    # bounds its valuation under twice any trace bound), so force the state
    ctx = PadicContext(5, 8)
    g = ProjMatrix.from_rationals(ctx, ((1, 1), (1, -1)))
    g.det_valuation = 17
    with pytest.raises(PrecisionExhausted):
        g.translation_length_by_valuation()


def test_repr_mentions_entries():
    text = repr(mat(((5, 0), (0, 1))))
    assert text.startswith("ProjMatrix")
    assert "5" in text
