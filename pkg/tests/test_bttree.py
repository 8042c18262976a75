"""Vertex arithmetic on the Bruhat-Tits tree against exact-Fraction oracles."""

import random
from fractions import Fraction

import pytest

from treegroups import BruhatTitsTree, PadicContext, PrecisionExhausted, ProjMatrix

from conftest import (
    embed_matrix,
    hermite_vertex,
    random_rational_matrix,
    random_vertex,
    snf_distance,
    truncate_oracle,
)


# -- vertex normal form -----------------------------------------------------


def test_vertex_normalization():
    t2 = BruhatTitsTree(PadicContext(2, 40))
    assert t2.vertex(1, 3) == t2.vertex(1, 1)
    assert t2.vertex(2, -1) == t2.vertex(2, 3)
    # 1/3 is a 2-adic unit, so it has no digits below exponent 0
    assert t2.vertex(0, Fraction(1, 3)) == t2.base_vertex
    assert t2.vertex(0, "8/3") == t2.base_vertex
    assert t2.vertex(-1, Fraction(7, 4)) == t2.vertex(-1, Fraction(1, 4))


def test_vertex_offset_matches_digit_oracle(tree, prime):
    rng = random.Random(13)
    for _ in range(200):
        n = rng.randint(-5, 5)
        u = Fraction(rng.randint(-400, 400), prime ** rng.randint(0, 3))
        assert tree.vertex(n, u).offset == truncate_oracle(u, n, prime)


def test_offset_digits_reassemble(tree, prime):
    rng = random.Random(14)
    for _ in range(100):
        v = tree.vertex(*random_vertex(rng, prime))
        lo = v.level - 10
        total = sum(
            tree.offset_digit(v.offset, i) * Fraction(prime) ** i
            for i in range(lo, v.level)
        )
        assert total == v.offset


def test_neighbors_frozen_p2():
    t2 = BruhatTitsTree(PadicContext(2, 40))
    got = t2.neighbors(t2.base_vertex)
    assert got == [
        (0, t2.vertex(1, 0)),
        (1, t2.vertex(1, 1)),
        (2, t2.vertex(-1, 0)),
    ]
    assert t2.label_str(2) == "inf"
    assert t2.label_str(0) == "0"


def test_neighbors_are_at_distance_one(tree, prime):
    rng = random.Random(15)
    for _ in range(40):
        v = tree.vertex(*random_vertex(rng, prime))
        nbs = tree.neighbors(v)
        assert len(nbs) == prime + 1
        assert len({w for _, w in nbs}) == prime + 1
        for _, w in nbs:
            assert tree.distance(v, w) == 1


# -- metric -------------------------------------------------------------------

FROZEN_DISTANCES = [
    (2, (3, Fraction(7, 4)), (-2, Fraction(0)), 5),
    (2, (3, Fraction(7, 4)), (3, Fraction(3, 4)), 6),
    (3, (2, Fraction(5)), (2, Fraction(8)), 2),
    (5, (1, Fraction(3)), (4, Fraction(128)), 3),
    (5, (-2, Fraction(1, 25)), (2, Fraction(11, 25)), 4),
]


@pytest.mark.parametrize("p,a,b,want", FROZEN_DISTANCES)
def test_distance_frozen(p, a, b, want):
    t = BruhatTitsTree(PadicContext(p, 40))
    va, vb = t.vertex(*a), t.vertex(*b)
    assert t.distance(va, vb) == want
    assert t.distance(vb, va) == want


def test_distance_matches_elementary_divisors(tree, prime):
    rng = random.Random(16)
    for _ in range(300):
        v = tree.vertex(*random_vertex(rng, prime))
        w = tree.vertex(*random_vertex(rng, prime))
        assert tree.distance(v, w) == snf_distance(prime, v, w)


def test_metric_axioms(tree, prime):
    rng = random.Random(17)
    pts = [tree.vertex(*random_vertex(rng, prime)) for _ in range(12)]
    for v in pts:
        assert tree.distance(v, v) == 0
    for v in pts:
        for w in pts:
            for x in pts:
                assert tree.distance(v, w) <= tree.distance(v, x) + tree.distance(x, w)


def test_four_point_condition(tree, prime):
    # of the three pairings, the two largest sums agree on a tree
    rng = random.Random(18)
    for _ in range(100):
        a, b, c, d = (tree.vertex(*random_vertex(rng, prime)) for _ in range(4))
        s = sorted(
            [
                tree.distance(a, b) + tree.distance(c, d),
                tree.distance(a, c) + tree.distance(b, d),
                tree.distance(a, d) + tree.distance(b, c),
            ]
        )
        assert s[1] == s[2]


# -- geodesics ----------------------------------------------------------------


def test_path_endpoints_and_length(tree, prime):
    rng = random.Random(19)
    for _ in range(100):
        v = tree.vertex(*random_vertex(rng, prime))
        w = tree.vertex(*random_vertex(rng, prime))
        pth = tree.path(v, w)
        assert pth.vertices[0] == v
        assert pth.endpoint == w
        assert len(pth) == tree.distance(v, w)
        assert len(pth.vertices) == len(pth) + 1


def test_path_closed_form_equals_descent(tree, prime):
    rng = random.Random(20)
    for _ in range(60):
        v = tree.vertex(*random_vertex(rng, prime))
        w = tree.vertex(*random_vertex(rng, prime))
        assert tree.path(v, w) == tree.path_by_descent(v, w)


def test_base_labels_match_path(tree, prime):
    rng = random.Random(21)
    for _ in range(60):
        v = tree.vertex(*random_vertex(rng, prime))
        assert tree.base_labels(v) == tuple(tree.path(tree.base_vertex, v).labels)


# -- matrix action ------------------------------------------------------------

FROZEN_ACTS = [
    (2, ((2, 3), (1, 4)), (1, 1), (1, 1)),
    (2, ((0, 1), (1, 0)), (3, 5), (3, 5)),  # this Weyl element fixes (3, 5)
    (3, ((3, 1), (0, 1)), (0, 0), (1, 1)),
    (3, ((1, 2), (3, "1/3")), (-1, Fraction(2, 3)), (0, 0)),
    (5, ((5, 0), (0, 1)), (0, 0), (1, 0)),
    (5, ((9, -4), (8, -3)), (2, 17), (3, 3)),
    (5, (("1/5", 2), (3, 4)), (1, 3), (0, Fraction(1, 5))),
]


@pytest.mark.parametrize("p,rows,vin,vout", FROZEN_ACTS)
def test_act_frozen(p, rows, vin, vout):
    t = BruhatTitsTree(PadicContext(p, 40))
    g = ProjMatrix.from_rationals(t.ctx, rows)
    assert t.act(g, t.vertex(*vin)) == t.vertex(*vout)


def test_act_matches_hermite_oracle(tree, prime):
    rng = random.Random(22)
    for _ in range(150):
        rows = random_rational_matrix(rng, prime)
        v = tree.vertex(*random_vertex(rng, prime))
        n, u = hermite_vertex(prime, rows, v)
        assert tree.act(embed_matrix(tree.ctx, rows), v) == tree.vertex(n, u)


def test_action_is_isometric(tree, prime):
    rng = random.Random(23)
    for _ in range(80):
        g = embed_matrix(tree.ctx, random_rational_matrix(rng, prime))
        v = tree.vertex(*random_vertex(rng, prime))
        w = tree.vertex(*random_vertex(rng, prime))
        assert tree.distance(tree.act(g, v), tree.act(g, w)) == tree.distance(v, w)


def test_action_is_homomorphism(tree, prime):
    rng = random.Random(24)
    for _ in range(80):
        g = embed_matrix(tree.ctx, random_rational_matrix(rng, prime))
        h = embed_matrix(tree.ctx, random_rational_matrix(rng, prime))
        v = tree.vertex(*random_vertex(rng, prime))
        assert tree.act(tree.compose(g, h), v) == tree.act(g, tree.act(h, v))
        assert tree.act(tree.inverse(g), tree.act(g, v)) == v


def test_identity_fixes_everything(tree, prime):
    rng = random.Random(25)
    e = tree.identity()
    for _ in range(20):
        v = tree.vertex(*random_vertex(rng, prime))
        assert tree.act(e, v) == v


def test_act_scaling_invariant(tree, prime):
    from treegroups.projlinear import scaled

    rng = random.Random(26)
    for _ in range(40):
        g = embed_matrix(tree.ctx, random_rational_matrix(rng, prime))
        v = tree.vertex(*random_vertex(rng, prime))
        assert tree.act(scaled(g, tree.ctx.embed(prime)), v) == tree.act(g, v)


# -- precision failure modes --------------------------------------------------


def test_act_runs_out_of_offset_digits():
    # the image offset needs 6 digits of 55 but the context only carries 2
    ctx = PadicContext(5, 2)
    t = BruhatTitsTree(ctx)
    g = ProjMatrix.from_rationals(ctx, ((5, 0), (0, 1)))
    with pytest.raises(PrecisionExhausted):
        t.act(g, t.vertex(6, 11))
    # the same act succeeds once the context is deep enough
    ctx2 = PadicContext(5, 12)
    t2 = BruhatTitsTree(ctx2)
    g2 = ProjMatrix.from_rationals(ctx2, ((5, 0), (0, 1)))
    assert t2.act(g2, t2.vertex(6, 11)) == t2.vertex(7, 55)


def test_act_cannot_certify_vanishing_entry():
    # c vanishes to O(5^6) while d has valuation 7: the bound cannot rule out
    # a bottom-left entry of smaller valuation, so the branch must refuse
    ctx = PadicContext(5, 6)
    one = ctx.embed(1)
    c = one - one
    assert c.is_zero and c.zero_bound == 6
    g = ProjMatrix(ctx, one, ctx.embed(25), c, ctx.embed(5 ** 7))
    with pytest.raises(PrecisionExhausted):
        t = BruhatTitsTree(ctx)
        t.act(g, t.base_vertex)


def test_act_certified_zero_entry_succeeds():
    # same shape but d has valuation below the bound: certification passes
    ctx = PadicContext(5, 6)
    one = ctx.embed(1)
    c = one - one
    g = ProjMatrix(ctx, one, ctx.embed(25), c, ctx.embed(5 ** 3))
    t = BruhatTitsTree(ctx)
    assert t.act(g, t.base_vertex) == t.vertex(-3, Fraction(25, 5 ** 3))


def test_act_bottom_row_vanishes():
    # c is invisible and v(d) reaches its bound, so both bottom entries of
    # g * M_v are unknown, while v(a d) < v(b c)-bound keeps det visible
    ctx = PadicContext(5, 6)
    z = ctx.embed(1) - ctx.embed(1)
    g = ProjMatrix(ctx, ctx.embed(1), ctx.embed(5), z, ctx.embed(5 ** 6))
    assert g.det_valuation == 6
    t = BruhatTitsTree(ctx)
    with pytest.raises(PrecisionExhausted):
        t.act(g, t.vertex(1, 3))


# -- enumeration and export ---------------------------------------------------


def test_ball_sizes(tree, prime):
    # 1 + (p+1) (p^r - 1)/(p - 1) vertices in the radius-r ball
    for r in range(4):
        want = 1 + (prime + 1) * (prime ** r - 1) // (prime - 1)
        ball = tree.ball(r)
        assert len(ball) == want
        assert len(set(ball)) == want
        assert all(tree.distance(tree.base_vertex, v) <= r for v in ball)


def test_ball_is_deterministic(tree):
    assert tree.ball(3) == tree.ball(3)


def test_ball_other_center(tree, prime):
    c = tree.vertex(2, 1)
    ball = tree.ball(2, center=c)
    assert ball[0] == c
    assert all(tree.distance(c, v) <= 2 for v in ball)


def test_to_dot_structure():
    t = BruhatTitsTree(PadicContext(2, 40))
    dot = t.to_dot(3, highlight=[t.base_vertex])
    assert dot.startswith("graph bttree {")
    assert dot.rstrip().endswith("}")
    # 22 vertices, and edges within the ball form a tree: 21
    assert dot.count("[label=") == 22 + 21
    assert dot.count(" -- ") == 21
    assert dot.count("fillcolor=lightblue") == 1
    assert '"(0, 0)"' in dot
    # edges are emitted from the parent side, so labels are child digits
    assert 'label="0"' in dot and 'label="inf"' not in dot
