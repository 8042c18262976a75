"""Free groups acting on their Cayley trees.

This backend is exact and fast, which makes it the reference oracle for
everything the truncated p-adic backend computes: words over a free basis
x_1..x_k are vertices of the 2k-regular tree, the group acts by left
multiplication, and all N-condition / reduction / fundamental-domain code
runs unchanged on top of it.

Words are tuples of nonzero signed ints (+i for x_i, -i for its inverse),
always freely reduced.  Edge labels encode single letters, ordered
x_1 < x_1^-1 < x_2 < ... < x_k^-1.
"""

import random

from .treeaction import TreeAction, TreePath


def reduce_word(letters):
    """Freely reduce, allowing unreduced input."""
    out = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def invert_word(word):
    return tuple(-a for a in reversed(word))


def concat(u, v):
    """Reduced product of two reduced words."""
    u, v = list(u), list(v)
    while u and v and u[-1] == -v[0]:
        u.pop()
        v.pop(0)
    return tuple(u) + tuple(v)


def cyclically_reduce(word):
    """Conjugacy representative; returns (core, conjugator) with
    word = conjugator * core * conjugator^-1."""
    w = list(word)
    pre = []
    while len(w) >= 2 and w[0] == -w[-1]:
        pre.append(w[0])
        w = w[1:-1]
    return tuple(w), tuple(pre)


def _letter_label(a):
    # x_i -> 2(i-1), x_i^-1 -> 2(i-1)+1
    return 2 * (abs(a) - 1) + (1 if a < 0 else 0)


class CayleyTree(TreeAction):
    """The free group of the given rank acting on its own Cayley tree."""

    def __init__(self, rank):
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.rank = rank

    @property
    def base_vertex(self):
        return ()

    def generators(self):
        return [(i,) for i in range(1, self.rank + 1)]

    def _check_word(self, w):
        assert all(a != 0 and abs(a) <= self.rank for a in w)

    def act(self, g, v):
        return concat(g, v)

    def distance(self, v, w):
        return len(concat(invert_word(v), w))

    def path(self, v, w):
        diff = concat(invert_word(v), w)
        labels = []
        vertices = [v]
        cur = v
        for a in diff:
            labels.append(_letter_label(a))
            cur = concat(cur, (a,))
            vertices.append(cur)
        return TreePath(v, labels, vertices)

    def base_labels(self, v):
        return tuple(_letter_label(a) for a in v)

    def compose(self, g, h):
        return concat(g, h)

    def inverse(self, g):
        return invert_word(g)

    def identity(self):
        return ()

    def is_identity(self, g):
        return g == ()

    def equal(self, g, h):
        return g == h


def scramble(basis, seed, steps, max_len=None):
    """Random Nielsen moves applied to a basis of words.

    Each step either inverts one slot or replaces slot i by the reduced
    product with a signed copy of another slot.  The subgroup generated is
    unchanged by construction.  max_len, when given, rejects products that
    would exceed it (keeps scrambles usable at high step counts).
    """
    rng = random.Random(seed)
    basis = [tuple(w) for w in basis]
    n = len(basis)
    if n == 0:
        return basis
    done = 0
    while done < steps:
        kind = rng.randrange(2)
        if kind == 0 or n == 1:
            i = rng.randrange(n)
            basis[i] = invert_word(basis[i])
            done += 1
            continue
        i, j = rng.sample(range(n), 2)
        sign = rng.choice((1, -1))
        other = basis[j] if sign == 1 else invert_word(basis[j])
        side = rng.randrange(2)
        new = concat(basis[i], other) if side == 0 else concat(other, basis[i])
        if new == ():
            continue
        if max_len is not None and len(new) > max_len:
            continue
        basis[i] = new
        done += 1
    return basis


class StallingsGraph:
    """Folded subgroup graph; membership oracle independent of the tree code.

    Loops for the given words are wedged at a base state and folded on the
    fly: whenever a state acquires two equal-label edges their targets are
    merged (union-find), which can cascade.  The result is the unique
    deterministic core graph of the subgroup, plus possibly dead states the
    find() indirection hides.  Edge targets stored in the dicts may be stale
    representatives, so every read goes through find().
    """

    def __init__(self, words, rank):
        self.rank = rank
        self._parent = []
        # edges[state]: signed letter -> state, deterministic per live state
        self._edges = []
        self._base = self._new_state()
        for w in words:
            self._trace(reduce_word(w))

    def _trace(self, word):
        cur = self._base
        for idx, a in enumerate(word):
            cur = self._find(cur)
            if idx == len(word) - 1:
                tgt = self._find(self._base)
            else:
                nxt = self._edges[cur].get(a)
                tgt = self._find(nxt) if nxt is not None else self._new_state()
            self._attach(cur, a, tgt)
            cur = tgt

    def _attach(self, s, a, t):
        """Ensure the paired edges s -a-> t and t -(-a)-> s, folding any
        label conflict this creates."""
        s, t = self._find(s), self._find(t)
        es = self._edges[s]
        if a in es:
            self._merge(self._find(es[a]), t)
            return
        es[a] = t
        et = self._edges[t]
        back = et.get(-a)
        if back is None:
            et[-a] = s
        else:
            self._merge(self._find(back), s)

    def _new_state(self):
        self._parent.append(len(self._parent))
        self._edges.append({})
        return len(self._parent) - 1

    def _find(self, s):
        while self._parent[s] != s:
            self._parent[s] = self._parent[self._parent[s]]
            s = self._parent[s]
        return s

    def _merge(self, s, t):
        stack = [(s, t)]
        while stack:
            s, t = stack.pop()
            s, t = self._find(s), self._find(t)
            if s == t:
                continue
            self._parent[t] = s
            absorbed = self._edges[t]
            self._edges[t] = {}
            mine = self._edges[s]
            for a, u in absorbed.items():
                if a in mine:
                    stack.append((mine[a], u))
                else:
                    mine[a] = u

    def states(self):
        return sorted({self._find(s) for s in range(len(self._parent))})

    def subgroup_rank(self):
        """Rank of the subgroup, via the Euler characteristic of the core.

        Each geometric edge appears as two dict entries (loops included, as
        +a and -a at the same state), so edge count is half the entry total.
        """
        live = self.states()
        entries = sum(len(self._edges[s]) for s in live)
        return entries // 2 - len(live) + 1

    def contains(self, word):
        """True iff the word lies in the subgroup (reads a closed path)."""
        base = self._find(self._base)
        cur = base
        for a in reduce_word(word):
            nxt = self._edges[self._find(cur)].get(a)
            if nxt is None:
                return False
            cur = self._find(nxt)
        return self._find(cur) == base
