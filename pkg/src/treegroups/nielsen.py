"""Reduction of generating sets to the canonical free basis.

The procedure repeatedly replaces a generator x_i by a product x_i^e * x_j^f
(tracking the substitution as a word over the input) whenever the product
precedes x_i in the displacement-then-half-paths pre-order, drops identities
and mutually inverse pairs, and stops either at a nontrivial elliptic element
(the group is then not purely hyperbolic, witness attached) or at a fixed
point.  The fixed point is the strongly reduced basis: it satisfies all four
generator-set conditions and is unique for the subgroup up to inverting and
permuting its members, which is what makes subgroup equality decidable by
comparing reduced bases element by element.

Every replacement strictly decreases one generator's key and keys do not
increase otherwise, so termination is immediate; the number of passes is
reported on the outcome for benchmarking.
"""

import warnings
from dataclasses import dataclass
from enum import Enum

from .cayley import concat, invert_word
from .errors import EllipticEncountered


@dataclass(frozen=True)
class TrackedGen:
    """A current generator together with its expression over the input.

    word is a freely reduced tuple of nonzero signed 1-based indices into
    the original generator list, so the element is always recoverable via
    evaluate_word(action, original, word).
    """

    element: object
    word: tuple


class ReductionFlag(Enum):
    PURELY_HYPERBOLIC_FREE_BASIS = "purely_hyperbolic_free_basis"
    CONTAINS_ELLIPTIC = "contains_elliptic"


@dataclass
class ReductionOutcome:
    flag: ReductionFlag
    basis: list
    witness: object
    iterations: int
    trace: object

    @property
    def is_free_basis(self):
        return self.flag is ReductionFlag.PURELY_HYPERBOLIC_FREE_BASIS

    @property
    def elements(self):
        return [t.element for t in self.basis]


def evaluate_word(action, gens, word):
    """Product of the signed generators named by the word."""
    out = action.identity()
    for a in word:
        if a == 0 or abs(a) > len(gens):
            raise ValueError(f"letter {a} out of range")
        g = gens[abs(a) - 1]
        out = action.compose(out, g if a > 0 else action.inverse(g))
    return out


def _signed_word(t, sign):
    return t.word if sign == 1 else invert_word(t.word)


def reduce(action, generators, collect_trace=False):
    """Run the basis reduction to its fixed point.

    Returns a ReductionOutcome.  On CONTAINS_ELLIPTIC the witness is a
    TrackedGen whose element is a nontrivial elliptic of the generated
    group; the basis field then holds the working set at the moment of
    detection and is not a free basis.

    Identity input generators are dropped with a warning before the loop.

    With collect_trace=True the outcome's trace lists the events in order,
    slot indices referring to the working list at the time of the event:
      ("drop_identity", slot)
      ("drop_inverse", keep_slot, dropped_slot)
      ("replace", slot, (slot, sign, other_slot, other_sign), old_key, new_key)
      ("elliptic", slot)
    """
    trace = [] if collect_trace else None
    gens = []
    for idx, g in enumerate(generators):
        if action.is_identity(g):
            warnings.warn(f"input generator {idx} is the identity; dropped")
            if trace is not None:
                trace.append(("drop_identity", idx))
            continue
        gens.append(TrackedGen(g, (idx + 1,)))

    norms = [action.norm(t.element) for t in gens]
    keys = [None] * len(gens)  # star keys, filled lazily
    elliptic = [None] * len(gens)
    iterations = 0

    def key_of(i):
        if keys[i] is None:
            keys[i] = action.star_key(gens[i].element)
        return keys[i]

    def drop(i):
        for seq in (gens, norms, keys, elliptic):
            del seq[i]

    while True:
        iterations += 1

        hit = _scan_elliptic(action, gens, elliptic)
        if hit is not None:
            if trace is not None:
                trace.append(("elliptic", hit))
            return ReductionOutcome(
                ReductionFlag.CONTAINS_ELLIPTIC,
                gens,
                gens[hit],
                iterations,
                trace,
            )

        i = next(
            (i for i, t in enumerate(gens) if action.is_identity(t.element)),
            None,
        )
        if i is not None:
            if trace is not None:
                trace.append(("drop_identity", i))
            drop(i)
            continue

        pair = _scan_inverse_pair(action, gens)
        if pair is not None:
            i, j = pair
            if trace is not None:
                trace.append(("drop_inverse", i, j))
            drop(j)
            continue

        move = _scan_replacement(action, gens, norms, key_of)
        if move is None:
            return ReductionOutcome(
                ReductionFlag.PURELY_HYPERBOLIC_FREE_BASIS,
                gens,
                None,
                iterations,
                trace,
            )

        i, si, j, sj, prod, prod_norm, prod_key = move
        old_key = key_of(i)
        assert prod_key < old_key, "replacement must strictly decrease the key"
        element = prod if si == 1 else action.inverse(prod)
        word = concat(_signed_word(gens[i], si), _signed_word(gens[j], sj))
        if si == -1:
            word = invert_word(word)
        if trace is not None:
            trace.append(("replace", i, (i, si, j, sj), old_key, prod_key))
        gens[i] = TrackedGen(element, word)
        norms[i] = prod_norm
        keys[i] = prod_key
        elliptic[i] = None


def _scan_elliptic(action, gens, cache):
    for i, t in enumerate(gens):
        if cache[i] is None:
            cache[i] = action.is_nontrivial_elliptic(t.element)
        if cache[i]:
            return i
    return None


def _scan_inverse_pair(action, gens):
    for i in range(len(gens)):
        inv = action.inverse(gens[i].element)
        for j in range(i + 1, len(gens)):
            if action.equal(gens[j].element, inv):
                return i, j
    return None


def _scan_replacement(action, gens, norms, key_of):
    """First signed pair whose product strictly precedes the left slot.

    Norm comparison screens candidates; half-path keys are built only on
    ties.  The (slot, sign) enumeration order is fixed so runs are
    reproducible.
    """
    elems = [t.element for t in gens]
    invs = [action.inverse(x) for x in elems]
    for i in range(len(gens)):
        for si in (1, -1):
            a = elems[i] if si == 1 else invs[i]
            for j in range(len(gens)):
                if j == i:
                    continue
                for sj in (1, -1):
                    b = elems[j] if sj == 1 else invs[j]
                    prod = action.compose(a, b)
                    n = action.norm(prod)
                    if n > norms[i]:
                        continue
                    key = action.star_key(prod)
                    if n == norms[i] and not key < key_of(i):
                        continue
                    return i, si, j, sj, prod, n, key
    return None


def is_strongly_reduced(action, elements):
    """All four generator-set conditions plus pure hyperbolicity."""
    if not action.check_n1(elements):
        return False
    if any(action.is_nontrivial_elliptic(g) for g in elements):
        return False
    return bool(
        action.check_n2(elements)
        and action.check_n3(elements)
        and action.check_n4(elements)
    )


def groups_equal(action, gens_a, gens_b):
    """Whether two generating sets generate the same subgroup.

    Both sides are reduced first; the strongly reduced basis is unique up
    to order and inversion, so equality is a signed element-set match.
    Raises EllipticEncountered when either side fails to be purely
    hyperbolic, since uniqueness is only available in the free case.
    """
    ra = reduce(action, gens_a)
    rb = reduce(action, gens_b)
    for r in (ra, rb):
        if not r.is_free_basis:
            raise EllipticEncountered(
                "generating set is not purely hyperbolic; "
                "basis comparison undefined"
            )
    xs = ra.elements
    ys = rb.elements
    if len(xs) != len(ys):
        return False

    def matches(g, h):
        return action.equal(g, h) or action.equal(g, action.inverse(h))

    return all(any(matches(x, y) for y in ys) for x in xs)
