"""Generic isometric group actions on trees.

A backend supplies the primitive operations (base vertex, action, distance,
geodesics, composition); everything else in the package is written against
this contract.  Two backends ship: the Bruhat-Tits tree of the projective
linear group over Q_p, and the Cayley tree of a free group, the latter acting
as an exact cross-checking oracle.

Displacement of g is measured from the base vertex: norm(g) = d(v0, g v0).
The overlap of g and h is the length of the common initial segment of the
geodesics [v0, g v0] and [v0, h v0]; it is computed from displacements alone.

Paths from v0 are well-ordered: shorter first, then lexicographically by the
step labels at the first divergence (each backend fixes a total order on the
edge labels at every vertex).  Generators are compared by the induced
pre-order on (displacement, unordered pair of initial half-paths); this is
the order the Nielsen-style reduction minimizes against.
"""

from dataclasses import dataclass

from .errors import OriginMismatch

LESS, SAME, GREATER = -1, 0, 1


class TreePath:
    """A geodesic edge path: origin vertex, step labels, visited vertices.

    vertices[0] is the origin and len(vertices) == len(labels) + 1.  Labels
    are small ints in the backend's per-vertex ordering.
    """

    __slots__ = ("origin", "labels", "vertices")

    def __init__(self, origin, labels, vertices):
        self.origin = origin
        self.labels = tuple(labels)
        self.vertices = tuple(vertices)
        assert len(self.vertices) == len(self.labels) + 1
        assert self.vertices[0] == origin

    @property
    def endpoint(self):
        return self.vertices[-1]

    def __len__(self):
        return len(self.labels)

    def prefix(self, k):
        return TreePath(self.origin, self.labels[:k], self.vertices[: k + 1])

    def __eq__(self, other):
        if not isinstance(other, TreePath):
            return NotImplemented
        return self.origin == other.origin and self.labels == other.labels

    def __hash__(self):
        return hash((self.origin, self.labels))

    def __repr__(self):
        return f"TreePath({self.origin} ->{list(self.labels)}-> {self.endpoint})"


def compare_paths(a, b):
    """Well-order on paths from a common origin: length, then labels.

    Returns LESS, SAME, or GREATER.  Raises OriginMismatch when the paths do
    not start at the same vertex.
    """
    if a.origin != b.origin:
        raise OriginMismatch(f"{a.origin} vs {b.origin}")
    ka, kb = (len(a.labels), a.labels), (len(b.labels), b.labels)
    if ka < kb:
        return LESS
    if ka > kb:
        return GREATER
    return SAME


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a generator-set condition check.

    Truthy iff the condition holds; witness carries the first offending
    elements in the deterministic (generator index, then sign +/-)
    enumeration order.
    """

    ok: bool
    witness: tuple = None

    def __bool__(self):
        return self.ok


class TreeAction:
    """Contract every backend implements, plus the derived quantities."""

    # -- primitives supplied by subclasses -------------------------------

    @property
    def base_vertex(self):
        raise NotImplementedError

    def act(self, g, v):
        raise NotImplementedError

    def distance(self, v, w):
        raise NotImplementedError

    def path(self, v, w):
        raise NotImplementedError

    def compose(self, g, h):
        raise NotImplementedError

    def inverse(self, g):
        raise NotImplementedError

    def identity(self):
        raise NotImplementedError

    def is_identity(self, g):
        raise NotImplementedError

    def equal(self, g, h):
        raise NotImplementedError

    # -- convenience ------------------------------------------------------

    def base_path(self, v):
        return self.path(self.base_vertex, v)

    def base_labels(self, v):
        """Labels of the geodesic from the base vertex to v.

        Subclasses may override with a cheaper route than path().
        """
        return self.base_path(v).labels

    def compare_paths(self, a, b):
        return compare_paths(a, b)

    def signed_elements(self, X):
        """[(index, sign, element)] in the canonical enumeration order."""
        out = []
        for i, x in enumerate(X):
            out.append((i, 1, x))
            out.append((i, -1, self.inverse(x)))
        return out

    # -- displacement quantities -----------------------------------------

    def norm(self, g):
        """d(v0, g v0)."""
        return self.distance(self.base_vertex, self.act(g, self.base_vertex))

    def overlap(self, g, h):
        """Length of the common initial segment of [v0, g v0] and [v0, h v0].

        Computed as (norm(g) + norm(h) - norm(g^-1 h)) / 2, which tree parity
        makes a non-negative integer.
        """
        s = (
            self.norm(g)
            + self.norm(h)
            - self.norm(self.compose(self.inverse(g), h))
        )
        assert s >= 0 and s % 2 == 0, "tree parity violated"
        return s // 2

    def translation_length(self, g):
        """Minimal displacement over the geometric realization.

        max(0, norm(g^2) - norm(g)): positive exactly for the hyperbolic
        elements; elliptics (vertex fixers and edge inversions alike) give 0.
        """
        return max(0, self.norm(self.compose(g, g)) - self.norm(g))

    def is_elliptic(self, g):
        return self.norm(self.compose(g, g)) <= self.norm(g)

    def is_nontrivial_elliptic(self, g):
        return not self.is_identity(g) and self.is_elliptic(g)

    # -- the reduction pre-order -------------------------------------------

    def half(self, g):
        """Initial half of [v0, g v0]: the prefix of length floor(norm/2)."""
        p = self.base_path(self.act(g, self.base_vertex))
        return p.prefix(len(p) // 2)

    def star_key(self, g):
        """Comparable key (norm, sorted pair of half-path label tuples).

        Keys compare exactly as the reduction pre-order: displacement first,
        then the unordered pair {half(g), half(g^-1)} under the 2-set order.
        Degenerate pairs (both halves equal) are kept with multiplicity,
        which the sorted-pair comparison realizes as the multiset extension
        of the 2-set order.
        """
        n = self.norm(g)
        k = n // 2
        a = self.base_labels(self.act(g, self.base_vertex))[:k]
        b = self.base_labels(self.act(self.inverse(g), self.base_vertex))[:k]
        return (n, tuple(sorted((tuple(a), tuple(b)))))

    def compare_star(self, g, h):
        """LESS / SAME / GREATER in the reduction pre-order.

        SAME means g and h lie in the same component: equal displacement and
        identical half-path pairs.
        """
        ng, nh = self.norm(g), self.norm(h)
        if ng != nh:
            return LESS if ng < nh else GREATER
        kg, kh = self.star_key(g), self.star_key(h)
        if kg < kh:
            return LESS
        if kg > kh:
            return GREATER
        return SAME

    # -- generator-set conditions ------------------------------------------

    def check_n1(self, X):
        """No generator's inverse occurs in X (projectively)."""
        for i, x in enumerate(X):
            xin = self.inverse(x)
            for y in X:
                if self.equal(xin, y):
                    return CheckResult(False, (x,))
        return CheckResult(True)

    def check_n2(self, X):
        """For x, y in X^± with x != y^-1: 2*overlap(x^-1, y) <= min(|x|, |y|)."""
        signed = self.signed_elements(X)
        norms = [self.norm(x) for _, _, x in signed]
        for a, (i, si, x) in enumerate(signed):
            for b, (j, sj, y) in enumerate(signed):
                if i == j and si == -sj:
                    continue
                d = self.overlap(self.inverse(x), y)
                if 2 * d > min(norms[a], norms[b]):
                    return CheckResult(False, (x, y))
        return CheckResult(True)

    def check_n3(self, X):
        """For x, y, z in X^± with x != y^-1, y != z^-1:
        overlap(x^-1, y) + overlap(y^-1, z) < |y|."""
        signed = self.signed_elements(X)
        norms = [self.norm(x) for _, _, x in signed]
        ov = {}
        for a, (i, si, x) in enumerate(signed):
            xin = self.inverse(x)
            for b, (j, sj, y) in enumerate(signed):
                if i == j and si == -sj:
                    continue
                ov[a, b] = self.overlap(xin, y)
        for a, (i, si, x) in enumerate(signed):
            for b, (j, sj, y) in enumerate(signed):
                if i == j and si == -sj:
                    continue
                for c, (k, sk, z) in enumerate(signed):
                    if j == k and sj == -sk:
                        continue
                    if ov[a, b] + ov[b, c] >= norms[b]:
                        return CheckResult(False, (x, y, z))
        return CheckResult(True)

    def check_n4(self, X):
        """For x, y in X^± with x != y^-1: x precedes x*y strictly."""
        signed = self.signed_elements(X)
        for i, si, x in signed:
            for j, sj, y in signed:
                if i == j and si == -sj:
                    continue
                if self.compare_star(x, self.compose(x, y)) != LESS:
                    return CheckResult(False, (x, y))
        return CheckResult(True)

    def word_norm_check(self, X, word):
        """Verify the length identity for a reduced word over X.

        word is a sequence of nonzero 1-based signed indices into X; reduced
        means no letter is immediately followed by its inverse.  For an
        N-reduced X the displacement of the product must equal
        sum |a_i|  -  2 * sum overlap(a_i^-1, a_{i+1}).
        """
        letters = []
        for s in word:
            if s == 0 or abs(s) > len(X):
                raise ValueError(f"letter {s} out of range")
            x = X[abs(s) - 1]
            letters.append(x if s > 0 else self.inverse(x))
        for a, b in zip(word, word[1:]):
            if a == -b:
                raise ValueError("word is not reduced")
        g = self.identity()
        for x in letters:
            g = self.compose(g, x)
        rhs = sum(self.norm(x) for x in letters)
        for x, y in zip(letters, letters[1:]):
            rhs -= 2 * self.overlap(self.inverse(x), y)
        return self.norm(g) == rhs
