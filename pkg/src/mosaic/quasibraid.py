"""A quasibraid presentation read off the marked polygon.

Generators are the diagonals of the reference n-gon.  Each diagonal
cuts off a run of sides away from the marked side n, its free part, and
acts on labels by reversing that run.  Three relation families arise
from walking around codim-2 cells of the tiling:

  involution   s s = 1 for every generator,
  commuting    s_a s_b = s_b s_a whenever the superimposed pair is
               preserved positionwise by both marked twists,
  conjugation  s_d s_a = s_b s_d otherwise, with d the outer diagonal
               and b the reflection of a through d's twist.

The homomorphism phi sends each generator to its free-part reversal in
the symmetric group on 1..n-1; every relation must collapse under phi,
and the images must generate the whole group.  Both facts are checked
by enumeration, not assumed.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial

from .errors import NonBijective, NotSI, RangeError
from .associahedron import reference_polygon
from .moduli import marked_twist
from .polygon import polygon_diagonals, superimpose


@dataclass(frozen=True)
class Generator:
    """One generator: a diagonal of the reference n-gon."""

    n: int
    diagonal: tuple

    @property
    def free_part(self):
        i, j = self.diagonal
        return tuple(range(i + 1, j + 1))

    def __repr__(self):
        return f"Generator({self.n}, {self.diagonal})"


def generators(n):
    """All n(n-3)/2 generators, ordered by diagonal."""
    if n < 4:
        raise RangeError(f"need n >= 4, got {n}")
    return [Generator(n, d) for d in polygon_diagonals(n)]


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..m}; images[x-1] is the image of x."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise NonBijective(f"not a permutation of 1..{len(self.images)}: "
                               f"{self.images!r}")

    @classmethod
    def identity(cls, m):
        return cls(tuple(range(1, m + 1)))

    def apply(self, x):
        return self.images[x - 1]

    def __mul__(self, other):
        # left-to-right: (p * q)(x) = q(p(x))
        return Permutation(tuple(other.images[y - 1] for y in self.images))

    def inverse(self):
        out = [0] * len(self.images)
        for x, y in enumerate(self.images, start=1):
            out[y - 1] = x
        return Permutation(tuple(out))

    def is_identity(self):
        return all(y == x for x, y in enumerate(self.images, start=1))


def phi(g):
    """The image of a generator: reversal of its free-part run."""
    m = g.n - 1
    images = list(range(1, m + 1))
    run = g.free_part
    for t, x in enumerate(run):
        images[x - 1] = run[len(run) - 1 - t]
    return Permutation(tuple(images))


def phi_word(word, n):
    """Product of generator images, leftmost applied first."""
    out = Permutation.identity(n - 1)
    for g in word:
        out = out * phi(g)
    return out


def free_reduce(word):
    """Cancel adjacent equal generators (all generators are involutions)."""
    stack = []
    for g in word:
        if stack and stack[-1] == g:
            stack.pop()
        else:
            stack.append(g)
    return tuple(stack)


def _superimposed(a, b):
    base = reference_polygon(a.n, (a.diagonal,))
    other = reference_polygon(a.n, (b.diagonal,))
    pair = superimpose(base, other)
    if pair is None:
        raise NotSI(f"diagonals {a.diagonal} and {b.diagonal} do not superimpose")
    return pair


def conjugate_in(d, a):
    """The generator conjugate to `a` inside `d`.

    Superimpose the two diagonals, twist along d keeping the marked
    side fixed, and delete d; the surviving diagonal names the result.
    When a is not inside d's free part the twist leaves it alone and
    the result is a itself.
    """
    if d.n != a.n:
        raise NotSI(f"generators live on different polygons: {d.n} vs {a.n}")
    pair = _superimposed(d, a)
    twisted = marked_twist(pair, d.diagonal)
    rest = set(twisted.diagonals) - {d.diagonal}
    assert len(rest) == 1
    return Generator(d.n, rest.pop())


@dataclass(frozen=True)
class Relation:
    """One defining relation; both sides are words of length <= 2."""

    kind: str                    # involution | commuting | conjugation
    left: tuple
    right: tuple


def relations(n):
    """The defining relations, deterministically ordered.

    Involutions come first, then one relation per superimposable pair.
    A pair commutes when both marked twists of the superimposed
    dissection leave the diagonal positions in place (disjoint free
    parts, or nested parts reflecting onto themselves); any other pair
    is nested off-center and contributes a conjugation whose conjugator
    is the outer diagonal.
    """
    gens = generators(n)
    rels = [Relation("involution", (g, g), ()) for g in gens]
    for a, b in combinations(gens, 2):
        try:
            pair = _superimposed(a, b)
        except NotSI:
            continue
        twisted_a = marked_twist(pair, a.diagonal)
        twisted_b = marked_twist(pair, b.diagonal)
        if set(twisted_a.diagonals) == set(twisted_b.diagonals):
            rels.append(Relation("commuting", (a, b), (b, a)))
            continue
        (ai, aj), (bi, bj) = a.diagonal, b.diagonal
        if ai <= bi and bj <= aj:
            outer, inner = a, b
        elif bi <= ai and aj <= bj:
            outer, inner = b, a
        else:
            raise AssertionError(
                f"noncommuting pair {a.diagonal}/{b.diagonal} is not nested")
        third = conjugate_in(outer, inner)
        rels.append(Relation("conjugation", (outer, inner), (third, outer)))
    return rels


@dataclass
class PhiReport:
    """Outcome of checking phi on every relation plus surjectivity."""

    n: int
    relations_checked: int = 0
    image_order: int = 0
    expected_order: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def __str__(self):
        verdict = "pass" if self.passed else f"{len(self.failures)} FAILURES"
        return (f"phi on J_{self.n - 1}: {self.relations_checked} relations, "
                f"image order {self.image_order}/{self.expected_order}: {verdict}")


def _subgroup_order(images, m):
    # plain orbit closure over image tuples; fine through S_8
    identity = tuple(range(1, m + 1))
    gens = [p.images for p in images]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = tuple(q[y - 1] for y in p)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return len(seen)


def check_phi(n):
    """Verify every relation under phi and that the images generate S_{n-1}."""
    if not 4 <= n <= 9:
        raise RangeError(f"phi check supports 4 <= n <= 9, got {n}")
    report = PhiReport(n=n, expected_order=factorial(n - 1))
    for rel in relations(n):
        left = phi_word(rel.left, n)
        right = phi_word(rel.right, n)
        report.relations_checked += 1
        if left != right:
            report.failures.append(
                f"{rel.kind} relation {rel.left} = {rel.right} breaks under phi: "
                f"{left.images} vs {right.images}")
    report.image_order = _subgroup_order([phi(g) for g in generators(n)], n - 1)
    if report.image_order != report.expected_order:
        report.failures.append(
            f"images generate a subgroup of order {report.image_order}, "
            f"expected {report.expected_order}")
    return report


# ---------------------------------------------------------------------------
# juxtaposition of two polygons into a larger one


@dataclass
class PantsReport:
    """Outcome of checking one juxtaposition of two generator sets."""

    m: int
    n: int
    target: int
    relations_mapped: int = 0
    cross_pairs: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def __str__(self):
        verdict = "pass" if self.passed else f"{len(self.failures)} FAILURES"
        return (f"juxtaposition J_{self.m} x J_{self.n} -> J_{self.target - 1}: "
                f"{self.relations_mapped} relations carried, "
                f"{self.cross_pairs} cross pairs commute: {verdict}")


def _relation_index(rels):
    commuting = set()
    conjugation = {}
    for rel in rels:
        if rel.kind == "commuting":
            commuting.add(frozenset((rel.left[0].diagonal, rel.left[1].diagonal)))
        elif rel.kind == "conjugation":
            d, a = rel.left
            conjugation[(d.diagonal, a.diagonal)] = rel.right[0].diagonal
    return commuting, conjugation


def pair_of_pants(m, n):
    """Embed the generator sets of J_m and J_n side by side in J_{m+n}.

    The first factor keeps labels 1..m, the second shifts by m.  Every
    relation of a factor must reappear verbatim among the relations of
    the target, and every cross pair must commute (their free parts are
    disjoint by construction).  Returns the two generator maps and the
    verification report.
    """
    if m < 3 or n < 3:
        raise RangeError(f"need m, n >= 3, got {m}, {n}")
    target = m + n + 1
    map_1 = {g: Generator(target, g.diagonal) for g in generators(m + 1)}
    map_2 = {g: Generator(target, (g.diagonal[0] + m, g.diagonal[1] + m))
             for g in generators(n + 1)}
    report = PantsReport(m=m, n=n, target=target)
    commuting, conjugation = _relation_index(relations(target))

    for source_rels, mapping in ((relations(m + 1), map_1),
                                 (relations(n + 1), map_2)):
        for rel in source_rels:
            report.relations_mapped += 1
            if rel.kind == "involution":
                continue
            left = [mapping[g] for g in rel.left]
            if rel.kind == "commuting":
                key = frozenset((left[0].diagonal, left[1].diagonal))
                if key not in commuting:
                    report.failures.append(
                        f"commuting relation {key} lost in J_{target - 1}")
            else:
                d, a = left
                want = mapping[rel.right[0]].diagonal
                got = conjugation.get((d.diagonal, a.diagonal))
                if got != want:
                    report.failures.append(
                        f"conjugation ({d.diagonal}, {a.diagonal}) maps to "
                        f"{got}, expected {want}")

    for g1 in map_1.values():
        for g2 in map_2.values():
            report.cross_pairs += 1
            key = frozenset((g1.diagonal, g2.diagonal))
            if key not in commuting:
                report.failures.append(
                    f"cross pair {sorted(key)} has no commuting relation")
            p, q = phi(g1), phi(g2)
            if p * q != q * p:
                report.failures.append(
                    f"cross pair {sorted(key)} fails to commute under phi")
    return map_1, map_2, report


def export_presentation(n):
    """Plain-text presentation, byte-stable for fixed n.

    Line 1 names the generators g1..gK in diagonal order; each further
    line is one relation `rel: <word> = <word>` with space-separated
    names and the empty word rendered as nothing.
    """
    gens = generators(n)
    names = {g: f"g{t + 1}" for t, g in enumerate(gens)}
    lines = ["generators: " + " ".join(names[g] for g in gens)]
    for rel in relations(n):
        left = " ".join(names[g] for g in rel.left)
        right = " ".join(names[g] for g in rel.right)
        lines.append(f"rel: {left} = {right}".rstrip())
    return "\n".join(lines) + "\n"
