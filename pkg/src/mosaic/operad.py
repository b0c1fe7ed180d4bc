"""Gluing labeled polygons side to side.

Composition takes a side labeled a of one polygon and a side labeled b of
another, removes both sides, and joins the boundaries so that the seam
becomes a new diagonal.  Side and diagonal counts are forced: gluing an
n1-gon to an n2-gon yields an (n1+n2-2)-gon and adds one diagonal.  Both
counts are re-checked on every call and a violation raises loudly.

The symmetric group acts by relabeling sides; `check_operad_axioms` runs
the associativity and equivariance identities over every small instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from .errors import (
    ArityMismatch,
    InvariantViolation,
    LabelCollision,
    NonBijective,
    RangeError,
    UnknownLabel,
)
from .polygon import Dissection, dihedral_canonical, enumerate_diagonal_sets


@dataclass(frozen=True)
class CompositionPlan:
    """A base polygon plus one attachment per base side.

    attachments: sequence of (base side label, attached polygon, attached
    side label).  `compose_full` checks that the base labels are covered
    exactly once.
    """

    base: Dissection
    attachments: tuple

    def __post_init__(self):
        object.__setattr__(self, "attachments", tuple(self.attachments))


def compose_single(g, a, h, b):
    """Glue side a of g to side b of h.

    The result keeps g's surviving sides first (cyclically after a), then
    h's (cyclically after b); the seam becomes the diagonal separating
    them.  Raises UnknownLabel when a or b is missing and LabelCollision
    when the surviving labels clash.
    """
    try:
        p = g.labels.index(a)
    except ValueError:
        raise UnknownLabel(f"{a!r} is not a side label of {g!r}") from None
    try:
        q = h.labels.index(b)
    except ValueError:
        raise UnknownLabel(f"{b!r} is not a side label of {h!r}") from None
    n1, n2 = g.n, h.n
    total = n1 + n2 - 2
    surviving_g = set(g.labels) - {a}
    surviving_h = set(h.labels) - {b}
    clash = surviving_g & surviving_h
    if clash:
        raise LabelCollision(f"labels on both polygons: {sorted(map(repr, clash))}")

    labels = tuple(g.labels[(p + 1 + t) % n1] for t in range(n1 - 1)) \
        + tuple(h.labels[(q + 1 + t) % n2] for t in range(n2 - 1))
    diagonals = [(0, n1 - 1)]
    for u, v in g.diagonals:
        x, y = (u - p - 1) % n1, (v - p - 1) % n1
        diagonals.append((x, y) if x < y else (y, x))
    for u, v in h.diagonals:
        x = (n1 - 1 + (u - q - 1) % n2) % total
        y = (n1 - 1 + (v - q - 1) % n2) % total
        diagonals.append((x, y) if x < y else (y, x))
    result = Dissection(labels, frozenset(diagonals))

    if result.n != total or len(result.diagonals) != len(g.diagonals) + len(h.diagonals) + 1:
        raise InvariantViolation(
            f"composition bookkeeping broke: {result.n} sides, "
            f"{len(result.diagonals)} diagonals from {n1}+{n2} gluing")
    part, rest = result.split_labels((0, n1 - 1))
    assert set(part) == surviving_g and set(rest) == surviving_h, \
        "seam fails to separate the two polygons' labels"
    return result


def compose_full(plan):
    """Attach a polygon to every side of the base at once.

    With base side count m and base diagonal count l, attaching polygons
    of sizes n_i with k_i diagonals must produce sum(n_i) - m sides and
    m + l + sum(k_i) diagonals; the counts are verified before returning.
    """
    base = plan.base
    m = base.n
    used = [a for a, _, _ in plan.attachments]
    if sorted(used, key=repr) != sorted(base.labels, key=repr):
        raise ArityMismatch(
            f"attachments cover {used!r}, base sides are {list(base.labels)!r}")
    result = base
    for a, h, b in plan.attachments:
        result = compose_single(result, a, h, b)
    expected_sides = sum(h.n for _, h, _ in plan.attachments) - m
    expected_diagonals = m + len(base.diagonals) + sum(
        len(h.diagonals) for _, h, _ in plan.attachments)
    if result.n != expected_sides or len(result.diagonals) != expected_diagonals:
        raise InvariantViolation(
            f"full composition bookkeeping broke: got {result.n} sides / "
            f"{len(result.diagonals)} diagonals, expected {expected_sides} / "
            f"{expected_diagonals}")
    return result


def sweep_full_compositions(max_sides=7):
    """Run compose_full over every full plan with a small composite.

    Covers every base size, every tuple of attachment sizes whose
    composite stays within max_sides, every diagonal set of every
    operand, and every choice of glued sides.  compose_full re-checks
    its side and diagonal bookkeeping internally on each call; the
    return value is the number of compositions run.
    """
    if max_sides > 7:
        raise RangeError(f"sweep is limited to composites of <= 7 sides, got {max_sides}")
    runs = 0
    for m in range(3, max_sides):
        if 2 * m > max_sides:
            break
        base_pool = _all_dissections(m, 100)
        for size_combo in product(range(3, max_sides), repeat=m):
            if sum(size_combo) - m > max_sides:
                continue
            pools = [_all_dissections(size, 200 + 100 * slot)
                     for slot, size in enumerate(size_combo)]
            for attached in product(*pools):
                for glued in product(*[h.labels for h in attached]):
                    for base in base_pool:
                        plan = CompositionPlan(base, tuple(zip(base.labels, attached, glued)))
                        compose_full(plan)
                        runs += 1
    return runs


def relabel(g, sigma):
    """Apply a label bijection sigma (a mapping) to every side of g."""
    try:
        new_labels = tuple(sigma[x] for x in g.labels)
    except KeyError as missing:
        raise NonBijective(f"relabeling undefined on {missing.args[0]!r}") from None
    if len(set(new_labels)) != len(new_labels):
        raise NonBijective(f"relabeling is not injective on {g.labels!r}")
    return Dissection(new_labels, g.diagonals)


@dataclass
class AxiomReport:
    """Outcome of the operad axiom sweep."""

    sequential_checked: int = 0
    parallel_checked: int = 0
    equivariance_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def __str__(self):
        verdict = "pass" if self.passed else f"{len(self.failures)} FAILURES"
        return (f"operad axioms: {self.sequential_checked} sequential, "
                f"{self.parallel_checked} parallel, "
                f"{self.equivariance_checked} equivariance checks: {verdict}")


def _all_dissections(n, pool_start):
    # every dissection of an n-gon over a private integer label pool
    labels = tuple(range(pool_start, pool_start + n))
    out = []
    for k in range(n - 2):
        for diagset in enumerate_diagonal_sets(n, k):
            out.append(Dissection(labels, frozenset(diagset)))
    return out


def _canonical_key(diss):
    return dihedral_canonical(diss).encoding()


def check_operad_axioms(max_sides=7):
    """Exhaustively verify associativity and equivariance at small sizes.

    Runs over every ordered triple of polygon sizes whose composite has
    at most `max_sides` sides, every diagonal set of each operand, and
    every choice of glued sides.  Sequential associativity
    (g o_a h) o_c k = g o_a (h o_c k) and parallel associativity
    (g o_a h) o_c k = (g o_c k) o_a h are compared through canonical
    forms (the two sides differ by a rotation).  Equivariance
    relabel(g) o relabel(h) = relabel(g o h) is exact; the label
    bijections are exhaustive for the 3+3 case and a fixed four-map
    family above that.
    """
    if max_sides > 7:
        raise RangeError(f"axiom sweep is limited to composites of <= 7 sides, got {max_sides}")
    report = AxiomReport()

    sizes = range(3, max_sides)
    for n1 in sizes:
        for n2 in sizes:
            for n3 in sizes:
                if n1 + n2 + n3 - 4 > max_sides:
                    continue
                for g in _all_dissections(n1, 100):
                    for h in _all_dissections(n2, 200):
                        for k in _all_dissections(n3, 300):
                            _sweep_sequential(report, g, h, k)
                            _sweep_parallel(report, g, h, k)

    for n1 in sizes:
        for n2 in sizes:
            if n1 + n2 - 2 > max_sides:
                continue
            for g in _all_dissections(n1, 100):
                for h in _all_dissections(n2, 200):
                    _sweep_equivariance(report, g, h)
    return report


def _sweep_sequential(report, g, h, k):
    for a in g.labels:
        for b in h.labels:
            for c in h.labels:
                if c == b:
                    continue
                for e in k.labels:
                    left = compose_single(compose_single(g, a, h, b), c, k, e)
                    right = compose_single(g, a, compose_single(h, c, k, e), b)
                    report.sequential_checked += 1
                    if _canonical_key(left) != _canonical_key(right):
                        report.failures.append(
                            f"sequential associativity broke at "
                            f"{g!r} o_{a} {h!r} o_{c} {k!r}")


def _sweep_parallel(report, g, h, k):
    for a in g.labels:
        for c in g.labels:
            if c == a:
                continue
            for b in h.labels:
                for e in k.labels:
                    left = compose_single(compose_single(g, a, h, b), c, k, e)
                    right = compose_single(compose_single(g, c, k, e), a, h, b)
                    report.parallel_checked += 1
                    if _canonical_key(left) != _canonical_key(right):
                        report.failures.append(
                            f"parallel associativity broke at "
                            f"{g!r} o_{a} {h!r}, o_{c} {k!r}")


def _label_bijections(universe):
    if len(universe) <= 6:
        for image in permutations(universe):
            yield dict(zip(universe, image))
        return
    yield dict(zip(universe, universe))
    yield dict(zip(universe, reversed(universe)))
    yield dict(zip(universe, universe[1:] + universe[:1]))
    shuffled = universe[::2] + universe[1::2]
    yield dict(zip(universe, shuffled))


def _sweep_equivariance(report, g, h):
    universe = g.labels + h.labels
    for a in g.labels:
        for b in h.labels:
            composed = compose_single(g, a, h, b)
            for sigma in _label_bijections(universe):
                left = compose_single(relabel(g, sigma), sigma[a],
                                      relabel(h, sigma), sigma[b])
                right = relabel(composed, sigma)
                report.equivariance_checked += 1
                if left != right:
                    report.failures.append(
                        f"equivariance broke at {g!r} o_{a} {h!r} under {sigma!r}")
