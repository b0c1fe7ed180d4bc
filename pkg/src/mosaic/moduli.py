"""Cell complexes of twist classes of labeled polygons.

A labeled dissection determines a cell; two dissections give the same
cell when a chain of twists and symmetries carries one to the other.  A
twist breaks the polygon along a diagonal, reflects one piece, and
reglues.  Two regimes are supported:

  projective   twists along any diagonal, together with the full
               dihedral relabeling group; tiles number (n-1)!/2.
  double-cover marked twists (always reflecting the piece away from the
               side labeled n) together with cyclic rotations only;
               tiles number (n-1)!.

`build_complex` enumerates every cell of the chosen regime for one n,
grades them by diagonal count (codimension), and records the incidence
between adjacent grades with multiplicity.  Classes always carry exactly
2^k dissections once the rotational freedom is normalized away; the
build raises InvariantViolation rather than return a complex violating
that.

The enumeration walks grades in order and keys each normalized
dissection by a compact byte string, so the n = 8 projective complex
(260190 cells from 2275560 normalized dissections) builds in well under
a minute.
"""

from __future__ import annotations

from array import array
from collections import Counter
from dataclasses import dataclass, field, replace
from math import factorial
from itertools import combinations, permutations

import numpy as np

from .errors import (
    BadSubsetSize,
    InvariantViolation,
    MosaicError,
    NotASurface,
    NoInfinitySide,
    NoSuchDiagonal,
    RangeError,
    UnknownCell,
    UnknownLabel,
)
from .polygon import (
    Dissection,
    cayley_count,
    diagonals_cross,
    enumerate_diagonal_sets,
    normalize_diagonal,
    polygon_diagonals,
)

PROJECTIVE = "projective"
DOUBLE_COVER = "double-cover"
_MODES = (PROJECTIVE, DOUBLE_COVER)

_BUILD_LIMIT = 8


def _check_mode(mode):
    if mode not in _MODES:
        raise RangeError(f"mode must be one of {_MODES}, got {mode!r}")


# ---------------------------------------------------------------------------
# twists


def _reflect_flap(labels, diagonals, x, y):
    # reflect the piece of the polygon spanned by the vertex arc x..y
    # (walking upward mod n); sides x..y-1 reverse, diagonals with both
    # endpoints on the arc map through v -> x+y-v
    n = len(labels)
    span = (y - x) % n
    new_labels = list(labels)
    for s in range(span):
        p = (x + s) % n
        new_labels[(x + y - 1 - p) % n] = labels[p]
    out = []
    for u, v in diagonals:
        if (u - x) % n <= span and (v - x) % n <= span:
            u, v = (x + y - u) % n, (x + y - v) % n
        out.append((u, v) if u < v else (v, u))
    out.sort()
    return tuple(new_labels), tuple(out)


def twist(diss, d):
    """Break the polygon along d, reflect the piece on the short arc side.

    The reflected piece is the one spanned by vertices i..j for the
    sorted diagonal d = (i, j).  Twisting twice along the same diagonal
    is the exact identity.
    """
    d = normalize_diagonal(d, diss.n)
    if d not in diss.diagonals:
        raise NoSuchDiagonal(f"{d} not in {sorted(diss.diagonals)}")
    labels, diags = _reflect_flap(diss.labels, sorted(diss.diagonals), d[0], d[1])
    return Dissection(labels, frozenset(diags))


def marked_twist(diss, d):
    """Twist along d, always reflecting the piece away from the side n.

    The side labeled n plays the role of the distinguished puncture; the
    reflected piece never contains it, which makes the marked twist an
    exact involution with a pinned frame.
    """
    n = diss.n
    d = normalize_diagonal(d, n)
    if d not in diss.diagonals:
        raise NoSuchDiagonal(f"{d} not in {sorted(diss.diagonals)}")
    if n not in diss.labels:
        raise NoInfinitySide(f"no side labeled {n} in {diss.labels!r}")
    p_inf = diss.labels.index(n)
    i, j = d
    if (p_inf - i) % n < j - i:
        x, y = j, i            # the marked side sits on positions i..j-1
    else:
        x, y = i, j
    labels, diags = _reflect_flap(diss.labels, sorted(diss.diagonals), x, y)
    return Dissection(labels, frozenset(diags))


# ---------------------------------------------------------------------------
# normal forms on raw (labels, diagonals) tuples; the hot path avoids
# Dissection construction entirely


def _twist_window(labels, diags, i, j):
    n = len(labels)
    new_labels = labels[:i] + labels[i:j][::-1] + labels[j:]
    out = []
    for u, v in diags:
        if i <= u and v <= j:
            u, v = i + j - v, i + j - u
        out.append((u, v))
    out.sort()
    return new_labels, tuple(out)


def _dihedral_least(labels, diags, n):
    # least (labels, diagonals) over the 2n dihedral images; distinct
    # labels leave exactly two candidates, the rotation and the
    # reflected rotation that put label 1 first
    r = labels.index(1)
    c1 = labels[r:] + labels[:r] if r else labels
    rev = labels[::-1]
    r2 = n - 1 - r
    c2 = rev[r2:] + rev[:r2] if r2 else rev
    if c1 <= c2:
        if r == 0:
            return labels, diags
        out = []
        for u, v in diags:
            a, b = (u - r) % n, (v - r) % n
            out.append((a, b) if a < b else (b, a))
        out.sort()
        return c1, tuple(out)
    out = []
    for u, v in diags:
        a, b = (n - u - r2) % n, (n - v - r2) % n
        out.append((a, b) if a < b else (b, a))
    out.sort()
    return c2, tuple(out)


def _rotate_infinity_last(labels, diags, n):
    r = (labels.index(n) + 1) % n
    if r == 0:
        return labels, tuple(sorted(diags))
    out = []
    for u, v in diags:
        a, b = (u - r) % n, (v - r) % n
        out.append((a, b) if a < b else (b, a))
    out.sort()
    return labels[r:] + labels[:r], tuple(out)


def _closure(labels, diags, n, mode):
    # twist closure of one normalized dissection; in double-cover mode
    # the frame keeps the side n at position n-1, and every window twist
    # preserves that, so no renormalization happens inside the loop
    projective = mode == PROJECTIVE
    start = (labels, diags)
    seen = {start}
    stack = [start]
    while stack:
        cur_labels, cur_diags = stack.pop()
        for u, v in cur_diags:
            nxt = _twist_window(cur_labels, cur_diags, u, v)
            if projective:
                nxt = _dihedral_least(nxt[0], nxt[1], n)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


@dataclass(frozen=True)
class Cell:
    """A twist class of labeled dissections.

    labels/diagonals give the least member of the class in the regime's
    normal form; codim equals the diagonal count; size is the number of
    normalized dissections in the class, always 2^codim.
    """

    mode: str
    labels: tuple
    diagonals: tuple
    size: int = field(compare=False)
    index: int = field(default=None, compare=False)

    @property
    def codim(self):
        return len(self.diagonals)

    @property
    def representative(self):
        return Dissection(self.labels, frozenset(self.diagonals))


def cell_class(diss, mode):
    """The cell containing a dissection with labels 1..n.

    Projective regime: closure under all twists and the dihedral group.
    Double-cover regime: closure under marked twists and cyclic
    rotations.  The representative is the least normalized member.
    """
    _check_mode(mode)
    n = diss.n
    if set(diss.labels) != set(range(1, n + 1)):
        raise UnknownLabel(f"cell classes need labels 1..{n}, got {diss.labels!r}")
    labels = diss.labels
    diags = tuple(sorted(diss.diagonals))
    if mode == PROJECTIVE:
        labels, diags = _dihedral_least(labels, diags, n)
    else:
        labels, diags = _rotate_infinity_last(labels, diags, n)
    members = _closure(labels, diags, n, mode)
    if len(members) != 1 << len(diags):
        raise InvariantViolation(
            f"twist class of {diss!r} has {len(members)} members, "
            f"expected {1 << len(diags)}")
    rep_labels, rep_diags = min(members)
    return Cell(mode=mode, labels=rep_labels, diagonals=rep_diags, size=len(members))


# ---------------------------------------------------------------------------
# the graded complex


class _Level:
    """Incidence between two adjacent grades, with multiplicity.

    Stored twice as sorted (parent<<32 | child) and (child<<32 | parent)
    code arrays for range queries from either end.
    """

    __slots__ = ("pc_codes", "pc_counts", "cp_codes", "cp_counts")

    def __init__(self, codes, counts):
        order = np.argsort(codes, kind="stable")
        self.pc_codes = codes[order]
        self.pc_counts = counts[order]
        child_major = ((codes & 0xFFFFFFFF) << 32) | (codes >> 32)
        order = np.argsort(child_major, kind="stable")
        self.cp_codes = child_major[order]
        self.cp_counts = counts[order]

    @classmethod
    def from_raw(cls, raw):
        codes, counts = np.unique(raw, return_counts=True)
        return cls(codes, counts.astype(np.int64))

    def _range(self, codes, gid):
        lo = np.searchsorted(codes, gid << 32)
        hi = np.searchsorted(codes, (gid + 1) << 32)
        return lo, hi

    def children_of(self, parent_gid):
        lo, hi = self._range(self.pc_codes, parent_gid)
        return (self.pc_codes[lo:hi] & 0xFFFFFFFF, self.pc_counts[lo:hi])

    def parents_of(self, child_gid):
        lo, hi = self._range(self.cp_codes, child_gid)
        return (self.cp_codes[lo:hi] & 0xFFFFFFFF, self.cp_counts[lo:hi])

    def pairs(self):
        for code, count in zip(self.pc_codes.tolist(), self.pc_counts.tolist()):
            yield code >> 32, code & 0xFFFFFFFF, count


def _projective_labelings(n):
    # one label cycle per dihedral class: 1 is pinned first and the
    # sequence must not exceed its reflection
    out = []
    for perm in permutations(range(2, n + 1)):
        labels = (1,) + perm
        reflected = (1,) + perm[::-1]
        if labels <= reflected:
            out.append(labels)
    return out


def _cover_labelings(n):
    # one label cycle per rotation class: n is pinned last
    return [perm + (n,) for perm in permutations(range(1, n))]


def _key(labels, diags):
    return bytes(labels) + bytes(x for d in diags for x in d)


def _decode_key(key, n):
    labels = tuple(key[:n])
    flat = key[n:]
    diags = tuple((flat[t], flat[t + 1]) for t in range(0, len(flat), 2))
    return labels, diags


class ModuliComplex:
    """All cells of one regime for one n, graded by codimension.

    Cells are numbered densely in (codim, representative) order.  The
    incidence between grades k-1 and k is held in levels[k].  A divisor
    subcomplex reuses the class with codim_offset 1: its top cells sit
    at codimension 1 of the ambient complex.
    """

    def __init__(self, n, mode, cells, grade_range, levels,
                 codim_offset=0, divisor_set=None):
        self.n = n
        self.mode = mode
        self.cells = tuple(cells)
        self.grade_range = dict(grade_range)
        self.levels = dict(levels)
        self.codim_offset = codim_offset
        self.divisor_set = divisor_set
        self._lookup = {(c.labels, c.diagonals): c.index for c in self.cells}

    # -- shape ------------------------------------------------------------

    @property
    def max_codim(self):
        return max(self.grade_range)

    @property
    def dimension(self):
        return (self.n - 3) - self.codim_offset

    def is_full_depth(self):
        return self.max_codim == self.n - 3

    def cells_at(self, codim):
        if codim not in self.grade_range:
            raise RangeError(f"no grade {codim} in this complex")
        start, end = self.grade_range[codim]
        return self.cells[start:end]

    def tiles(self):
        """The top-dimensional cells."""
        return self.cells_at(self.codim_offset)

    def f_vector(self):
        """Cell counts by codimension, starting at codim_offset."""
        return tuple(len(self.cells_at(k))
                     for k in sorted(self.grade_range))

    def euler_characteristic(self):
        total = 0
        for k in self.grade_range:
            dim = (self.n - 3) - k
            total += (-1) ** dim * len(self.cells_at(k))
        return total

    # -- queries ----------------------------------------------------------

    def cell_for(self, diss):
        """The cell of this complex containing the given dissection."""
        if diss.n != self.n:
            raise UnknownCell(f"dissection has {diss.n} sides, complex has {self.n}")
        cell = cell_class(diss, self.mode)
        return self.resolve(cell)

    def resolve(self, cell):
        gid = self._lookup.get((cell.labels, cell.diagonals))
        if gid is None or self.cells[gid].mode != cell.mode:
            raise UnknownCell(f"{cell!r} is not a cell of this complex")
        return self.cells[gid]

    def coboundary_counts(self, cell):
        """For each t, the number of codim k-t cells whose closure holds `cell`.

        Computed by walking the incidence upward one grade at a time and
        counting distinct cells; t = 0 counts the cell itself.
        """
        cell = self.resolve(cell)
        k = cell.codim
        out = {0: 1}
        frontier = {cell.index}
        for t in range(1, k - self.codim_offset + 1):
            level = self.levels[k - t + 1]
            above = set()
            for gid in frontier:
                above.update(level.parents_of(gid)[0].tolist())
            frontier = above
            out[t] = len(frontier)
        return out

    def boundary_pairs(self):
        """Iterate (parent index, child index, multiplicity), graded order."""
        for k in sorted(self.levels):
            yield from self.levels[k].pairs()

    def tile_adjacency(self):
        """Dual graph of the tiling: tiles as nodes, one edge per shared facet."""
        mid = self.codim_offset + 1
        if mid not in self.grade_range:
            raise RangeError("complex too shallow for a tile adjacency graph")
        edges = []
        for cell in self.cells_at(mid):
            parents, counts = self.levels[mid].parents_of(cell.index)
            parents = parents.tolist()
            total = int(counts.sum())
            if total != 2:
                raise InvariantViolation(
                    f"facet cell {cell.index} borders {total} tile slots")
            if len(parents) == 1:
                edges.append((parents[0], parents[0], cell.index))
            else:
                u, v = sorted(parents)
                edges.append((u, v, cell.index))
        tiles = tuple(c.index for c in self.tiles())
        return TileAdjacency(tiles=tiles, edges=tuple(edges))


@dataclass(frozen=True)
class TileAdjacency:
    """Tiles as vertices; one edge (possibly a loop) per shared facet."""

    tiles: tuple
    edges: tuple                 # (tile, tile, facet cell index)

    def degrees(self):
        deg = Counter()
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return {t: deg[t] for t in self.tiles}

    def neighbors(self):
        out = {t: [] for t in self.tiles}
        for u, v, _ in self.edges:
            out[u].append(v)
            if u != v:
                out[v].append(u)
        return out


def build_complex(n, mode=PROJECTIVE, max_codim=None):
    """Enumerate the full cell complex for one n.

    Grades are walked from the tiles downward; each grade's classes are
    discovered by twist closure over normalized dissections, then the
    grade is frozen and the incidence with the previous grade is read
    off by deleting single diagonals.  max_codim truncates the build
    below that grade (the tile count of the n = 8 double cover is
    reachable this way without enumerating its 4.5 million dissections).

    n = 3 is allowed and yields the one-point complex; it turns up as a
    factor of divisor subcomplexes.
    """
    _check_mode(mode)
    if not 3 <= n <= _BUILD_LIMIT:
        raise RangeError(f"full enumeration supports 3 <= n <= {_BUILD_LIMIT}, got {n}")
    top = n - 3
    if max_codim is not None:
        if max_codim < 0:
            raise RangeError(f"max_codim must be >= 0, got {max_codim}")
        top = min(max_codim, top)
    labelings = _projective_labelings(n) if mode == PROJECTIVE else _cover_labelings(n)

    cells = []
    grade_range = {}
    levels = {}
    prev_visited = None
    prev_gid = None
    for k in range(top + 1):
        diagsets = enumerate_diagonal_sets(n, k)
        class_size = 1 << k
        visited = {}
        rep_keys = []
        for labels in labelings:
            label_bytes = bytes(labels)
            for diags in diagsets:
                key = label_bytes + bytes(x for d in diags for x in d)
                if key in visited:
                    continue
                members = _closure(labels, diags, n, mode)
                if len(members) != class_size:
                    raise InvariantViolation(
                        f"class of {labels}/{diags} has {len(members)} members, "
                        f"expected {class_size}")
                cid = len(rep_keys)
                best = None
                for member in members:
                    mkey = _key(*member)
                    visited[mkey] = cid
                    if best is None or mkey < best:
                        best = mkey
                rep_keys.append(best)
        if len(visited) != len(labelings) * len(diagsets):
            raise InvariantViolation(
                f"grade {k}: {len(visited)} normalized dissections seen, "
                f"expected {len(labelings) * len(diagsets)}")

        order = sorted(range(len(rep_keys)), key=rep_keys.__getitem__)
        start = len(cells)
        gid_of_local = [0] * len(rep_keys)
        for rank, local in enumerate(order):
            gid_of_local[local] = start + rank
            labels, diags = _decode_key(rep_keys[local], n)
            cells.append(Cell(mode=mode, labels=labels, diagonals=diags,
                              size=class_size, index=start + rank))
        grade_range[k] = (start, len(cells))

        if k:
            codes = array("q")
            for key, cid in visited.items():
                base = key[:n]
                flat = key[n:]
                child_code = gid_of_local[cid]
                for t in range(0, 2 * k, 2):
                    parent_key = base + flat[:t] + flat[t + 2:]
                    parent_gid = prev_gid[prev_visited[parent_key]]
                    codes.append((parent_gid << 32) | child_code)
            raw = np.frombuffer(codes, dtype=np.int64).copy()
            levels[k] = _Level.from_raw(raw)
        prev_visited = visited
        prev_gid = gid_of_local

    return ModuliComplex(n=n, mode=mode, cells=cells,
                         grade_range=grade_range, levels=levels)


# ---------------------------------------------------------------------------
# counting in closed form


def tile_count(n, mode=PROJECTIVE):
    _check_mode(mode)
    if n < 3:
        raise RangeError(f"need n >= 3, got {n}")
    half = factorial(n - 1)
    return half if mode == DOUBLE_COVER else half // 2


def closed_form_f_vector(n, mode=PROJECTIVE):
    """Cell counts by codimension without enumeration.

    Classes carry 2^k dissections each, so codim k holds
    tiles * cayley_count(n, k) / 2^k cells.
    """
    _check_mode(mode)
    if n < 3:
        raise RangeError(f"need n >= 3, got {n}")
    out = []
    for k in range(n - 2):
        num = tile_count(n, mode) * cayley_count(n, k)
        denom = 1 << k
        assert num % denom == 0
        out.append(num // denom)
    return tuple(out)


def _double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def euler_closed_form(n):
    """Euler characteristic of the projective complex, in closed form.

    Zero for even n; for odd n the value is
    (-1)^((n-3)/2) * (n-2) * ((n-4)!!)^2.
    """
    if n < 4:
        raise RangeError(f"need n >= 4, got {n}")
    if n % 2 == 0:
        return 0
    sign = -1 if ((n - 3) // 2) % 2 else 1
    return sign * (n - 2) * _double_factorial(n - 4) ** 2


def euler_proof_sum(n):
    """The same Euler characteristic as an unsimplified alternating sum.

    Codim k carries (n-1)! * cayley_count(n, k) / 2^(k+1) cells of
    dimension n-3-k; summing signs over grades gives the characteristic
    without invoking the closed form.
    """
    if n < 4:
        raise RangeError(f"need n >= 4, got {n}")
    total = 0
    for k in range(n - 2):
        num = factorial(n - 1) * cayley_count(n, k)
        denom = 1 << (k + 1)
        assert num % denom == 0
        total += (-1) ** (n - 3 - k) * (num // denom)
    return total


# ---------------------------------------------------------------------------
# divisor subcomplexes


def _separating_diagonal(cell, subset):
    labels = cell.labels
    n = len(labels)
    complement = set(range(1, n + 1)) - subset
    hit = None
    for d in cell.diagonals:
        i, j = d
        part = set(labels[i:j])
        if part == subset or part == complement:
            assert hit is None, "two diagonals cut off the same label set"
            hit = d
    return hit


def divisor_subcomplex(complex_, subset):
    """Cells having a diagonal that splits off exactly the given labels.

    The subset is normalized to omit n (a diagonal separates S exactly
    when it separates the complement).  The result is a ModuliComplex
    with codim_offset 1 whose top cells are the codim-1 cells of the
    ambient complex carrying the split.
    """
    if complex_.mode != PROJECTIVE:
        raise MosaicError("divisor subcomplexes live in the projective complex")
    if complex_.codim_offset != 0:
        raise MosaicError("cannot take a divisor of a divisor")
    n = complex_.n
    S = frozenset(subset)
    if not S <= set(range(1, n + 1)):
        raise UnknownLabel(f"subset {sorted(S)!r} is not within 1..{n}")
    if not 2 <= len(S) <= n - 2:
        raise BadSubsetSize(f"need 2 <= |S| <= {n - 2}, got {sorted(S)}")
    if n in S:
        S = frozenset(range(1, n + 1)) - S

    selected = []
    for cell in complex_.cells:
        if cell.codim == 0:
            continue
        if _separating_diagonal(cell, S) is not None:
            selected.append(cell.index)
    selected_arr = np.asarray(selected, dtype=np.int64)
    new_id = np.full(len(complex_.cells), -1, dtype=np.int64)
    new_id[selected_arr] = np.arange(len(selected))
    keep_mask = new_id >= 0

    cells = [replace(complex_.cells[g], index=int(new_id[g])) for g in selected]
    grade_range = {}
    for k in sorted(complex_.grade_range):
        if k == 0:
            continue
        members = [c for c in cells if c.codim == k]
        if members:
            grade_range[k] = (members[0].index, members[-1].index + 1)
    levels = {}
    for k in sorted(complex_.levels):
        if k <= 1:
            continue
        level = complex_.levels[k]
        parent = level.pc_codes >> 32
        child = level.pc_codes & 0xFFFFFFFF
        keep = keep_mask[parent] & keep_mask[child]
        if not keep.any():
            continue
        codes = (new_id[parent[keep]] << 32) | new_id[child[keep]]
        levels[k] = _Level(codes, level.pc_counts[keep])
    return ModuliComplex(n=n, mode=PROJECTIVE, cells=cells,
                         grade_range=grade_range, levels=levels,
                         codim_offset=1, divisor_set=S)


def _arc_subdissection(labels, diagonals, x, y, label_map, seam_label):
    # the sub-polygon on the vertex arc x..y, its sides relabeled through
    # label_map and the chord (x, y) turned into one closing side
    n = len(labels)
    span = (y - x) % n
    side_labels = tuple(label_map[labels[(x + t) % n]] for t in range(span))
    inner = []
    for u, v in diagonals:
        du, dv = (u - x) % n, (v - x) % n
        if du <= span and dv <= span and {du, dv} != {0, span}:
            a, b = (du, dv) if du < dv else (dv, du)
            inner.append((a, b))
    return Dissection(side_labels + (seam_label,), frozenset(inner))


@dataclass
class DivisorReport:
    """Outcome of checking one divisor against its product model."""

    n: int
    subset: frozenset
    factor_sizes: tuple
    sub_f_vector: tuple = ()
    cells_checked: int = 0
    incidences_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def __str__(self):
        m1, m2 = self.factor_sizes
        verdict = "pass" if self.passed else f"{len(self.failures)} FAILURES"
        return (f"divisor {sorted(self.subset)} of n={self.n}: "
                f"{self.cells_checked} cells vs {m1}-gon x {m2}-gon product, "
                f"{self.incidences_checked} incidences: {verdict}")


def verify_divisor_factorization(complex_, subset, factors=None):
    """Check a divisor subcomplex against the product of two smaller complexes.

    Splitting every cell along its separating diagonal and relabeling
    each half must give a bijection onto pairs of cells of the
    (|S|+1)-gon and (n-|S|+1)-gon complexes, shifting grades by one and
    matching the incidence relation in both directions.
    """
    sub = divisor_subcomplex(complex_, subset)
    S = sub.divisor_set
    n = complex_.n
    m1, m2 = len(S) + 1, n - len(S) + 1
    if factors is None:
        factors = (build_complex(m1, PROJECTIVE), build_complex(m2, PROJECTIVE))
    factor_s, factor_c = factors
    assert factor_s.n == m1 and factor_c.n == m2

    inside = sorted(S)
    outside = sorted(set(range(1, n + 1)) - S)
    map_s = {x: t + 1 for t, x in enumerate(inside)}
    map_c = {x: t + 1 for t, x in enumerate(outside)}
    report = DivisorReport(n=n, subset=S, factor_sizes=(m1, m2),
                           sub_f_vector=sub.f_vector())

    image = {}
    for cell in sub.cells:
        d = _separating_diagonal(cell, S)
        i, j = d
        if set(cell.labels[i:j]) == S:
            arc_s, arc_c = (i, j), (j, i)
        else:
            arc_s, arc_c = (j, i), (i, j)
        diags = sorted(cell.diagonals)
        half_s = _arc_subdissection(cell.labels, diags, *arc_s, map_s, m1)
        half_c = _arc_subdissection(cell.labels, diags, *arc_c, map_c, m2)
        cs = factor_s.cell_for(half_s)
        cc = factor_c.cell_for(half_c)
        image[cell.index] = (cs.index, cc.index)
        report.cells_checked += 1
        if cell.codim != cs.codim + cc.codim + 1:
            report.failures.append(
                f"cell {cell.index}: codim {cell.codim} vs factors "
                f"{cs.codim}+{cc.codim}+1")

    expected = len(factor_s.cells) * len(factor_c.cells)
    if len(image) != expected or len(set(image.values())) != expected:
        report.failures.append(
            f"cell map is not a bijection: {len(set(image.values()))} distinct "
            f"images of {len(image)} cells, product has {expected}")
        return report

    sub_pairs = {(p, c) for p, c, _ in sub.boundary_pairs()}
    product_pairs = set()
    for p, c, _ in factor_s.boundary_pairs():
        for other in range(len(factor_c.cells)):
            product_pairs.add(((p, other), (c, other)))
    for p, c, _ in factor_c.boundary_pairs():
        for other in range(len(factor_s.cells)):
            product_pairs.add(((other, p), (other, c)))
    mapped_pairs = {(image[p], image[c]) for p, c in sub_pairs}
    report.incidences_checked = len(sub_pairs)
    if len(mapped_pairs) != len(sub_pairs):
        report.failures.append("incidence map collapsed distinct pairs")
    missing = mapped_pairs - product_pairs
    extra = product_pairs - mapped_pairs
    if missing:
        report.failures.append(
            f"{len(missing)} divisor incidences are not product incidences")
    if extra:
        report.failures.append(
            f"{len(extra)} product incidences are missing from the divisor")
    return report


def divisor_label_classes(n):
    """All label subsets giving distinct divisors, normalized to omit n."""
    out = set()
    full = frozenset(range(1, n + 1))
    for r in range(2, n - 1):
        for combo in combinations(range(1, n + 1), r):
            S = frozenset(combo)
            if n in S:
                S = full - S
            if 2 <= len(S) <= n - 2:
                out.add(S)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# the double cover mapping onto the projective complex


@dataclass
class CoveringReport:
    """Outcome of checking the 2-to-1 cell map double cover -> projective."""

    n: int
    mapping: tuple = ()
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def __str__(self):
        verdict = "pass" if self.passed else f"{len(self.failures)} FAILURES"
        return f"double cover of n={self.n}: {len(self.mapping)} cells map 2-to-1: {verdict}"


def covering_map(cover, projective):
    """Map each double-cover cell to its projective cell and verify.

    Every fiber must have exactly two cells and the boundary incidences
    must commute with the mapping, double counts included.
    """
    if cover.mode != DOUBLE_COVER or projective.mode != PROJECTIVE:
        raise MosaicError("need a double-cover complex and a projective complex")
    if cover.n != projective.n:
        raise MosaicError(f"sizes differ: {cover.n} vs {projective.n}")
    if not (cover.is_full_depth() and projective.is_full_depth()):
        raise MosaicError("covering check needs fully built complexes")
    report = CoveringReport(n=cover.n)
    mapping = []
    for cell in cover.cells:
        mapping.append(projective.cell_for(cell.representative).index)
    report.mapping = tuple(mapping)

    fibers = Counter(mapping)
    for cell in projective.cells:
        if fibers[cell.index] != 2:
            report.failures.append(
                f"fiber over projective cell {cell.index} has {fibers[cell.index]} cells")

    for k in sorted(cover.levels):
        pushed = Counter()
        for p, c, count in cover.levels[k].pairs():
            pushed[(mapping[p], mapping[c])] += count
        base = {(p, c): count for p, c, count in projective.levels[k].pairs()}
        for pair, count in pushed.items():
            if pair not in base:
                report.failures.append(
                    f"grade {k}: covering incidence {pair} missing downstairs")
        for pair, count in base.items():
            if pushed.get(pair, 0) != 2 * count:
                report.failures.append(
                    f"grade {k}: incidence {pair} lifts with multiplicity "
                    f"{pushed.get(pair, 0)}, expected {2 * count}")
    return report


# ---------------------------------------------------------------------------
# surface recognition for the 2-dimensional complexes


@dataclass(frozen=True)
class SurfaceReport:
    """Classification of a closed 2-dimensional complex."""

    euler: int
    orientable: bool
    identified_surface: str
    tiles: int
    edges: int
    vertices: int


def _tile_boundary_cycle(complex_, tile):
    # boundary of the 2-cell as an alternating cycle of edge and vertex
    # slots, read off the compatible-diagonal structure of the tile's
    # representative
    n = complex_.n
    base = tuple(sorted(tile.diagonals))
    labels = tile.labels
    candidates = [d for d in polygon_diagonals(n)
                  if d not in base
                  and all(not diagonals_cross(d, e, n) for e in base)]

    def classify(extra):
        diags = frozenset(base) | frozenset(extra)
        return complex_.cell_for(Dissection(labels, diags)).index

    edge_cells = {e: classify((e,)) for e in candidates}
    corner = {}
    fans = {e: [] for e in candidates}
    for a in range(len(candidates)):
        for b in range(a + 1, len(candidates)):
            e, f = candidates[a], candidates[b]
            if not diagonals_cross(e, f, n):
                corner[(e, f)] = classify((e, f))
                fans[e].append((e, f))
                fans[f].append((e, f))
    for e, pair_list in fans.items():
        if len(pair_list) != 2:
            raise NotASurface(
                f"tile {tile.index}: boundary edge {e} meets {len(pair_list)} corners")

    start = candidates[0]
    cycle = []
    prev_corner = fans[start][0]
    edge = start
    for _ in range(len(candidates)):
        next_corner = next(c for c in fans[edge] if c != prev_corner)
        cycle.append((edge_cells[edge], corner[prev_corner], corner[next_corner]))
        shared = next_corner
        edge = shared[0] if shared[1] == edge else shared[1]
        prev_corner = next_corner
    if edge != start:
        raise NotASurface(f"tile {tile.index}: boundary is not a single cycle")
    return cycle


def classify_surface(complex_):
    """Identify a closed surface from its tiling.

    Requires a 2-dimensional complex where every edge cell borders
    exactly two tile slots.  Orientability is decided by 2-coloring
    tiles so that every shared edge is traversed in opposite directions;
    the name then follows from the Euler characteristic.
    """
    if complex_.dimension != 2:
        raise NotASurface(f"complex has dimension {complex_.dimension}, need 2")
    if complex_.max_codim - complex_.codim_offset != 2:
        raise NotASurface("complex is not built to full depth")
    f = complex_.f_vector()
    n_tiles, n_edges, n_vertices = f
    euler = n_tiles - n_edges + n_vertices

    slots = {}
    tiles = complex_.tiles()
    tile_rank = {cell.index: t for t, cell in enumerate(tiles)}
    for cell in tiles:
        for edge_gid, corner_a, corner_b in _tile_boundary_cycle(complex_, cell):
            if corner_a == corner_b:
                raise NotASurface(
                    f"edge cell {edge_gid} has coinciding endpoints in tile {cell.index}")
            slots.setdefault(edge_gid, []).append(
                (tile_rank[cell.index], (corner_a, corner_b)))

    for edge_gid, entries in slots.items():
        if len(entries) != 2:
            raise NotASurface(f"edge cell {edge_gid} borders {len(entries)} tile slots")
        (_, dir1), (_, dir2) = entries
        if set(dir1) != set(dir2):
            raise NotASurface(f"edge cell {edge_gid} glues mismatched endpoints")

    orientable = _propagate_orientation(len(tiles), slots)

    if orientable:
        assert euler % 2 == 0
        genus = (2 - euler) // 2
        if genus == 0:
            name = "S_0 (sphere)"
        elif genus == 1:
            name = "S_1 (torus)"
        else:
            name = f"S_{genus} (orientable, genus {genus})"
    else:
        crosscaps = 2 - euler
        name = f"N_{crosscaps} (connected sum of {crosscaps} projective planes)"
    return SurfaceReport(euler=euler, orientable=orientable,
                         identified_surface=name, tiles=n_tiles,
                         edges=n_edges, vertices=n_vertices)


def _propagate_orientation(tile_count_, slots):
    # constraints: tiles traversing a shared edge in the same direction
    # must take opposite orientations, in reversed directions the same
    constraints = {t: [] for t in range(tile_count_)}
    forced_nonorientable = False
    for entries in slots.values():
        (t1, dir1), (t2, dir2) = entries
        same = dir1 == dir2
        if t1 == t2:
            if same:
                forced_nonorientable = True
            continue
        sign = -1 if same else 1
        constraints[t1].append((t2, sign))
        constraints[t2].append((t1, sign))

    orientation = [0] * tile_count_
    orientation[0] = 1
    queue = [0]
    seen = 1
    consistent = True
    while queue:
        t = queue.pop()
        for other, sign in constraints[t]:
            want = orientation[t] * sign
            if orientation[other] == 0:
                orientation[other] = want
                seen += 1
                queue.append(other)
            elif orientation[other] != want:
                consistent = False
    if seen != tile_count_:
        raise NotASurface("complex is not connected")
    return consistent and not forced_nonorientable
