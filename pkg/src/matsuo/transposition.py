"""3-transposition systems given purely by their conjugation action.

A system is the point set D = {0, ..., n-1} with a table ``conj`` where
``conj[c][d]`` is the index of c^d.  The group generated by D is never built;
everything downstream (Fischer space, Matsuo algebra, flips) only needs the
action.  Built-in constructors produce points in a canonical order so that
matrices and reports are reproducible.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import InvalidConjugation, NonUniformClasses, QuotientIllDefined
from .linalg import QMatrix


@dataclass(frozen=True, eq=False)
class TranspositionSystem:
    conj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    @property
    def n_points(self) -> int:
        return len(self.conj)

    def __len__(self) -> int:
        return len(self.conj)

    def __eq__(self, other) -> bool:
        return isinstance(other, TranspositionSystem) and self.conj == other.conj

    def __hash__(self) -> int:
        return hash(self.conj)

    def label(self, c: int) -> str:
        return self.labels[c] if self.labels else str(c)

    def order(self, c: int, d: int) -> int:
        """Order of the product cd: 1, 2 or 3."""
        if c == d:
            return 1
        return 2 if self.conj[c][d] == c else 3

    def collinear(self, c: int, d: int) -> bool:
        return c != d and self.conj[c][d] != c

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """A_d: the points collinear with d."""
        return tuple(tuple(c for c in range(self.n_points) if self.collinear(d, c))
                     for d in range(self.n_points))

    @cached_property
    def commuting(self) -> tuple[tuple[int, ...], ...]:
        """D_d: the points distinct from d that commute with it."""
        return tuple(tuple(c for c in range(self.n_points) if c != d and self.conj[d][c] == d)
                     for d in range(self.n_points))

    @cached_property
    def lines(self) -> tuple[tuple[int, int, int], ...]:
        out = set()
        for c in range(self.n_points):
            for d in self.neighbors[c]:
                if c < d:
                    out.add(tuple(sorted((c, d, self.conj[c][d]))))
        return tuple(sorted(out))

    def collinearity_matrix(self) -> list[list[int]]:
        n = self.n_points
        t = [[0] * n for _ in range(n)]
        for d, nb in enumerate(self.neighbors):
            for c in nb:
                t[d][c] = 1
        return t

    def fischer_space(self) -> FischerSpace:
        return FischerSpace(self, self.lines, QMatrix.from_rows(self.collinearity_matrix()))

    def to_json(self) -> dict:
        out = {"n_points": self.n_points, "conj": [list(r) for r in self.conj]}
        if self.labels:
            out["labels"] = list(self.labels)
        return out


@dataclass(frozen=True)
class FischerSpace:
    system: TranspositionSystem
    lines: tuple[tuple[int, int, int], ...]
    adjacency: QMatrix


@dataclass(frozen=True)
class EquivalenceData:
    relation: str  # "tau" or "theta"
    classes: tuple[tuple[int, ...], ...]
    class_size: int
    h: int

    @property
    def trivial(self) -> bool:
        return self.class_size == 1

    def class_of(self) -> list[int]:
        out = [0] * sum(len(c) for c in self.classes)
        for i, cls in enumerate(self.classes):
            for c in cls:
                out[c] = i
        return out


# ---------------------------------------------------------------------------
# validation and ingestion

def validate(conj: Sequence[Sequence[int]]) -> None:
    """Check the five structural axioms; raise InvalidConjugation on the first failure."""
    n = len(conj)
    for c, row in enumerate(conj):
        if len(row) != n:
            raise InvalidConjugation("square table", (c,), f"row has length {len(row)}, expected {n}")
        for d, x in enumerate(row):
            if not (isinstance(x, (int, np.integer)) and 0 <= x < n):
                raise InvalidConjugation("point range", (c, d), f"entry {x!r}")
    for c in range(n):
        if conj[c][c] != c:
            raise InvalidConjugation("c^c = c", (c,))
    for c in range(n):
        for d in range(n):
            if c != d and conj[c][d] == d:
                raise InvalidConjugation("order classification", (c, d), "c^d = d with c != d")
    for c in range(n):
        for d in range(n):
            e = conj[c][d]
            if c == d or e == c:
                continue
            want = {(d, c): e, (c, e): d, (e, c): d, (d, e): c, (e, d): c}
            for (x, y), z in want.items():
                if conj[x][y] != z:
                    raise InvalidConjugation("line closure", (c, d, e),
                                             f"conj[{x}][{y}] = {conj[x][y]}, expected {z}")
    for c in range(n):
        for d in range(n):
            if (conj[c][d] != c) != (conj[d][c] != d):
                raise InvalidConjugation("collinearity symmetry", (c, d))
    table = np.asarray(conj, dtype=np.int64)
    for d in range(n):
        col = table[:, d]
        lhs = table[col[:, None], col[None, :]]
        rhs = col[table]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b = (int(x) for x in bad[0])
            raise InvalidConjugation("conjugation by automorphisms", (a, b, d))


def from_conjugation_table(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                           trusted: bool = False) -> TranspositionSystem:
    """Build a system from a conjugation table, validating it unless ``trusted``."""
    conj = tuple(tuple(int(x) if isinstance(x, (int, np.integer)) else x for x in row) for row in table)
    if not trusted:
        validate(conj)
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != len(conj):
            raise InvalidConjugation("labels", (len(labels),), "label count differs from point count")
    return TranspositionSystem(conj, labels)


def from_json(data: dict | str) -> TranspositionSystem:
    """Ingest ``{"n_points": N, "conj": [[...]], "labels": [...]}``."""
    if isinstance(data, str):
        data = json.loads(data)
    n = data.get("n_points")
    conj = data.get("conj")
    if not isinstance(n, int) or not isinstance(conj, list):
        raise InvalidConjugation("schema", (), "need integer n_points and list conj")
    if len(conj) != n:
        raise InvalidConjugation("schema", (n,), f"conj has {len(conj)} rows")
    return from_conjugation_table(conj, data.get("labels"))


def _from_elements(points: Sequence[Hashable], conjugate: Callable[[Hashable, Hashable], Hashable],
                   labels: Sequence[str], trusted: bool) -> TranspositionSystem:
    index = {p: i for i, p in enumerate(points)}
    conj = [[index[conjugate(c, d)] for d in points] for c in points]
    return from_conjugation_table(conj, labels, trusted=trusted)


# ---------------------------------------------------------------------------
# built-in constructors

def symmetric_group(n: int, trusted: bool = True) -> TranspositionSystem:
    """Transpositions (i,j), i<j, of S_n in lexicographic order (labels are 1-based)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    pts = list(itertools.combinations(range(n), 2))

    def conj(c, d):
        i, j = d
        swap = {i: j, j: i}
        a, b = (swap.get(x, x) for x in c)
        return (min(a, b), max(a, b))

    labels = [f"({i + 1},{j + 1})" for i, j in pts]
    return _from_elements(pts, conj, labels, trusted)


def symplectic_form(u: int, v: int, m: int) -> int:
    """Standard alternating form on F_2^{2m}, coordinates paired (1,2), (3,4), ...

    Vectors are integers whose most significant of 2m bits is coordinate 1.
    """
    s = 0
    for i in range(m):
        hi = 2 * m - 1 - 2 * i  # bit of coordinate 2i+1
        lo = hi - 1
        s ^= (((u >> hi) & 1) & ((v >> lo) & 1)) ^ (((u >> lo) & 1) & ((v >> hi) & 1))
    return s


def _bits(v: int, width: int) -> str:
    return format(v, f"0{width}b")


def symplectic_group(m: int, trusted: bool = True) -> TranspositionSystem:
    """Transvections of Sp(2m, 2), identified with the nonzero vectors of F_2^{2m}.

    Point index i corresponds to the vector with integer value i + 1, which is
    also lexicographic order on coordinate tuples.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    vecs = list(range(1, 2 ** (2 * m)))
    return _symplectic_subsystem(vecs, m, trusted)


def _symplectic_subsystem(vecs: Sequence[int], m: int, trusted: bool) -> TranspositionSystem:
    def conj(u, v):
        return u ^ v if symplectic_form(u, v, m) else u

    return _from_elements(list(vecs), conj, [_bits(v, 2 * m) for v in vecs], trusted)


def quadratic_form(v: int, m: int, eps: str) -> int:
    """Quadratic form of type eps on F_2^{2m} polarising to ``symplectic_form``."""
    q = 0
    for i in range(m):
        hi = 2 * m - 1 - 2 * i
        a, b = (v >> hi) & 1, (v >> (hi - 1)) & 1
        q ^= a & b
        if eps == "-" and i == m - 1:
            q ^= a ^ b
    return q


def orthogonal_f2_group(m: int, eps: str, trusted: bool = True) -> TranspositionSystem:
    """Reflections of O^eps(2m, 2): nonsingular vectors (Q(v) = 1) of F_2^{2m}."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if eps not in ("+", "-"):
        raise ValueError("eps must be '+' or '-'")
    vecs = [v for v in range(1, 2 ** (2 * m)) if quadratic_form(v, m, eps) == 1]
    return _symplectic_subsystem(vecs, m, trusted)


def _semidirect_conj(q: int, n: int):
    """Conjugation d c d in F_q^n : S_n, elements (vector, permutation-tuple)."""

    def act(perm, w):
        out = [0] * n
        for i, x in enumerate(w):
            out[perm[i]] = x
        return out

    def mul(x, y):
        v, s = x
        w, t = y
        sw = act(s, w)
        return (tuple((a + b) % q for a, b in zip(v, sw)), tuple(s[t[i]] for i in range(n)))

    def conj(c, d):
        return mul(mul(d, c), d)

    return conj


def _transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    perm = list(range(n))
    perm[i], perm[j] = j, i
    return tuple(perm)


def two_cover_sn(n: int, trusted: bool = True) -> TranspositionSystem:
    """The class {(i,j), v_ij (i,j)} of 2^{n-1}:S_n, ordered by (pair, eps)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    pts, labels = [], []
    for i, j in itertools.combinations(range(n), 2):
        for eps in (0, 1):
            v = [0] * n
            if eps:
                v[i] = v[j] = 1
            pts.append((tuple(v), _transposition(n, i, j)))
            labels.append(f"({i + 1},{j + 1})" + ("'" if eps else ""))
    return _from_elements(pts, _semidirect_conj(2, n), labels, trusted)


def three_cover_sn(n: int, trusted: bool = True) -> TranspositionSystem:
    """The class {(i,j), v_ij (i,j), v_ji (i,j)} of 3^{n-1}:S_n, ordered by (pair, eps)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    pts, labels = [], []
    for i, j in itertools.combinations(range(n), 2):
        for eps in (0, 1, 2):
            v = [0] * n
            if eps == 1:
                v[i], v[j] = 1, 2
            elif eps == 2:
                v[i], v[j] = 2, 1
            pts.append((tuple(v), _transposition(n, i, j)))
            labels.append(f"({i + 1},{j + 1})" + "'" * eps)
    return _from_elements(pts, _semidirect_conj(3, n), labels, trusted)


def disjoint_union(*systems: TranspositionSystem) -> TranspositionSystem:
    """Commuting union: points of different summands commute."""
    offsets = list(itertools.accumulate([0] + [s.n_points for s in systems]))
    n = offsets[-1]
    conj = [[c] * n for c in range(n)]
    labels = []
    for k, s in enumerate(systems):
        o = offsets[k]
        for c in range(s.n_points):
            for d in range(s.n_points):
                conj[o + c][o + d] = o + s.conj[c][d]
            labels.append(f"{k}:{s.label(c)}")
    return TranspositionSystem(tuple(tuple(r) for r in conj), tuple(labels))


# ---------------------------------------------------------------------------
# structure

def connected_components(sys: TranspositionSystem) -> list[list[int]]:
    """Components of the collinearity graph, each sorted, ordered by least point."""
    seen = [False] * sys.n_points
    comps = []
    for s in range(sys.n_points):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            c = stack.pop()
            comp.append(c)
            for d in sys.neighbors[c]:
                if not seen[d]:
                    seen[d] = True
                    stack.append(d)
        comps.append(sorted(comp))
    return comps


def is_connected(sys: TranspositionSystem) -> bool:
    return len(connected_components(sys)) <= 1


def _classes_by(sys: TranspositionSystem, key: Callable[[int], Hashable], relation: str, base: int) -> EquivalenceData:
    groups: dict[Hashable, list[int]] = {}
    for c in range(sys.n_points):
        groups.setdefault(key(c), []).append(c)
    classes = tuple(sorted(tuple(g) for g in groups.values()))
    sizes = {len(c) for c in classes}
    if len(sizes) != 1:
        raise NonUniformClasses(f"{relation}-classes have sizes {sorted(sizes)}")
    size = sizes.pop()
    h, s = 0, size
    while s % base == 0:
        s //= base
        h += 1
    if s != 1:
        raise NonUniformClasses(f"{relation}-class size {size} is not a power of {base}")
    return EquivalenceData(relation, classes, size, h)


def tau_classes(sys: TranspositionSystem) -> EquivalenceData:
    """d tau e iff A_d = A_e."""
    return _classes_by(sys, lambda c: frozenset(sys.neighbors[c]), "tau", 2)


def theta_classes(sys: TranspositionSystem) -> EquivalenceData:
    """d theta e iff D_d = D_e."""
    return _classes_by(sys, lambda c: frozenset(sys.commuting[c]), "theta", 3)


def quotient(sys: TranspositionSystem, eq: EquivalenceData) -> tuple[TranspositionSystem, tuple[int, ...]]:
    """Factor system on the classes of ``eq`` and the projection point -> class."""
    proj = eq.class_of()
    k = len(eq.classes)
    conj = [[-1] * k for _ in range(k)]
    for c in range(sys.n_points):
        for d in range(sys.n_points):
            x, y, z = proj[c], proj[d], proj[sys.conj[c][d]]
            if conj[x][y] == -1:
                conj[x][y] = z
            elif conj[x][y] != z:
                raise QuotientIllDefined(f"class of {c}^{d} is not determined by the classes of {c}, {d}")
    labels = ["{" + ",".join(sys.label(c) for c in cls) + "}" for cls in eq.classes]
    try:
        q = from_conjugation_table(conj, labels)
    except InvalidConjugation as exc:
        raise QuotientIllDefined(str(exc)) from exc
    return q, tuple(proj)


def normal_closure(sys: TranspositionSystem, seed: Iterable[int]) -> list[int]:
    """Smallest set containing ``seed`` closed under mutual conjugation."""
    current = set(seed)
    if not current:
        raise ValueError("seed must be nonempty")
    frontier = set(current)
    while frontier:
        new = set()
        pts = list(current)
        for c in pts:
            row = sys.conj[c]
            for d in pts:
                if c in frontier or d in frontier:
                    e = row[d]
                    if e not in current:
                        new.add(e)
        current |= new
        frontier = new
    return sorted(current)


def restrict(sys: TranspositionSystem, points: Sequence[int]) -> TranspositionSystem:
    """Subsystem on a conjugation-closed subset, re-indexed in the given order."""
    index = {p: i for i, p in enumerate(points)}
    conj = []
    for c in points:
        row = []
        for d in points:
            e = sys.conj[c][d]
            if e not in index:
                raise ValueError(f"point set not closed: {c}^{d} = {e}")
            row.append(index[e])
        conj.append(tuple(row))
    labels = tuple(sys.label(p) for p in points) if sys.labels else None
    return TranspositionSystem(tuple(conj), labels)
