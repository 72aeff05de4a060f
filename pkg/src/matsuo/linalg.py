"""Exact dense linear algebra over the rationals and over prime fields.

Matrices are small (at most a few hundred rows) but every entry is exact, so
the kernels below avoid Fraction arithmetic wherever integers suffice:
``rank`` clears denominators row by row and eliminates over Z with gcd
normalisation, and Krylov sequences for minimal polynomials are integer
vectors.  Reduced echelon forms (needed for explicit bases) use Fraction.

Pivoting is always "first nonzero entry in column order", so every basis
returned here is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import DenominatorDivisibleByP, ValidationError
from .poly import IntPoly, poly_lcm

Number = Union[int, Fraction]


class QMatrix:
    """Immutable dense matrix of exact rationals, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Number]):
        entries = tuple(Fraction(x) for x in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Number]]) -> QMatrix:
        data = [list(r) for r in data]
        cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged rows")
        return cls(len(data), cols, (x for r in data for x in r))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> QMatrix:
        return QMatrix(self.cols, self.rows,
                       (self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: QMatrix) -> QMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: QMatrix) -> QMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c: Number) -> QMatrix:
        return QMatrix(self.rows, self.cols, (c * a for a in self.entries))

    def __matmul__(self, other: QMatrix) -> QMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols_b = [other.transpose().row(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for cb in cols_b:
                out.append(sum((a * b for a, b in zip(r, cb) if a and b), Fraction(0)))
        return QMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence[Number]) -> list[Fraction]:
        return [sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                for i in range(self.rows)]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols})"


MatrixLike = Union[QMatrix, Sequence[Sequence[Number]]]


def as_rows(m: MatrixLike) -> list[list[Number]]:
    """Fresh list-of-rows copy of a matrix."""
    if isinstance(m, QMatrix):
        return m.tolist()
    return [list(r) for r in m]


def _ncols(m: MatrixLike, rows: list) -> int:
    if isinstance(m, QMatrix):
        return m.cols
    return len(rows[0]) if rows else 0


def _integer_row(row: Sequence[Number]) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def _normalise(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _rank_integer_rows(rows: list[list[int]], ncols: int) -> int:
    rows = [_normalise(r) for r in rows if any(r)]
    rank = 0
    for col in range(ncols):
        if not rows:
            break
        best = None
        for idx, r in enumerate(rows):
            if r[col] and (best is None or abs(r[col]) < abs(rows[best][col])):
                best = idx
                if abs(r[col]) == 1:
                    break
        if best is None:
            continue
        piv = rows.pop(best)
        pv = piv[col]
        nz = [j for j in range(col, ncols) if piv[j]]
        nxt = []
        for r in rows:
            f = r[col]
            if f:
                g = gcd(pv, f)
                a, b = pv // g, f // g
                r = [x * a for x in r]
                for j in nz:
                    r[j] -= b * piv[j]
                r = _normalise(r)
                if any(r):
                    nxt.append(r)
            else:
                nxt.append(r)
        rows = nxt
        rank += 1
    return rank


def rank(m: MatrixLike) -> int:
    """Rank over Q, by fraction-free elimination on denominator-cleared rows."""
    rows = as_rows(m)
    return _rank_integer_rows([_integer_row(r) for r in rows], _ncols(m, rows))


def nullity(m: MatrixLike) -> int:
    rows = as_rows(m)
    return _ncols(m, rows) - rank(rows) if rows else _ncols(m, rows)


def rref(m: MatrixLike) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.

    Returns:
        (rows, pivots): the nonzero rows of the RREF and their pivot columns.
    """
    rows = [[Fraction(x) for x in r] for r in as_rows(m)]
    ncols = _ncols(m, rows)
    pivots: list[int] = []
    done: list[list[Fraction]] = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(rows) if r[col] != 0), None)
        if idx is None:
            continue
        piv = rows.pop(idx)
        inv = 1 / piv[col]
        piv = [x * inv for x in piv]
        nz = [j for j in range(col, ncols) if piv[j]]
        for r in rows:
            f = r[col]
            if f:
                for j in nz:
                    r[j] -= f * piv[j]
        for r in done:
            f = r[col]
            if f:
                for j in nz:
                    r[j] -= f * piv[j]
        rows = [r for r in rows if any(r)]
        done.append(piv)
        pivots.append(col)
    return done, pivots


def nullspace_basis(m: MatrixLike) -> list[list[Fraction]]:
    """Basis of the right nullspace in reduced echelon form (empty iff full column rank)."""
    rows = as_rows(m)
    ncols = _ncols(m, rows)
    red, pivots = rref(rows) if rows else ([], [])
    pivset = set(pivots)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = -r[f]
        vecs.append(v)
    if not vecs:
        return []
    basis, _ = rref(vecs)
    return basis


def mat_vec(m: MatrixLike, v: Sequence[Number]) -> list:
    return [sum(a * b for a, b in zip(r, v)) for r in as_rows(m)]


def evaluate_poly_at_matrix(p: IntPoly, m: MatrixLike) -> list[list[Number]]:
    """p(m) by Horner's rule."""
    rows = as_rows(m)
    n = len(rows)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(p.coeffs):
        acc = [[sum(acc[i][k] * rows[k][j] for k in range(n) if acc[i][k] and rows[k][j])
                for j in range(n)] for i in range(n)]
        for i in range(n):
            acc[i][i] += c
    return acc


def _int_square(m: MatrixLike) -> list[list[int]]:
    rows = as_rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    out = []
    for r in rows:
        ir = []
        for x in r:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError("matrix must have integer entries")
                x = x.numerator
            ir.append(int(x))
        out.append(ir)
    return out


def _local_minimal_polynomial(sparse_rows: list[list[tuple[int, int]]], n: int, start: int) -> IntPoly:
    """Minimal polynomial of the Krylov sequence e_start, Me, M^2e, ..."""
    # echelon rows, each with its expression in the Krylov vectors K_0, K_1, ...
    echelon: list[tuple[int, list[Fraction], dict[int, Fraction]]] = []
    v = [0] * n
    v[start] = 1
    step = 0
    while True:
        vec = [Fraction(x) for x in v]
        combo = {step: Fraction(1)}
        for pc, row, rc in echelon:
            f = vec[pc]
            if f:
                for j in range(pc, n):
                    if row[j]:
                        vec[j] -= f * row[j]
                for k, c in rc.items():
                    combo[k] = combo.get(k, 0) - f * c
        pc = next((j for j in range(n) if vec[j] != 0), None)
        if pc is None:
            return IntPoly(combo.get(k, 0) for k in range(step + 1))
        inv = 1 / vec[pc]
        echelon.append((pc, [x * inv for x in vec], {k: c * inv for k, c in combo.items()}))
        v = [sum(x * v[j] for j, x in sparse_rows[i]) for i in range(n)]
        step += 1


def minimal_polynomial(m: MatrixLike) -> IntPoly:
    """Monic minimal polynomial of a square integer matrix.

    Each standard basis vector's Krylov sequence is followed to its first
    linear dependence; the answer is the lcm of those local polynomials.
    """
    rows = _int_square(m)
    n = len(rows)
    if n == 0:
        return IntPoly([1])
    sparse = [[(j, x) for j, x in enumerate(r) if x] for r in rows]
    result = IntPoly([1])
    seen: set[IntPoly] = set()
    for i in range(n):
        loc = _local_minimal_polynomial(sparse, n, i)
        if loc not in seen:
            seen.add(loc)
            result = poly_lcm(result, loc)
    return result


def eigen_multiplicity(m: MatrixLike, rho: Number) -> int:
    """dim - rank(m - rho I): the geometric multiplicity of rho."""
    rows = as_rows(m)
    n = len(rows)
    shifted = [[x - rho if i == j else x for j, x in enumerate(r)] for i, r in enumerate(rows)]
    return n - rank(shifted)


# ---------------------------------------------------------------------------
# prime fields

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p) or self.p == 2:
            raise ValidationError(f"{self.p} is not an odd prime")

    def reduce(self, x: Number) -> int:
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise DenominatorDivisibleByP(x, self.p)
        return x.numerator * pow(x.denominator, -1, self.p) % self.p


def mod_p(m: MatrixLike, field: PrimeField) -> list[list[int]]:
    """Entry-wise reduction; raises DenominatorDivisibleByP where impossible."""
    return [[field.reduce(x) for x in r] for r in as_rows(m)]


def rref_mod_p(m: Sequence[Sequence[int]], field: PrimeField) -> tuple[list[list[int]], list[int]]:
    p = field.p
    rows = [[x % p for x in r] for r in m]
    ncols = len(rows[0]) if rows else 0
    done: list[list[int]] = []
    pivots: list[int] = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(rows) if r[col]), None)
        if idx is None:
            continue
        piv = rows.pop(idx)
        inv = pow(piv[col], -1, p)
        piv = [x * inv % p for x in piv]
        nz = [j for j in range(col, ncols) if piv[j]]
        for r in rows + done:
            f = r[col]
            if f:
                for j in nz:
                    r[j] = (r[j] - f * piv[j]) % p
        rows = [r for r in rows if any(r)]
        done.append(piv)
        pivots.append(col)
    return done, pivots


def rank_mod_p(m: Sequence[Sequence[int]], field: PrimeField) -> int:
    return len(rref_mod_p(m, field)[1])


def nullspace_mod_p(m: Sequence[Sequence[int]], field: PrimeField) -> list[list[int]]:
    p = field.p
    red, pivots = rref_mod_p(m, field)
    ncols = len(m[0]) if m else 0
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for r, pc in zip(red, pivots):
            v[pc] = -r[f] % p
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Subspace of Q^n held as a reduced row echelon basis.

    Instances are treated as immutable once returned from a public function;
    ``_insert`` is the incremental path used while a basis is being built.
    """

    __slots__ = ("n", "_rows", "_pivots")

    def __init__(self, n: int, vectors: Iterable[Sequence[Number]] = ()):
        self.n = n
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []
        for v in vectors:
            self._insert(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def vectors(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(r) for r in self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._pivots)

    def reduce(self, v: Sequence[Number]) -> list[Fraction]:
        w = [Fraction(x) for x in v]
        for row, pc in zip(self._rows, self._pivots):
            f = w[pc]
            if f:
                for j in range(pc, self.n):
                    if row[j]:
                        w[j] -= f * row[j]
        return w

    def contains(self, v: Sequence[Number]) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence[Number]) -> list[Fraction]:
        """Coefficients of v in the echelon basis; raises if v is outside."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return [Fraction(v[pc]) for pc in self._pivots]

    def _insert(self, v: Sequence[Number]) -> bool:
        w = self.reduce(v)
        pc = next((j for j in range(self.n) if w[j] != 0), None)
        if pc is None:
            return False
        inv = 1 / w[pc]
        w = [x * inv for x in w]
        nz = [j for j in range(pc, self.n) if w[j]]
        for row in self._rows:
            f = row[pc]
            if f:
                for j in nz:
                    row[j] -= f * w[j]
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] < pc:
            pos += 1
        self._rows.insert(pos, w)
        self._pivots.insert(pos, pc)
        return True

    def sum(self, other: Subspace) -> Subspace:
        return Subspace(self.n, list(self._rows) + list(other._rows))

    def intersection(self, other: Subspace) -> Subspace:
        """Kernel of [U | -V] read back through U."""
        a, b = self.dim, other.dim
        if a == 0 or b == 0:
            return Subspace(self.n)
        cols = [list(r) for r in self._rows] + [[-x for x in r] for r in other._rows]
        stacked = [[cols[k][i] for k in range(a + b)] for i in range(self.n)]
        out = Subspace(self.n)
        for y in nullspace_basis(stacked):
            v = [Fraction(0)] * self.n
            for k in range(a):
                if y[k]:
                    for j, x in enumerate(self._rows[k]):
                        if x:
                            v[j] += y[k] * x
            out._insert(v)
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.n == other.n
                and self._pivots == other._pivots and self._rows == other._rows)

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains(r) for r in self._rows)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.n})"
