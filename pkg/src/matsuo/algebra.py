"""Matsuo algebras over the rationals: product, Frobenius form, closure, axes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateFusionLaw, NotIdempotent, NotSemisimple, ValidationError
from .linalg import QMatrix, Subspace, nullspace_basis, nullity
from .transposition import TranspositionSystem

Element = list  # dense list of Fraction, one coordinate per point

_ZERO = Fraction(0)


def as_eta(value) -> Fraction:
    """Coerce to an exact rational, refusing floats."""
    if isinstance(value, float):
        raise ValidationError("eta must be an exact rational, not a float")
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


class MatsuoAlgebra:
    """The Matsuo algebra M_eta of a 3-transposition system.

    The basis is the point set of ``system``.  Elements are dense lists of
    Fractions.  Two product paths are used: a pairwise loop over nonzero
    coordinates for sparse operands and a line-based formula otherwise.
    """

    def __init__(self, system: TranspositionSystem, eta):
        eta = as_eta(eta)
        if eta in (0, 1):
            raise ValidationError(f"eta must avoid 0 and 1, got {eta}")
        self.system = system
        self.eta = eta
        self.half = eta / 2
        self.dim = system.n_points
        n = self.dim
        # for each point x, the pairs (y, z) with {x, y, z} a line
        through: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for a, b, c in system.lines:
            through[a].append((b, c))
            through[b].append((a, c))
            through[c].append((a, b))
        self._through = through
        self._neighbors = system.neighbors

    # -- elements ---------------------------------------------------------

    def zero(self) -> Element:
        return [_ZERO] * self.dim

    def basis_vector(self, c: int) -> Element:
        v = self.zero()
        v[c] = Fraction(1)
        return v

    def element(self, coeffs: dict[int, object] | Sequence) -> Element:
        if isinstance(coeffs, dict):
            v = self.zero()
            for c, x in coeffs.items():
                v[c] += Fraction(x)
            return v
        if len(coeffs) != self.dim:
            raise ValueError("wrong length")
        return [Fraction(x) for x in coeffs]

    # -- product ----------------------------------------------------------

    def t(self, v: Sequence) -> Element:
        """Collinearity map: d -> sum of the points collinear with d."""
        out = self.zero()
        for d, x in enumerate(v):
            if x:
                for c in self._neighbors[d]:
                    out[c] += x
        return out

    def basis_product(self, c: int, d: int) -> dict[int, Fraction]:
        if c == d:
            return {c: Fraction(1)}
        e = self.system.conj[c][d]
        if e == c:
            return {}
        h = self.half
        return {c: h, d: h, e: -h}

    def product(self, u: Sequence, v: Sequence) -> Element:
        su = {i: x for i, x in enumerate(u) if x}
        sv = {i: x for i, x in enumerate(v) if x}
        if len(su) * len(sv) <= 4 * self.dim:
            out = self.zero()
            for i, x in self.sparse_product(su, sv).items():
                out[i] = x
            return out
        return self._line_product(u, v)

    def sparse_product(self, su: dict[int, Fraction], sv: dict[int, Fraction]) -> dict[int, Fraction]:
        """Product of elements given as {point: nonzero coefficient}."""
        out: dict[int, Fraction] = {}
        conj = self.system.conj
        h = self.half
        for c, x in su.items():
            row = conj[c]
            for d, y in sv.items():
                if c == d:
                    out[c] = out.get(c, 0) + x * y
                    continue
                e = row[d]
                if e == c:
                    continue
                w = h * x * y
                out[c] = out.get(c, 0) + w
                out[d] = out.get(d, 0) + w
                out[e] = out.get(e, 0) - w
        return {i: x for i, x in out.items() if x}

    def _line_product(self, u: Sequence, v: Sequence) -> Element:
        tu, tv = self.t(u), self.t(v)
        h = self.half
        out = []
        for x in range(self.dim):
            ux, vx = u[x], v[x]
            cross = _ZERO
            for y, z in self._through[x]:
                uy, uz, vy, vz = u[y], u[z], v[y], v[z]
                if (uy and vz) or (uz and vy):
                    cross += uy * vz + uz * vy
            out.append(ux * vx + h * (ux * tv[x] + vx * tu[x] - cross))
        return out

    # -- form -------------------------------------------------------------

    def form(self, u: Sequence, v: Sequence) -> Fraction:
        """Frobenius form: 1 on the diagonal, eta/2 at collinear pairs."""
        tv = self.t(v)
        return sum((x * (v[i] + self.half * tv[i]) for i, x in enumerate(u) if x), _ZERO)

    def frobenius_gram(self) -> QMatrix:
        n = self.dim
        rows = [[_ZERO] * n for _ in range(n)]
        for c in range(n):
            rows[c][c] = Fraction(1)
            for d in self._neighbors[c]:
                rows[c][d] = self.half
        return QMatrix.from_rows(rows)

    def gram_restricted(self, vectors: Sequence[Sequence]) -> list[list[Fraction]]:
        """Gram matrix B L B^T for the rows B of ``vectors``."""
        lv = [[x + self.half * y for x, y in zip(v, self.t(v))] for v in vectors]
        return [[sum((a * b for a, b in zip(u, w) if a and b), _ZERO) for w in lv] for u in vectors]

    def _span_vectors(self, basis: Subspace | Sequence[Sequence] | None):
        if basis is None:
            return [self.basis_vector(c) for c in range(self.dim)]
        if isinstance(basis, Subspace):
            return [list(v) for v in basis.vectors]
        return [list(v) for v in basis]

    def radical_dim(self, basis: Subspace | Sequence[Sequence] | None = None) -> int:
        """Nullity of the form restricted to the span of ``basis`` (default: all of M)."""
        vecs = self._span_vectors(basis)
        if not vecs:
            return 0
        if basis is None:
            return nullity(self.frobenius_gram())
        return nullity(self.gram_restricted(vecs))

    def radical_basis(self, basis: Subspace | Sequence[Sequence] | None = None) -> Subspace:
        """R(U) = U intersected with its perp, as an echelonized subspace."""
        vecs = self._span_vectors(basis)
        out = Subspace(self.dim)
        if not vecs:
            return out
        gram = self.frobenius_gram().tolist() if basis is None else self.gram_restricted(vecs)
        for y in nullspace_basis(gram):
            v = self.zero()
            for k, coef in enumerate(y):
                if coef:
                    for j, x in enumerate(vecs[k]):
                        if x:
                            v[j] += coef * x
            out._insert(v)
        return out

    # -- subalgebras ------------------------------------------------------

    def subalgebra_closure(self, generators: Iterable[Sequence]) -> Subspace:
        """Smallest subalgebra containing ``generators``.

        Spanning vectors are kept in insertion order; each round multiplies the
        vectors added in the previous round against everything seen so far.
        """
        span = Subspace(self.dim)
        gens: list[list[Fraction]] = []
        for g in generators:
            g = [Fraction(x) for x in g]
            if span._insert(g):
                gens.append(g)
        if not gens:
            raise ValueError("need at least one nonzero generator")
        new_from = 0
        while new_from < len(gens):
            stop = len(gens)
            for i in range(new_from, stop):
                for j in range(i + 1):
                    p = self.product(gens[i], gens[j])
                    if span._insert(p):
                        gens.append(p)
            new_from = stop
        return span

    def is_idempotent(self, a: Sequence) -> bool:
        return self.product(a, a) == [Fraction(x) for x in a]


# ---------------------------------------------------------------------------
# fusion laws and axes

@dataclass(frozen=True)
class FusionLaw:
    name: str
    values: tuple[Fraction, ...]
    table: dict = field(hash=False, compare=False)

    def star(self, lam, mu) -> frozenset:
        return self.table[frozenset((lam, mu))]

    @classmethod
    def jordan(cls, eta) -> FusionLaw:
        eta = as_eta(eta)
        one, zero = Fraction(1), Fraction(0)
        if eta in (one, zero):
            raise DegenerateFusionLaw(f"J({eta}) has coinciding eigenvalues")
        f = frozenset
        table = {
            f((one,)): f((one,)), f((one, zero)): f(), f((one, eta)): f((eta,)),
            f((zero,)): f((zero,)), f((zero, eta)): f((eta,)), f((eta,)): f((one, zero)),
        }
        return cls(f"J({eta})", (one, zero, eta), table)

    @classmethod
    def monster(cls, alpha, beta) -> FusionLaw:
        a, b = as_eta(alpha), as_eta(beta)
        one, zero = Fraction(1), Fraction(0)
        if len({one, zero, a, b}) != 4:
            raise DegenerateFusionLaw(f"M({a}, {b}) has coinciding eigenvalues")
        f = frozenset
        table = {
            f((one,)): f((one,)), f((one, zero)): f(), f((one, a)): f((a,)), f((one, b)): f((b,)),
            f((zero,)): f((zero,)), f((zero, a)): f((a,)), f((zero, b)): f((b,)),
            f((a,)): f((one, zero)), f((a, b)): f((b,)), f((b,)): f((one, zero, a)),
        }
        return cls(f"M({a}, {b})", (one, zero, a, b), table)


@dataclass
class AxisReport:
    law: str
    eigenspace_dims: dict[Fraction, int]
    primitive: bool
    violations: list[tuple[Fraction, Fraction]]

    @property
    def eigenvalues(self) -> list[Fraction]:
        return [lam for lam, d in self.eigenspace_dims.items() if d]

    @property
    def passed(self) -> bool:
        return not self.violations


def check_axis(M: MatsuoAlgebra, a: Sequence, law: FusionLaw, within: Subspace | None = None) -> AxisReport:
    """Decompose ``within`` (default: M) under ad_a and test the fusion rules.

    Raises NotIdempotent if a*a != a and NotSemisimple if the eigenspaces for
    the law's eigenvalues do not fill the space.  Fusion failures are returned
    as (lambda, mu) pairs rather than raised.
    """
    a = [Fraction(x) for x in a]
    if not any(a) or not M.is_idempotent(a):
        raise NotIdempotent("element is zero or not idempotent")
    if within is None:
        space = [M.basis_vector(c) for c in range(M.dim)]

        def coords(v):
            return v
    else:
        if a not in within:
            raise ValidationError("axis does not lie in the given subalgebra")
        space = [list(v) for v in within.vectors]
        coords = within.coordinates
    dim = len(space)
    images = [coords(M.product(a, b)) for b in space]  # column i = ad_a(b_i)
    eigvecs: dict[Fraction, list[list[Fraction]]] = {}
    for lam in law.values:
        shifted = [[images[i][j] - (lam if i == j else 0) for i in range(dim)] for j in range(dim)]
        vecs = []
        for y in nullspace_basis(shifted):
            v = M.zero()
            for k, coef in enumerate(y):
                if coef:
                    for j, x in enumerate(space[k]):
                        if x:
                            v[j] += coef * x
            vecs.append(v)
        eigvecs[lam] = vecs
    total = sum(len(v) for v in eigvecs.values())
    if total != dim:
        raise NotSemisimple(f"eigenspaces of {law.name} span {total} of {dim} dimensions")

    sa = {i: x for i, x in enumerate(a) if x}

    def lands_in(w: dict, target) -> bool:
        # ad_a is semisimple here, so w lies in the target eigenspaces
        # exactly when the product of (ad_a - nu) over the target kills it
        for nu in target:
            if not w:
                return True
            aw = M.sparse_product(sa, w)
            if nu:
                for j, y in w.items():
                    aw[j] = aw.get(j, 0) - nu * y
                aw = {j: x for j, x in aw.items() if x}
            w = aw
        return not w

    sparse = {lam: [{i: x for i, x in enumerate(v) if x} for v in vecs] for lam, vecs in eigvecs.items()}
    violations = []
    present = [lam for lam in law.values if eigvecs[lam]]
    for i, lam in enumerate(present):
        for mu in present[i:]:
            target = law.star(lam, mu)
            bad = False
            for x, u in enumerate(sparse[lam]):
                start = x if lam == mu else 0
                for v in sparse[mu][start:]:
                    w = M.sparse_product(u, v)
                    if within is not None:
                        dense = M.zero()
                        for j, y in w.items():
                            dense[j] = y
                        bad = dense not in within
                    if not bad and not lands_in(w, target):
                        bad = True
                    if bad:
                        break
                if bad:
                    break
            if bad:
                violations.append((lam, mu))
    dims = {lam: len(eigvecs[lam]) for lam in law.values}
    return AxisReport(law.name, dims, dims[Fraction(1)] == 1, violations)
