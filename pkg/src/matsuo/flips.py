"""Flips of 3-transposition systems and the subalgebras they fix.

A flip is stored as a permutation of the point set.  From it we derive the
orbit classification, the fixed subspace M_sigma, its complement W spanned by
skew vectors, the flip subalgebra A, the ambient subsystem, multiplicities of
the collinearity map on W (three ways: linear equations, reduction to a
quotient, direct restriction), and the radical tables built from them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .algebra import MatsuoAlgebra
from .errors import (Irreducible, NonIntegralSolution, NotAutomorphism, NotInvolution, Underdetermined,
                     ValidationError, WrongFlipKind)
from .linalg import Subspace, eigen_multiplicity
from .spectral import CriticalEntry, CriticalReport, Spectrum, exclusion_reason, spectrum
from .transposition import (TranspositionSystem, connected_components, normal_closure, quotient, restrict,
                            symplectic_form, symplectic_group, tau_classes, theta_classes)


@dataclass(frozen=True)
class Flip:
    perm: tuple[int, ...]

    @property
    def order(self) -> int:
        return 1 if all(i == x for i, x in enumerate(self.perm)) else 2

    def __call__(self, c: int) -> int:
        return self.perm[c]

    def to_json(self) -> dict:
        return {"perm": list(self.perm)}


def _system(x) -> TranspositionSystem:
    return x.system if isinstance(x, MatsuoAlgebra) else x


def make_flip(sys, perm: Sequence[int]) -> Flip:
    """Validate that ``perm`` is an involutive automorphism of the conjugation table."""
    sys = _system(sys)
    n = sys.n_points
    perm = tuple(int(x) for x in perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValidationError("flip must be a permutation of the point set")
    for c in range(n):
        if perm[perm[c]] != c:
            raise NotInvolution(f"point {c} has orbit longer than 2")
    p = np.asarray(perm, dtype=np.int64)
    t = np.asarray(sys.conj, dtype=np.int64).reshape(n, n)
    bad = np.argwhere(p[t] != t[p[:, None], p[None, :]])
    if len(bad):
        c, d = (int(x) for x in bad[0])
        raise NotAutomorphism((c, d), f"image of {c}^{d} is not {perm[c]}^{perm[d]}")
    return Flip(perm)


def identity_flip(sys) -> Flip:
    return Flip(tuple(range(_system(sys).n_points)))


def inner_flip(sys, word: Sequence[int]) -> Flip:
    """Conjugation by the product of the points in ``word``, applied left to right."""
    sys = _system(sys)
    perm = list(range(sys.n_points))
    for w in word:
        perm = [sys.conj[x][w] for x in perm]
    return make_flip(sys, perm)


# ---------------------------------------------------------------------------
# symplectic flips

def _iso_vector(m: int, j: int) -> int:
    """e_j: the unit vector at coordinate 2j-1, as a 2m-bit integer."""
    return 1 << (2 * m - (2 * j - 1))


def symplectic_vector_map(m: int, kind: str, i: int) -> Callable[[int], int]:
    """Linear map on F_2^{2m} for tau_i (type 1) or sigma_i (type 2)."""
    if kind == "type1":
        if not 1 <= i <= m:
            raise ValidationError(f"type 1 rank must lie in 1..{m}")
        es = [_iso_vector(m, j) for j in range(1, i + 1)]

        def f(u):
            for e in es:
                if symplectic_form(u, e, m):
                    u ^= e
            return u
        return f
    if kind == "type2":
        if not 1 <= i <= m // 2:
            raise ValidationError(f"type 2 index must lie in 1..{m // 2}")
        pairs = [(_iso_vector(m, 2 * j - 1), _iso_vector(m, 2 * j)) for j in range(1, i + 1)]

        def f(u):
            out = u
            for a, b in pairs:
                if symplectic_form(u, a, m):
                    out ^= b
                if symplectic_form(u, b, m):
                    out ^= a
            return out
        return f
    raise ValidationError(f"unknown symplectic flip kind {kind!r}")


def symplectic_flip(m: int, kind: str, i: int, sys: TranspositionSystem | None = None) -> Flip:
    """tau_i or sigma_i transported to the point set of symplectic_group(m)."""
    sys = sys or symplectic_group(m)
    f = symplectic_vector_map(m, kind, i)
    return make_flip(sys, [f(c + 1) - 1 for c in range(sys.n_points)])


def _f2_rank(vectors) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def vector_flip_type(m: int, flip: Flip, vectors: Sequence[int] | None = None) -> tuple[int, int]:
    """(type, rank) of a flip of symplectic_group(m) read as a map on vectors.

    Type 2 iff the second form (u, u^sigma) vanishes on ``vectors`` (default all
    of V); rank is dim [V, sigma].
    """
    vecs = list(vectors) if vectors is not None else list(range(1, 2 ** (2 * m)))
    image = {v: flip.perm[v - 1] + 1 for v in range(1, 2 ** (2 * m))}
    kind = 2 if all(symplectic_form(v, image[v], m) == 0 for v in vecs) else 1
    return kind, _f2_rank(v ^ image[v] for v in vecs)


# ---------------------------------------------------------------------------
# orbits and the decomposition M = M_sigma + W

@dataclass(frozen=True)
class OrbitClassification:
    singles: tuple[int, ...]
    doubles: tuple[tuple[int, int], ...]
    extras: tuple[tuple[int, int], ...]

    @property
    def counts(self) -> dict[str, int]:
        return {"singles": len(self.singles), "doubles": len(self.doubles), "extras": len(self.extras)}

    @property
    def dim_fixed(self) -> int:
        return len(self.singles) + len(self.doubles) + len(self.extras)

    @property
    def dim_w(self) -> int:
        return len(self.doubles) + len(self.extras)

    @property
    def orbits(self) -> list[tuple[int, ...]]:
        """All orbits, each sorted, ordered by least point."""
        out = [(c,) for c in self.singles] + list(self.doubles) + list(self.extras)
        return sorted(out)


def classify_orbits(sys, flip: Flip) -> OrbitClassification:
    sys = _system(sys)
    singles, doubles, extras = [], [], []
    for c, d in enumerate(flip.perm):
        if c == d:
            singles.append(c)
        elif c < d:
            (doubles if sys.conj[c][d] == c else extras).append((c, d))
    return OrbitClassification(tuple(singles), tuple(doubles), tuple(extras))


def _orbit_sum(n: int, orbit: Sequence[int]) -> list[Fraction]:
    v = [Fraction(0)] * n
    for c in orbit:
        v[c] = Fraction(1)
    return v


def _skew(n: int, c: int, d: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[c], v[d] = Fraction(1), Fraction(-1)
    return v


def fixed_and_commutator(M, flip: Flip, check: bool = True) -> tuple[Subspace, Subspace]:
    """Bases of M_sigma (orbit sums) and W = [M, sigma] (skew vectors).

    With ``check`` and a MatsuoAlgebra argument, orthogonality of the two
    pieces under the Frobenius form is verified exactly.
    """
    sys = _system(M)
    n = sys.n_points
    orb = classify_orbits(sys, flip)
    fixed = Subspace(n, [_orbit_sum(n, o) for o in orb.orbits])
    skew = Subspace(n, [_skew(n, c, d) for c, d in sorted(orb.doubles + orb.extras)])
    assert fixed.dim + skew.dim == n
    if check and isinstance(M, MatsuoAlgebra):
        for w in skew.vectors:
            for u in fixed.vectors:
                if M.form(u, w):
                    raise ValidationError("fixed and skew parts are not orthogonal")
    return fixed, skew


@dataclass
class FlipSubalgebra:
    A: Subspace
    fixed: Subspace
    equals_fixed: bool
    contains_extras: bool
    # A against the orbit sums supported on the ambient points only
    equals_ambient_fixed: bool


def flip_subalgebra(M: MatsuoAlgebra, flip: Flip) -> FlipSubalgebra:
    """Subalgebra generated by the singles and the doubles c + c^sigma."""
    n = M.dim
    orb = classify_orbits(M.system, flip)
    gens = [_orbit_sum(n, (c,)) for c in orb.singles] + [_orbit_sum(n, o) for o in orb.doubles]
    fixed, _ = fixed_and_commutator(M, flip, check=False)
    if gens:
        A = M.subalgebra_closure(gens)
    else:
        A = Subspace(n)
    contains_extras = any(_orbit_sum(n, o) in A for o in orb.extras)
    pts = set(ambient(M.system, flip).points) if gens else set()
    amb_fixed = Subspace(n, [_orbit_sum(n, o) for o in orb.orbits if pts.issuperset(o)])
    return FlipSubalgebra(A, fixed, A == fixed, contains_extras, A == amb_fixed)


@dataclass
class Ambient:
    points: tuple[int, ...]
    system: TranspositionSystem
    flip: Flip
    is_proper: bool
    seed_closed: bool  # D' == C


def ambient(sys, flip: Flip) -> Ambient:
    """Normal closure of the points lying in singles or doubles, with the restricted flip."""
    sys = _system(sys)
    orb = classify_orbits(sys, flip)
    seed = set(orb.singles) | {c for pair in orb.doubles for c in pair}
    if not seed:
        raise ValidationError("flip has neither singles nor doubles")
    pts = normal_closure(sys, seed)
    sub = restrict(sys, pts)
    index = {p: i for i, p in enumerate(pts)}
    rflip = make_flip(sub, [index[flip.perm[p]] for p in pts])
    return Ambient(tuple(pts), sub, rflip, len(pts) < sys.n_points, len(pts) == len(seed))


# ---------------------------------------------------------------------------
# multiplicities of t on W

@dataclass(frozen=True)
class MultiplicitySolution:
    mults: dict[int, int]
    method: str  # "equations", "reduction" or "oracle"

    def nonzero(self) -> dict[int, int]:
        return {k: v for k, v in self.mults.items() if v}

    def same_values(self, other: MultiplicitySolution) -> bool:
        return self.nonzero() == other.nonzero()


def check_equations(spec: Spectrum, orbits: OrbitClassification, sol: MultiplicitySolution) -> list[str]:
    """Names of the three linear identities that ``sol`` violates."""
    bad = []
    if sum(sol.mults.values()) != orbits.dim_w:
        bad.append("sum of multiplicities equals dim W")
    if sum(lam * m for lam, m in sol.mults.items()) != -len(orbits.extras):
        bad.append("weighted sum equals minus the number of extras")
    if sol.mults.get(spec.valency, 0) != 0:
        bad.append("valency has multiplicity zero on W")
    return bad


def solve_multiplicities(spec: Spectrum, orbits: OrbitClassification) -> MultiplicitySolution:
    """Solve the three identities for m_lambda when at most two unknowns remain."""
    k = spec.valency
    others = [lam for lam in spec.eigenvalues if lam != k]
    dim_w, extras = orbits.dim_w, len(orbits.extras)
    if len(others) > 2:
        raise Underdetermined(f"{len(others)} eigenvalues besides the valency; reduce first")
    mults = {k: 0}
    if not others:
        if dim_w or extras:
            raise NonIntegralSolution("no eigenvalue available for a nonzero W")
    elif len(others) == 1:
        lam = others[0]
        if lam * dim_w != -extras:
            raise NonIntegralSolution("weighted sum cannot be met")
        mults[lam] = dim_w
    else:
        a, b = others
        x = Fraction(-extras - b * dim_w, a - b)
        y = dim_w - x
        for v in (x, y):
            if v.denominator != 1 or v < 0:
                raise NonIntegralSolution(f"solution ({x}, {y}) is not a pair of natural numbers")
        mults[a], mults[b] = int(x), int(y)
    return MultiplicitySolution(mults, "equations")


def _restricted_t(sys: TranspositionSystem, reps: Sequence[int], vectors: Sequence[dict[int, int]]) -> list[list[int]]:
    """Matrix of t on a span whose basis vector i is read off at point reps[i]."""
    col_of = {r: i for i, r in enumerate(reps)}
    n = len(reps)
    mat = [[0] * n for _ in range(n)]
    for i, vec in enumerate(vectors):
        image: dict[int, int] = {}
        for d, x in vec.items():
            for c in sys.neighbors[d]:
                image[c] = image.get(c, 0) + x
        for c, x in image.items():
            if x and c in col_of:
                mat[col_of[c]][i] = x
    return mat


def w_matrix(sys, flip: Flip) -> list[list[int]]:
    sys = _system(sys)
    orb = classify_orbits(sys, flip)
    pairs = sorted(orb.doubles + orb.extras)
    return _restricted_t(sys, [c for c, _ in pairs], [{c: 1, d: -1} for c, d in pairs])


def fixed_matrix(sys, flip: Flip) -> list[list[int]]:
    sys = _system(sys)
    orbs = classify_orbits(sys, flip).orbits
    return _restricted_t(sys, [o[0] for o in orbs], [{c: 1 for c in o} for o in orbs])


def _multiplicities(mat: list[list[int]], eigenvalues: Sequence[int]) -> dict[int, int]:
    if not mat:
        return {lam: 0 for lam in eigenvalues}
    out = {lam: eigen_multiplicity(mat, lam) for lam in eigenvalues}
    if sum(out.values()) != len(mat):
        raise ValidationError("restricted collinearity map has eigenvalues outside the spectrum of T")
    return out


def oracle_multiplicities(M, flip: Flip, spec: Spectrum | None = None) -> MultiplicitySolution:
    """Multiplicities of t restricted to W, by exact rank computations."""
    sys = _system(M)
    spec = spec or spectrum(sys)
    return MultiplicitySolution(_multiplicities(w_matrix(sys, flip), spec.eigenvalues), "oracle")


def fixed_multiplicities(M, flip: Flip, spec: Spectrum | None = None) -> dict[int, int]:
    """Multiplicities of t restricted to M_sigma, by exact rank computations."""
    sys = _system(M)
    spec = spec or spectrum(sys)
    return _multiplicities(fixed_matrix(sys, flip), spec.eigenvalues)


# ---------------------------------------------------------------------------
# reduction to a quotient

@dataclass
class ReductionStep:
    kind: str  # "tau" or "theta"
    h: int
    system: TranspositionSystem
    flip: Flip
    projection: tuple[int, ...]
    fixed_dim: int
    quotient_fixed_dim: int

    @property
    def kernel_eigenvalue(self) -> int:
        return 0 if self.kind == "tau" else -1

    @property
    def kernel_fixed_dim(self) -> int:
        """Dimension of the kernel eigenspace of t inside M_sigma."""
        return self.fixed_dim - self.quotient_fixed_dim

    def transport(self, rho: int) -> Fraction:
        """Eigenvalue on the quotient matching eigenvalue rho upstairs."""
        if rho == self.kernel_eigenvalue:
            raise ValueError("the kernel eigenvalue has no image")
        if self.kind == "tau":
            return Fraction(rho, 2 ** self.h)
        return Fraction(rho + 1, 3 ** self.h) - 1

    def lift(self, rho_bar) -> Fraction:
        if self.kind == "tau":
            return Fraction(rho_bar) * 2 ** self.h
        return 3 ** self.h * Fraction(rho_bar) + 3 ** self.h - 1


def reduce(sys, flip: Flip) -> ReductionStep:
    """Pass to the tau- or theta-quotient and the flip induced there."""
    sys = _system(sys)
    step = None
    for kind, relation in (("tau", tau_classes), ("theta", theta_classes)):
        eq = relation(sys)
        if not eq.trivial:
            step = (kind, eq)
            break
    if step is None:
        raise Irreducible("tau and theta classes are singletons")
    kind, eq = step
    qsys, proj = quotient(sys, eq)
    image = [-1] * qsys.n_points
    for c in range(sys.n_points):
        x, y = proj[c], proj[flip.perm[c]]
        if image[x] not in (-1, y):
            raise ValidationError("flip does not respect the classes")
        image[x] = y
    qflip = make_flip(qsys, image)
    return ReductionStep(kind, eq.h, qsys, qflip, proj,
                         classify_orbits(sys, flip).dim_fixed, classify_orbits(qsys, qflip).dim_fixed)


def commutator_multiplicities(sys, flip: Flip, spec: Spectrum | None = None) -> MultiplicitySolution:
    """Multiplicities on W by the equations, reducing to quotients when needed.

    On a reducible system each nonkernel eigenvalue inherits its multiplicity
    from the quotient; the kernel eigenvalue takes the remainder of dim W.
    """
    sys = _system(sys)
    spec = spec or spectrum(sys)
    orbits = classify_orbits(sys, flip)
    comps = connected_components(sys)
    if len(comps) > 1:
        return _componentwise_multiplicities(sys, flip, comps, spec)
    try:
        return solve_multiplicities(spec, orbits)
    except Underdetermined:
        pass
    try:
        step = reduce(sys, flip)
    except Irreducible as exc:
        raise Underdetermined("too many eigenvalues for the equations and no reduction applies") from exc
    sub = commutator_multiplicities(step.system, step.flip)
    mults = {}
    for rho in spec.eigenvalues:
        if rho != step.kernel_eigenvalue:
            mults[rho] = sub.mults.get(step.transport(rho), 0)
    if step.kernel_eigenvalue in spec.eigenvalues:
        mults[step.kernel_eigenvalue] = orbits.dim_w - sum(mults.values())
    return MultiplicitySolution(mults, "reduction")


def _componentwise_multiplicities(sys: TranspositionSystem, flip: Flip, comps: list[list[int]],
                                  spec: Spectrum) -> MultiplicitySolution:
    """Sum of the per-component solutions; the flip must fix every component."""
    mults = {rho: 0 for rho in spec.eigenvalues}
    methods = set()
    for comp in comps:
        members = set(comp)
        if any(flip.perm[c] not in members for c in comp):
            raise Underdetermined("flip permutes connected components; no componentwise split")
        sub = restrict(sys, comp)
        index = {p: i for i, p in enumerate(comp)}
        sol = commutator_multiplicities(sub, make_flip(sub, [index[flip.perm[p]] for p in comp]))
        for rho, m in sol.mults.items():
            mults[rho] = mults.get(rho, 0) + m
        methods.add(sol.method)
    method = "reduction" if "reduction" in methods else "equations"
    return MultiplicitySolution(mults, method)


# ---------------------------------------------------------------------------
# radical tables

def fixed_radical_table(sys, flip: Flip, spec: Spectrum | None = None,
                        solution: MultiplicitySolution | None = None) -> CriticalReport:
    """Radical dimensions of M_sigma at the critical values of M.

    n_eta = mult(rho in M) - m_rho for eta = -2/rho; critical values of M whose
    count drops to zero are listed under ``vanished``.
    """
    sys = _system(sys)
    spec = spec or spectrum(sys)
    sol = solution or commutator_multiplicities(sys, flip, spec)
    report = CriticalReport()
    for rho, mult in sorted(spec.pairs, key=lambda p: Fraction(-2, p[0]) if p[0] else 0):
        reason = exclusion_reason(rho)
        if reason:
            report.excluded.append((rho, reason))
            continue
        entry = CriticalEntry(Fraction(-2, rho), rho, mult - sol.mults.get(rho, 0))
        (report.entries if entry.radical_dim else report.vanished).append(entry)
    return report


@dataclass
class MainTheoremCheck:
    eta: Fraction
    radical_A: int
    radical_ambient_cap_A: int
    holds: bool
    dim_A: int
    ambient_points: int


def check_main_theorem(M: MatsuoAlgebra, flip: Flip) -> MainTheoremCheck:
    """Compare R(A) with R(M') intersected with A, M' the ambient algebra of A."""
    amb = ambient(M.system, flip)
    Mp = MatsuoAlgebra(amb.system, M.eta)
    sub = flip_subalgebra(Mp, amb.flip)
    r_a = Mp.radical_basis(sub.A)
    r_cap = Mp.radical_basis().intersection(sub.A)
    return MainTheoremCheck(M.eta, r_a.dim, r_cap.dim, r_a == r_cap, sub.A.dim, len(amb.points))


# ---------------------------------------------------------------------------
# type 1 symplectic flips

@dataclass
class InducedFlipProfile:
    m: int
    e_vector: int
    seed_points: int
    ambient_points: int
    component_sizes: list[int]
    reduced_points: int  # |A'| = ambient minus <e>
    h: int
    quotient_points: int
    induced_type: int
    induced_rank: int
    reduced_system: TranspositionSystem = field(repr=False)
    reduced_flip: Flip = field(repr=False)
    step: ReductionStep = field(repr=False)


def induced_flip_profile(m: int, flip: Flip | None = None) -> InducedFlipProfile:
    """Ambient chain and induced flip for a type 1, rank m flip of symplectic_group(m)."""
    sys = symplectic_group(m)
    flip = flip or symplectic_flip(m, "type1", m, sys)
    kind, rank = vector_flip_type(m, flip)
    if (kind, rank) != (1, m):
        raise WrongFlipKind(f"expected type 1 and rank {m}, got type {kind} and rank {rank}")
    amb = ambient(sys, flip)
    vectors = [p + 1 for p in amb.points]
    # e spans the radical of the hyperplane: orthogonal to every ambient vector
    radical = [v for v in vectors if all(symplectic_form(v, u, m) == 0 for u in vectors)]
    if len(radical) != 1:
        raise ValidationError("ambient set does not have a one-point radical")
    e = radical[0]
    comps = connected_components(amb.system)
    reduced_pts = [p for p in amb.points if p + 1 != e]
    rsys = restrict(sys, reduced_pts)
    index = {p: i for i, p in enumerate(reduced_pts)}
    rflip = make_flip(rsys, [index[flip.perm[p]] for p in reduced_pts])
    step = reduce(rsys, rflip)
    # type and rank of the induced flip on V0 / <e>
    v0 = [0] + vectors
    image = {v: (flip.perm[v - 1] + 1 if v else 0) for v in v0}
    ind_type = 2 if all(symplectic_form(u, image[u], m) == 0 for u in v0) else 1
    ind_rank = _f2_rank([e] + [u ^ image[u] for u in v0]) - 1
    orb = classify_orbits(sys, flip)
    return InducedFlipProfile(m, e, len(orb.singles) + 2 * len(orb.doubles), len(amb.points),
                              sorted(len(c) for c in comps), len(reduced_pts), step.h, step.system.n_points,
                              ind_type, ind_rank, rsys, rflip, step)
