"""Invariant suite run by the ``verify`` command.

Each check yields a Check record; a failing record carries a small witness.
The level caps the system size for the expensive algebra checks: ``fast``
runs them up to 20 points, ``full`` up to 63.  Larger systems get the
combinatorial and spectral checks only, and the skipped checks are listed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .algebra import FusionLaw, MatsuoAlgebra, check_axis
from .errors import Irreducible, Underdetermined
from .flips import (Flip, ambient, check_main_theorem, check_equations, classify_orbits,
                    commutator_multiplicities, fixed_and_commutator, fixed_multiplicities,
                    fixed_radical_table, flip_subalgebra, oracle_multiplicities, reduce)
from .linalg import evaluate_poly_at_matrix
from .spectral import bad_primes, critical_values, mod_p_check, predicted_radical_dim, spectrum
from .transposition import (TranspositionSystem, connected_components, quotient, tau_classes, theta_classes,
                            validate)

LEVEL_LIMITS = {"fast": 20, "full": 63}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  [{self.detail}]" if self.detail else "")


def _ok(name: str, cond: bool, witness: str = "") -> Check:
    return Check(name, bool(cond), "" if cond else witness)


def system_checks(sys: TranspositionSystem) -> Iterator[Check]:
    try:
        validate(sys.conj)
        yield Check("conjugation axioms", True)
    except Exception as exc:  # report, do not abort the suite
        yield Check("conjugation axioms", False, str(exc))
    lines = {}
    bad = None
    for line in sys.lines:
        for pair in ((line[0], line[1]), (line[0], line[2]), (line[1], line[2])):
            if pair in lines:
                bad = pair
            lines[pair] = line
    yield _ok("collinear pairs lie on one line", bad is None, f"pair {bad}")
    comps = connected_components(sys)
    if len(comps) != 1:
        return
    tau, theta = tau_classes(sys), theta_classes(sys)
    yield _ok("tau and theta not both nontrivial", tau.trivial or theta.trivial,
              f"tau size {tau.class_size}, theta size {theta.class_size}")
    for eq in (tau, theta):
        if eq.trivial:
            continue
        q, proj = quotient(sys, eq)
        bad = next(((c, d) for c in range(sys.n_points) for d in range(sys.n_points)
                    if proj[sys.conj[c][d]] != q.conj[proj[c]][proj[d]]), None)
        yield _ok(f"{eq.relation}-projection commutes with conjugation", bad is None, f"pair {bad}")


def spectral_checks(sys: TranspositionSystem, limit: int, seed: int = 0) -> Iterator[Check]:
    t = sys.collinearity_matrix()
    spec = spectrum(sys)
    yield _ok("minimal polynomial annihilates T", not any(any(r) for r in evaluate_poly_at_matrix(spec.minpoly, t)))
    yield _ok("multiplicities sum to |D|", spec.size == sys.n_points, f"{spec.size} != {sys.n_points}")
    yield _ok("valency is the top eigenvalue", spec.eigenvalues[0] == spec.valency and spec.pairs[0][1] == 1,
              f"pairs {spec.pairs}")
    crit = critical_values(spec)
    if sys.n_points <= limit:
        rng = random.Random(seed)
        etas = [e.eta for e in crit.entries]
        while len(etas) < len(crit.entries) + 5:
            x = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
            if x not in (0, 1):
                etas.append(x)
        for eta in etas:
            got = MatsuoAlgebra(sys, eta).radical_dim()
            want = predicted_radical_dim(spec, eta)
            yield _ok(f"radical at eta={eta} matches spectrum", got == want, f"gram {got}, spectrum {want}")
    for eq, kernel, fwd in (
        ("tau", 0, lambda r, h: Fraction(r, 2 ** h)),
        ("theta", -1, lambda r, h: Fraction(r + 1, 3 ** h) - 1),
    ):
        data = tau_classes(sys) if eq == "tau" else theta_classes(sys)
        if data.trivial:
            continue
        q, _ = quotient(sys, data)
        qspec = spectrum(q).as_dict()
        transported = {fwd(r, data.h): m for r, m in spec.pairs if r != kernel}
        yield _ok(f"{eq}: nonkernel eigenvalues transport to the quotient", transported == qspec,
                  f"{transported} vs {qspec}")
        yield _ok(f"{eq}: kernel multiplicity is |D| - |quotient|",
                  spec.multiplicity(kernel) == sys.n_points - q.n_points,
                  f"{spec.multiplicity(kernel)} vs {sys.n_points - q.n_points}")
    if sys.n_points <= 30:
        for p in sorted(set(range(3, 50, 2)) - bad_primes(spec)):
            if any(p % d == 0 for d in range(3, p)):
                continue
            for e in crit.entries:
                if e.eta.denominator % p == 0:
                    continue
                rep = mod_p_check(sys, e.eta, p, spec)
                yield _ok(f"mod {p} radical at eta={e.eta}", rep.matches_char0 and rep.semisimple,
                          f"dim_p {rep.radical_dim_p}, dim_0 {rep.radical_dim_0}, semisimple {rep.semisimple}")


def algebra_checks(sys: TranspositionSystem, etas=(Fraction(1, 3), Fraction(-1, 3), Fraction(3))) -> Iterator[Check]:
    for eta in etas:
        M = MatsuoAlgebra(sys, eta)
        law = FusionLaw.jordan(eta)
        bad = []
        for c in range(sys.n_points):
            rep = check_axis(M, M.basis_vector(c), law)
            if rep.violations or not rep.primitive:
                bad.append(c)
        yield _ok(f"basis axes are primitive of Jordan type {eta}", not bad, f"axes {bad[:3]}")
    spec = spectrum(sys)
    for e in critical_values(spec).entries:
        M = MatsuoAlgebra(sys, e.eta)
        rad = M.radical_basis()
        bad = next(((v, d) for v in rad.vectors for d in range(sys.n_points)
                    if M.product(v, M.basis_vector(d)) not in rad), None)
        yield _ok(f"radical at eta={e.eta} is an ideal", bad is None, f"axis {bad[1] if bad else ''}")


def flip_checks(sys: TranspositionSystem, name: str, flip: Flip, limit: int) -> Iterator[Check]:
    spec = spectrum(sys)
    orb = classify_orbits(sys, flip)
    n = sys.n_points
    yield _ok(f"{name}: orbit counts partition D", len(orb.singles) + 2 * orb.dim_w == n)
    t = sys.collinearity_matrix()
    bad = next(((c, d) for c in range(n) for d in range(n) if t[flip.perm[c]][flip.perm[d]] != t[c][d]), None)
    yield _ok(f"{name}: t commutes with the flip", bad is None, f"entry {bad}")
    oracle = oracle_multiplicities(sys, flip, spec)
    broken = check_equations(spec, orb, oracle) if len(connected_components(sys)) == 1 else []
    yield _ok(f"{name}: oracle multiplicities satisfy the three identities", not broken, "; ".join(broken))
    try:
        solved = commutator_multiplicities(sys, flip, spec)
        yield _ok(f"{name}: {solved.method} multiplicities match the oracle", solved.same_values(oracle),
                  f"{solved.nonzero()} vs {oracle.nonzero()}")
    except Underdetermined as exc:
        yield Check(f"{name}: multiplicities by equations", True, f"skipped: {exc}")
    try:
        step = reduce(sys, flip)
    except Irreducible:
        step = None
    if step is not None:
        fm = fixed_multiplicities(sys, flip, spec)
        qfm = fixed_multiplicities(step.system, step.flip)
        bad = [r for r, m in fm.items() if r != step.kernel_eigenvalue and m != qfm.get(step.transport(r), 0)]
        yield _ok(f"{name}: fixed-space multiplicities transport through the {step.kind}-quotient", not bad,
                  f"rho {bad}")
        yield _ok(f"{name}: kernel eigenspace in M_sigma has dim M_sigma - dim quotient",
                  fm.get(step.kernel_eigenvalue, 0) == step.kernel_fixed_dim,
                  f"{fm.get(step.kernel_eigenvalue, 0)} vs {step.kernel_fixed_dim}")
        if step.kind == "tau":
            proj = step.projection
            bad = [c for c in orb.singles if step.flip.perm[proj[c]] != proj[c]]
            bad += [c for c, d in orb.extras if step.system.conj[proj[c]][proj[flip.perm[c]]] == proj[c]]
            yield _ok(f"{name}: projection keeps singles and extras", not bad, f"points {bad[:3]}")
    if n > limit:
        yield Check(f"{name}: algebra-level checks", True, f"skipped: |D| = {n} above level limit {limit}")
        return
    crit = critical_values(spec)
    amb = ambient(sys, flip) if orb.singles or orb.doubles else None
    table = None
    if amb is not None:
        try:
            table = fixed_radical_table(amb.system, amb.flip)
        except Underdetermined:
            table = None
    etas = sorted({e.eta for e in crit.entries} | ({e.eta for e in table.entries + table.vanished} if table else set())
                  | {Fraction(1, 3)})
    for eta in etas:
        M = MatsuoAlgebra(sys, eta)
        fixed, skew = fixed_and_commutator(M, flip)
        total = M.radical_dim()
        parts = M.radical_dim(fixed) + M.radical_dim(skew)
        yield _ok(f"{name}: R(M) splits over M_sigma and W at eta={eta}", total == parts, f"{total} vs {parts}")
        if amb is None:
            continue
        thm = check_main_theorem(M, flip)
        yield _ok(f"{name}: R(A) = R(M') cap A at eta={eta}", thm.holds,
                  f"R(A) {thm.radical_A}, cap {thm.radical_ambient_cap_A}")
        if table is not None:
            Mp = MatsuoAlgebra(amb.system, eta)
            pf, _ = fixed_and_commutator(Mp, amb.flip, check=False)
            want = table.as_dict().get(eta, 0)
            got = Mp.radical_dim(pf)
            yield _ok(f"{name}: radical table matches Gram oracle on M'_sigma at eta={eta}", got == want,
                      f"gram {got}, table {want}")
    if amb is not None and not amb.seed_closed:
        yield Check(f"{name}: ambient closure adds points beyond singles and doubles", True,
                    f"noteworthy: |C| < |D'| = {len(amb.points)}")


def monster_checks(sys: TranspositionSystem, name: str, flip: Flip, eta=Fraction(1, 3)) -> Iterator[Check]:
    M = MatsuoAlgebra(sys, eta)
    orb = classify_orbits(sys, flip)
    if not orb.doubles:
        return
    law = FusionLaw.monster(2 * eta, eta)
    sub = flip_subalgebra(M, flip)
    bad = []
    for c, d in orb.doubles:
        x = M.element({c: 1, d: 1})
        inside = check_axis(M, x, law, within=sub.A)
        outside = check_axis(M, x, law)
        if inside.violations or not inside.primitive or outside.primitive:
            bad.append((c, d))
    yield _ok(f"{name}: doubles are primitive axes of {law.name} in A, imprimitive in M", not bad, f"{bad[:2]}")


def run(sys: TranspositionSystem, flips: list[tuple[str, Flip]], level: str = "fast") -> list[Check]:
    limit = LEVEL_LIMITS[level]
    checks = list(system_checks(sys))
    connected = len(connected_components(sys)) == 1
    if connected:
        checks += spectral_checks(sys, limit)
        if sys.n_points <= limit:
            checks += algebra_checks(sys)
    for name, flip in flips:
        checks += flip_checks(sys, name, flip, limit)
        if sys.n_points <= limit:
            checks += monster_checks(sys, name, flip)
    return checks
