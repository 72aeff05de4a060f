"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``.  All comparisons are exact.
Criteria 5 and 7 carry literal target values that the mathematics does not
produce; those literal checks are strict xfails and the values that do hold
are asserted by companion tests.  See the decision ledger for the analysis.
"""

from __future__ import annotations

from fractions import Fraction as F

import pytest

from conftest import group, group_spectrum
from matsuo.algebra import FusionLaw, MatsuoAlgebra, check_axis
from matsuo.catalog import builtin_flips, inner_word, sigma_word
from matsuo.flips import (check_equations, check_main_theorem, classify_orbits, commutator_multiplicities,
                          fixed_radical_table, flip_subalgebra, induced_flip_profile, inner_flip,
                          oracle_multiplicities, solve_multiplicities, symplectic_flip)
from matsuo.errors import Underdetermined
from matsuo.spectral import bad_primes, critical_values, mod_p_check
from matsuo.poly import is_squarefree_mod_p
from matsuo.transposition import connected_components, quotient, tau_classes, theta_classes


def verdict(say, n: int, ok: bool, what: str, detail: str = "") -> bool:
    say(f"{'PASS' if ok else 'FAIL'}  criterion {n}: {what}" + (f"  [{detail}]" if detail and not ok else ""))
    return ok


def flip_of(name: str, word: str):
    sys = group(name)
    return inner_flip(sys, inner_word(sys, word))


def theorem_matrix():
    """(system, flip name, flip) over the built-in matrix of the main theorem criterion."""
    for n in range(4, 8):
        for m in range(1, n // 2 + 1):
            yield f"sym:{n}", sigma_word(m), flip_of(f"sym:{n}", sigma_word(m))
    for m in (2, 3):
        for kind in ("type1", "type2"):
            for i in range(1, (m if kind == "type1" else m // 2) + 1):
                yield f"sp:{m}", f"{kind}:{i}", symplectic_flip(m, kind, i, group(f"sp:{m}"))
    for name in ("cover2:4", "cover2:5", "cover3:4"):
        n = int(name.split(":")[1])
        for m in range(1, n // 2 + 1):
            yield name, sigma_word(m), flip_of(name, sigma_word(m))


# --- 1 ----------------------------------------------------------------------

def test_criterion_1_spectrum_tables(say):
    bad = []
    for n in range(4, 9):
        want = {2 * (n - 2): 1, n - 4: n - 1, -2: n * (n - 3) // 2}
        got = group_spectrum(f"sym:{n}").as_dict()
        if got != want:
            bad.append(f"S{n}: {got}")
    for m in (2, 3):
        want = {2 ** (2 * m - 1): 1, 2 ** (m - 1): 2 ** (2 * m - 1) - 2 ** (m - 1) - 1,
                -2 ** (m - 1): 2 ** (2 * m - 1) + 2 ** (m - 1) - 1}
        got = group_spectrum(f"sp:{m}").as_dict()
        if got != want:
            bad.append(f"Sp{2 * m}: {got}")
    assert verdict(say, 1, not bad, "spectra of S4..S8 and Sp4(2), Sp6(2)", "; ".join(bad))


# --- 2 ----------------------------------------------------------------------

def test_criterion_2_critical_values(say):
    s5 = critical_values(group_spectrum("sym:5"))
    sp6 = critical_values(group_spectrum("sp:3"))
    ok = (s5.as_dict() == {F(-1, 3): 1, F(-2): 4}
          and (-2, "eta_is_one") in s5.excluded
          and sp6.as_dict() == {F(-1, 16): 1, F(-1, 2): 27, F(1, 2): 35})
    # the radical really has these dimensions, not only the spectrum's prediction
    ok = ok and all(MatsuoAlgebra(group("sym:5"), e.eta).radical_dim() == e.radical_dim for e in s5.entries)
    assert verdict(say, 2, ok, "critical values of S5 and Sp6(2)", f"{s5.as_dict()} / {sp6.as_dict()}")


# --- 3 ----------------------------------------------------------------------

def test_criterion_3_orthogonal_table(say):
    bad = []
    for m in range(2, 6):
        name = f"sym:{2 * m}"
        sys, spec = group(name), group_spectrum(name)
        flip = flip_of(name, sigma_word(m))
        want = {F(-1, 2 * m - 2): 1}
        if m > 2:
            want[F(-1, m - 2)] = m - 1
        table = fixed_radical_table(sys, flip, spec).as_dict()
        solved = solve_multiplicities(spec, classify_orbits(sys, flip))
        oracle = oracle_multiplicities(sys, flip, spec)
        mults = solved.nonzero()
        if table != want:
            bad.append(f"m={m} table {table}")
        if mults.get(2 * m - 4, 0) != m or mults.get(-2, 0) != m * (m - 2) or not solved.same_values(oracle):
            bad.append(f"m={m} multiplicities {mults} vs oracle {oracle.nonzero()}")
    assert verdict(say, 3, not bad, "Q_m tables for m = 2..5", "; ".join(bad))


# --- 4 ----------------------------------------------------------------------

def test_criterion_4_symplectic_rank_two(say):
    t2 = fixed_radical_table(group("sp:2"), symplectic_flip(2, "type2", 1, group("sp:2")))
    t3 = fixed_radical_table(group("sp:3"), symplectic_flip(3, "type2", 1, group("sp:3")))
    ok = (t2.as_dict() == {F(-1, 4): 1, F(-1): 2}
          and (-2, "eta_is_one") in t2.excluded
          and t3.as_dict() == {F(-1, 16): 1, F(-1, 2): 15, F(1, 2): 23})
    assert verdict(say, 4, ok, "rank 2 symplectic tables for m = 2, 3", f"{t2.as_dict()} / {t3.as_dict()}")


# --- 5 ----------------------------------------------------------------------

def _type1_table(m: int) -> dict:
    prof = induced_flip_profile(m)
    return fixed_radical_table(prof.reduced_system, prof.reduced_flip).as_dict()


def _gram_radicals(m: int, etas) -> dict:
    sys = group(f"sp:{m}")
    flip = symplectic_flip(m, "type1", m, sys)
    out = {}
    for eta in etas:
        M = MatsuoAlgebra(sys, eta)
        out[eta] = M.radical_dim(flip_subalgebra(M, flip).A)
    return out


@pytest.mark.xfail(strict=True, reason="stated smallest critical values -1/32 (m=3) and -1/128 (m=4) "
                                       "are not critical; the true values are -1/8 and -1/32")
def test_criterion_5_type_one_flip_literal(say):
    p3, p4 = induced_flip_profile(3), induced_flip_profile(4)
    t3, t4 = _type1_table(3), _type1_table(4)
    want3 = {F(-1, 32): 1, F(-1, 2): 2, F(1, 2): 6}
    want4 = {F(-1, 128): 1, F(-1, 4): 15, F(1, 4): 23}
    gram = _gram_radicals(3, sorted(want3))
    ok = ((p3.induced_type, p3.induced_rank) == (2, 2) and p4.induced_rank == 2
          and t3 == want3 and t4 == want4 and gram == want3)
    assert verdict(say, 5, ok, "type 1 flip tables as stated",
                   f"m=3 table {t3}, Gram {gram}; m=4 table {t4}")


def test_criterion_5_type_one_flip_derived_values(say):
    p3, p4 = induced_flip_profile(3), induced_flip_profile(4)
    t3, t4 = _type1_table(3), _type1_table(4)
    want3 = {F(-1, 8): 1, F(-1, 2): 2, F(1, 2): 6}
    want4 = {F(-1, 32): 1, F(-1, 4): 15, F(1, 4): 23}
    gram = _gram_radicals(3, sorted(set(want3) | {F(-1, 32)}))
    ok = ((p3.induced_type, p3.induced_rank) == (2, 2) and (p4.induced_type, p4.induced_rank) == (2, 2)
          and t3 == want3 and t4 == want4
          and gram == {**want3, F(-1, 32): 0})
    verdict(say, 5, ok, "type 1 flip: induced type 2 rank 2; tables with -1/2^(2m-3), "
                        "reduction path equals 63-point Gram oracle", f"{t3} / {t4} / {gram}")
    assert ok


# --- 6 ----------------------------------------------------------------------

def test_criterion_6_main_theorem(say):
    bad = []
    count = 0
    for name, fname, flip in theorem_matrix():
        sys = group(name)
        for entry in critical_values(group_spectrum(name)).entries:
            count += 1
            res = check_main_theorem(MatsuoAlgebra(sys, entry.eta), flip)
            if not res.holds:
                bad.append(f"{name} {fname} eta={entry.eta}")
    assert verdict(say, 6, not bad and count > 0, f"R(A) = R(M') cap A on {count} triples", "; ".join(bad))


# --- 7 ----------------------------------------------------------------------

def _cover_facts():
    facts = {}
    for n in (4, 5):
        spec = group_spectrum(f"cover2:{n}").as_dict()
        base = group_spectrum(f"sym:{n}").as_dict()
        doubled = {2 * r: m for r, m in base.items() if r}
        facts[f"cover2:{n} nonzero"] = {r: m for r, m in spec.items() if r} == doubled
        facts[f"cover2:{n} zero"] = spec.get(0, 0) == n * (n - 1) // 2
    spec = group_spectrum("cover3:4").as_dict()
    base = group_spectrum("sym:4").as_dict()
    facts["cover3:4 nonkernel"] = {r: m for r, m in spec.items() if r != -1} == {3 * r + 2: m for r, m in base.items()}
    facts["cover3:4 kernel"] = spec.get(-1, 0) == 2 * group("sym:4").n_points == 12
    M = MatsuoAlgebra(group("cover3:4"), 2)
    facts["cover3:4 eta=2"] = critical_values(group_spectrum("cover3:4")).as_dict().get(F(2)) == 12 \
        and M.radical_dim() == 12
    return facts


@pytest.mark.xfail(strict=True, reason="cover2:4 has tau classes of size 4 over S3, so 0 has multiplicity 9, not 6")
def test_criterion_7_reduction_transport_literal(say):
    facts = _cover_facts()
    failed = [k for k, v in facts.items() if not v]
    assert verdict(say, 7, not failed, "cover spectra as stated", f"failing: {failed}")


def test_criterion_7_reduction_transport_derived_values(say):
    facts = _cover_facts()
    # the one literal fact that fails, replaced by what the quotient forces
    c4 = group("cover2:4")
    tau = tau_classes(c4)
    q, _ = quotient(c4, tau)
    facts["cover2:4 zero"] = (tau.h, q.n_points) == (2, 3) \
        and group_spectrum("cover2:4").multiplicity(0) == c4.n_points - q.n_points == 9
    theta = theta_classes(group("cover3:4"))
    facts["cover3:4 theta quotient is S4"] = quotient(group("cover3:4"), theta)[0].n_points == 6
    failed = [k for k, v in facts.items() if not v]
    verdict(say, 7, not failed, "cover transport, cover2:4 zero multiplicity |D| - |quotient| = 9",
            f"failing: {failed}")
    assert not failed


# --- 8 ----------------------------------------------------------------------

AXIS_SYSTEMS = ("sym:4", "sym:5", "sym:6", "sym:7", "sp:2", "sp:3", "cover2:4", "cover2:5", "cover3:4",
                "o-:2", "o+:2")


def test_criterion_8_fusion_laws(say):
    bad = []
    for name in AXIS_SYSTEMS:
        sys = group(name)
        for eta in (F(1, 3), F(-1, 3), F(3)):
            M = MatsuoAlgebra(sys, eta)
            law = FusionLaw.jordan(eta)
            for c in range(sys.n_points):
                rep = check_axis(M, M.basis_vector(c), law)
                if not (rep.passed and rep.primitive):
                    bad.append(f"{name} eta={eta} axis {c}")
                    break
    eta = F(1, 3)
    law = FusionLaw.monster(2 * eta, eta)
    doubles_checked = 0
    for name, flip in (("sym:6", flip_of("sym:6", sigma_word(3))),
                       ("sp:2", symplectic_flip(2, "type2", 1, group("sp:2")))):
        M = MatsuoAlgebra(group(name), eta)
        A = flip_subalgebra(M, flip).A
        for c, d in classify_orbits(group(name), flip).doubles:
            x = M.element({c: 1, d: 1})
            inside, outside = check_axis(M, x, law, within=A), check_axis(M, x, law)
            doubles_checked += 1
            if not (inside.passed and inside.primitive) or outside.primitive:
                bad.append(f"{name} double {(c, d)}")
    ok = not bad and doubles_checked > 0
    assert verdict(say, 8, ok, f"Jordan axes on {len(AXIS_SYSTEMS)} systems, {doubles_checked} Monster doubles",
                   "; ".join(bad))


# --- 9 ----------------------------------------------------------------------

EQUATION_SYSTEMS = ("sym:4", "sym:5", "sym:6", "sym:7", "sym:8", "sp:2", "sp:3", "o-:2", "o+:3", "o-:3",
                    "cover2:4", "cover2:5", "cover3:4")


def test_criterion_9_equations_vs_oracle(say):
    bad = []
    pairs = irreducible = 0
    for name in EQUATION_SYSTEMS:
        sys, spec = group(name), group_spectrum(name)
        if len(connected_components(sys)) != 1:
            continue
        for fname, flip in builtin_flips(name, sys):
            pairs += 1
            orbits = classify_orbits(sys, flip)
            oracle = oracle_multiplicities(sys, flip, spec)
            broken = check_equations(spec, orbits, oracle)
            if broken:
                bad.append(f"{name} {fname}: {broken}")
            if tau_classes(sys).trivial and theta_classes(sys).trivial:
                irreducible += 1
                try:
                    solved = solve_multiplicities(spec, orbits)
                except Underdetermined:
                    solved = commutator_multiplicities(sys, flip, spec)
                if not solved.same_values(oracle):
                    bad.append(f"{name} {fname}: solved {solved.nonzero()} oracle {oracle.nonzero()}")
    ok = not bad and irreducible > 0
    assert verdict(say, 9, ok, f"equations hold on {pairs} pairs, solve = oracle on {irreducible} irreducible",
                   "; ".join(bad))


# --- 10 ---------------------------------------------------------------------

MODP_SYSTEMS = ("sym:4", "sym:5", "sym:6", "sym:7", "sym:8", "sp:2", "o-:2", "o+:2", "o+:3",
                "cover2:4", "cover2:5", "cover3:4")


def test_criterion_10_positive_characteristic(say):
    bad = []
    checks = 0
    primes = [p for p in range(3, 50) if all(p % d for d in range(2, p))]
    for name in MODP_SYSTEMS:
        sys, spec = group(name), group_spectrum(name)
        assert sys.n_points <= 30
        bad_p = bad_primes(spec)
        for p in primes:
            if p in bad_p:
                continue
            if not is_squarefree_mod_p(spec.minpoly, p):
                bad.append(f"{name} p={p}: minimal polynomial not square-free")
            for entry in critical_values(spec).entries:
                if entry.eta.denominator % p == 0:
                    continue
                rep = mod_p_check(sys, entry.eta, p, spec)
                checks += 1
                if not rep.matches_char0:
                    bad.append(f"{name} p={p} eta={entry.eta}: {rep.radical_dim_p} vs {rep.radical_dim_0}")
    assert verdict(say, 10, not bad and checks > 0, f"mod p radicals agree in {checks} cases", "; ".join(bad))
