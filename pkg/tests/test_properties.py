"""Property tests for the algebraic invariants.

Flips are drawn as products of disjoint transpositions, which are always
involutions, on the symmetric groups and their covers.
"""

from __future__ import annotations

from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import group, group_spectrum
from matsuo import report
from matsuo.algebra import MatsuoAlgebra
from matsuo.catalog import inner_word
from matsuo.flips import (check_equations, check_main_theorem, classify_orbits, commutator_multiplicities,
                          fixed_and_commutator, inner_flip, make_flip, oracle_multiplicities)
from matsuo.linalg import (PrimeField, Subspace, evaluate_poly_at_matrix, minimal_polynomial, mod_p, nullity,
                           nullspace_basis, rank, rank_mod_p, rref)
from matsuo.spectral import critical_values
from matsuo.transposition import quotient, tau_classes, theta_classes

SMALL = settings(max_examples=25, deadline=None)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
etas = rationals.filter(lambda x: x not in (0, 1))


def matrices(max_rows=5, max_cols=5, elements=rationals):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elements, min_size=c, max_size=c), min_size=r, max_size=r)))


@st.composite
def symmetric_int_matrices(draw):
    n = draw(st.integers(1, 5))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = draw(st.integers(-3, 3))
    return a


@st.composite
def disjoint_words(draw, n):
    perm = draw(st.permutations(range(1, n + 1)))
    k = draw(st.integers(0, n // 2))
    return "".join(f"({min(perm[2 * i], perm[2 * i + 1])},{max(perm[2 * i], perm[2 * i + 1])})" for i in range(k))


@st.composite
def flipped_systems(draw, names=("sym:4", "sym:5", "sym:6", "cover2:5", "cover3:4")):
    name = draw(st.sampled_from(names))
    n = int(name.split(":")[1])
    word = draw(disjoint_words(n))
    sys = group(name)
    return name, word, inner_flip(sys, inner_word(sys, word))


def elements(dim):
    return st.lists(rationals, min_size=dim, max_size=dim)


# --- exact linear algebra ----------------------------------------------------

@SMALL
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + nullity(m) == len(m[0])


@SMALL
@given(matrices())
def test_nullspace_is_exact_kernel(m):
    for v in nullspace_basis(m):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@SMALL
@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank([list(col) for col in zip(*m)])


@SMALL
@given(matrices())
def test_rref_is_idempotent(m):
    rows, pivots = rref(m)
    again, pivots2 = rref(rows) if rows else ([], [])
    assert again == rows and pivots2 == pivots


@SMALL
@given(matrices(elements=st.integers(-9, 9)), st.sampled_from([3, 5, 7, 11]))
def test_rank_mod_p_never_exceeds_rank(m, p):
    field = PrimeField(p)
    assert rank_mod_p(mod_p(m, field), field) <= rank(m)


@SMALL
@given(symmetric_int_matrices())
def test_minimal_polynomial_annihilates(m):
    p = minimal_polynomial(m)
    assert p.is_monic and p.degree <= len(m)
    assert not any(any(r) for r in evaluate_poly_at_matrix(p, m))


@SMALL
@given(st.lists(elements(4), max_size=3), st.lists(elements(4), max_size=3))
def test_intersection_dimension(us, vs):
    u, v = Subspace(4, us), Subspace(4, vs)
    cap = u.intersection(v)
    assert cap.dim == u.dim + v.dim - u.sum(v).dim
    assert cap <= u and cap <= v


# --- algebra ------------------------------------------------------------------

@SMALL
@given(st.sampled_from(["sym:4", "sym:5", "cover3:4"]), etas, st.data())
def test_commutative_and_form_associates(name, eta, data):
    M = MatsuoAlgebra(group(name), eta)
    u, v, w = (data.draw(elements(M.dim)) for _ in range(3))
    uv = M.product(u, v)
    assert uv == M.product(v, u)
    assert M.form(uv, w) == M.form(u, M.product(v, w))


@SMALL
@given(st.sampled_from(["sym:5", "sym:6", "sp:2", "cover2:4", "cover3:4"]), etas)
def test_radical_matches_spectrum(name, eta):
    crit = critical_values(group_spectrum(name)).as_dict()
    assert MatsuoAlgebra(group(name), eta).radical_dim() == crit.get(eta, 0)


@SMALL
@given(st.sampled_from(["sym:5", "sp:2", "cover2:5"]))
def test_radical_is_an_ideal(name):
    for entry in critical_values(group_spectrum(name)).entries:
        M = MatsuoAlgebra(group(name), entry.eta)
        rad = M.radical_basis()
        v = rad.vectors[0]
        assert all(M.product(v, M.basis_vector(c)) in rad for c in range(M.dim))


# --- systems and quotients ----------------------------------------------------

@SMALL
@given(st.sampled_from(["cover2:4", "cover2:5", "cover3:4", "sym:5"]))
def test_projection_commutes_with_conjugation(name):
    sys = group(name)
    for eq in (tau_classes(sys), theta_classes(sys)):
        q, proj = quotient(sys, eq)
        assert all(proj[sys.conj[c][d]] == q.conj[proj[c]][proj[d]]
                   for c in range(sys.n_points) for d in range(sys.n_points))


# --- flips --------------------------------------------------------------------

@SMALL
@given(flipped_systems())
def test_flip_invariants(case):
    name, _, flip = case
    sys = group(name)
    n = sys.n_points
    orb = classify_orbits(sys, flip)
    assert len(orb.singles) + 2 * (len(orb.doubles) + len(orb.extras)) == n
    t = sys.collinearity_matrix()
    assert all(t[flip.perm[c]][flip.perm[d]] == t[c][d] for c in range(n) for d in range(n))
    spec = group_spectrum(name)
    oracle = oracle_multiplicities(sys, flip, spec)
    assert check_equations(spec, orb, oracle) == []
    assert commutator_multiplicities(sys, flip, spec).same_values(oracle)


@SMALL
@given(flipped_systems(("sym:4", "sym:5", "cover2:4", "cover3:4")), st.data())
def test_decomposition_and_main_theorem(case, data):
    name, _, flip = case
    entries = critical_values(group_spectrum(name)).entries
    eta = data.draw(st.sampled_from([e.eta for e in entries] + [F(1, 3)]))
    M = MatsuoAlgebra(group(name), eta)
    fixed, skew = fixed_and_commutator(M, flip)
    assert M.radical_dim() == M.radical_dim(fixed) + M.radical_dim(skew)
    assert check_main_theorem(M, flip).holds


@SMALL
@given(flipped_systems())
def test_flip_json_round_trip(case):
    name, _, flip = case
    assert make_flip(group(name), flip.to_json()["perm"]) == flip


# --- reports ------------------------------------------------------------------

# keys avoid "num"/"den", which are reserved for encoded rationals
keys = st.text(alphabet="abcxyz_", max_size=5)
json_values = st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=5) | rationals,
    lambda inner: st.lists(inner, max_size=4) | st.dictionaries(keys, inner, max_size=4),
    max_leaves=12)


@SMALL
@given(st.dictionaries(keys, json_values, max_size=5))
def test_report_round_trip(data):
    assert report.loads(report.dumps(data)) == data
