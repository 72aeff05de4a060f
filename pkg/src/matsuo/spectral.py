"""Spectrum of the collinearity matrix, critical values and good primes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra import MatsuoAlgebra, as_eta
from .errors import DenominatorDivisibleByP, NonIntegralSpectrum
from .linalg import PrimeField, QMatrix, eigen_multiplicity, minimal_polynomial, mod_p, rank_mod_p
from .poly import IntPoly, integer_roots, is_squarefree_mod_p
from .transposition import TranspositionSystem


@dataclass(frozen=True)
class Spectrum:
    """Integer eigenvalues of T with multiplicities, largest first."""

    pairs: tuple[tuple[int, int], ...]
    valency: int
    minpoly: IntPoly
    residual: IntPoly | None = None

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def eigenvalues(self) -> list[int]:
        return [r for r, _ in self.pairs]

    def multiplicity(self, rho) -> int:
        return self.as_dict().get(rho, 0)

    @property
    def size(self) -> int:
        return sum(m for _, m in self.pairs)


def collinearity_matrix(sys: TranspositionSystem) -> QMatrix:
    return QMatrix.from_rows(sys.collinearity_matrix())


def spectrum(sys: TranspositionSystem, strict: bool = True) -> Spectrum:
    """Eigenvalues via the minimal polynomial, multiplicities via exact ranks.

    With ``strict`` a non-integral factor raises NonIntegralSpectrum (carrying
    the partial spectrum); otherwise it is kept in ``residual``.
    """
    t = sys.collinearity_matrix()
    p = minimal_polynomial(t)
    roots, rest = integer_roots(p)
    pairs = tuple((r, eigen_multiplicity(t, r)) for r in roots)
    valency = sum(t[0]) if t else 0
    residual = rest if rest.degree > 0 else None
    spec = Spectrum(pairs, valency, p, residual)
    if residual is not None and strict:
        raise NonIntegralSpectrum(residual, spec)
    return spec


# ---------------------------------------------------------------------------
# critical values

@dataclass(frozen=True)
class CriticalEntry:
    eta: Fraction
    source_rho: int
    radical_dim: int


@dataclass
class CriticalReport:
    entries: list[CriticalEntry] = field(default_factory=list)
    excluded: list[tuple[int, str]] = field(default_factory=list)
    # critical for M but radical zero for the subspace in question
    vanished: list[CriticalEntry] = field(default_factory=list)

    def as_dict(self) -> dict[Fraction, int]:
        return {e.eta: e.radical_dim for e in self.entries}


def eta_for(rho: int) -> Fraction | None:
    return None if rho == 0 else Fraction(-2, rho)


def exclusion_reason(rho: int) -> str | None:
    if rho == 0:
        return "rho_is_zero"
    eta = Fraction(-2, rho)
    if eta == 1:
        return "eta_is_one"
    if eta == 0:
        return "eta_is_zero"
    return None


def critical_values(sys_or_spec: TranspositionSystem | Spectrum) -> CriticalReport:
    """Critical eta = -2/rho for each eigenvalue rho, with radical dimension mult(rho)."""
    spec = sys_or_spec if isinstance(sys_or_spec, Spectrum) else spectrum(sys_or_spec)
    report = CriticalReport()
    for rho, mult in sorted(spec.pairs, key=lambda p: eta_for(p[0]) or 0):
        reason = exclusion_reason(rho)
        if reason:
            report.excluded.append((rho, reason))
        elif mult:
            report.entries.append(CriticalEntry(Fraction(-2, rho), rho, mult))
    return report


def predicted_radical_dim(spec: Spectrum, eta) -> int:
    eta = as_eta(eta)
    return spec.multiplicity(Fraction(-2) / eta)


def verify_radical_vs_spectrum(sys: TranspositionSystem, eta, spec: Spectrum | None = None) -> bool:
    """Gram nullity at eta against the multiplicity of rho = -2/eta in T."""
    spec = spec or spectrum(sys)
    return MatsuoAlgebra(sys, eta).radical_dim() == predicted_radical_dim(spec, eta)


# ---------------------------------------------------------------------------
# positive characteristic

def _odd_prime_factors(n: int) -> set[int]:
    n = abs(n)
    out = set()
    while n % 2 == 0 and n:
        n //= 2
    d = 3
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 2
    if n > 1:
        out.add(n)
    return out


def bad_primes(spec: Spectrum | list[int]) -> set[int]:
    """Odd primes dividing some difference of two distinct eigenvalues."""
    values = spec.eigenvalues if isinstance(spec, Spectrum) else list(spec)
    out: set[int] = set()
    for a, b in combinations(values, 2):
        out |= _odd_prime_factors(a - b)
    return out


@dataclass(frozen=True)
class ModPReport:
    p: int
    eta: Fraction
    radical_dim_p: int
    radical_dim_0: int
    semisimple: bool
    good_prime: bool

    @property
    def matches_char0(self) -> bool:
        return self.radical_dim_p == self.radical_dim_0


def mod_p_check(sys: TranspositionSystem, eta, p: int, spec: Spectrum | None = None) -> ModPReport:
    """Gram nullity over F_p against characteristic 0, plus square-freeness of T mod p."""
    field_p = PrimeField(p)
    eta = as_eta(eta)
    if eta.denominator % p == 0:
        raise DenominatorDivisibleByP(eta, p)
    M = MatsuoAlgebra(sys, eta)
    gram = M.frobenius_gram()
    n = M.dim
    dim_p = n - rank_mod_p(mod_p(gram, field_p), field_p)
    dim_0 = M.radical_dim()
    spec = spec or spectrum(sys, strict=False)
    semisimple = is_squarefree_mod_p(spec.minpoly, p)
    return ModPReport(p, eta, dim_p, dim_0, semisimple, p not in bad_primes(spec))


def good_primes(spec: Spectrum, below: int) -> list[int]:
    bad = bad_primes(spec)
    return [p for p in range(3, below) if all(p % d for d in range(2, int(p ** 0.5) + 1)) and p not in bad]
