"""Integer polynomials: minimal polynomials, integer roots, square-freeness mod p."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence


def _strip(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class IntPoly:
    """Polynomial with integer coefficients, stored low-to-high degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integral coefficient {c}")
                c = c.numerator
            cs.append(int(c))
        self.coeffs: tuple[int, ...] = tuple(_strip(cs))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @classmethod
    def x(cls) -> IntPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: IntPoly) -> IntPoly:
        if self.is_zero() or other.is_zero():
            return IntPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def derivative(self) -> IntPoly:
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divide_linear(self, root: int) -> IntPoly:
        """Exact quotient by (x - root); raises if root is not a root."""
        q = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * root + c
            q.append(acc)
        if q[-1] != 0:
            raise ValueError(f"{root} is not a root of {self}")
        return IntPoly(reversed(q[:-1]))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


# rational helpers (lists of Fraction, low-to-high)

def _qdivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - db, 1)
    lead = Fraction(b[-1])
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
        _strip(a)
    return _strip(q), a


def _qmonic(a: list) -> list:
    lead = a[-1]
    return [Fraction(c) / lead for c in a]


def _qgcd(a: Sequence, b: Sequence) -> list:
    a = _strip([Fraction(c) for c in a])
    b = _strip([Fraction(c) for c in b])
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    return _qmonic(a) if a else []


def poly_lcm(a: IntPoly, b: IntPoly) -> IntPoly:
    """Monic lcm of two monic integer polynomials."""
    if a.is_zero() or b.is_zero():
        return IntPoly([])
    g = _qgcd(a.coeffs, b.coeffs)
    q, r = _qdivmod([Fraction(c) for c in a.coeffs], g)
    assert not r
    # q is monic with integer coefficients by Gauss's lemma
    return IntPoly(q) * b


def _divisors_upto(n: int, bound: int) -> list[int]:
    n = abs(n)
    out = set()
    for d in range(1, min(isqrt(n), bound) + 1):
        if n % d == 0:
            out.add(d)
            if n // d <= bound:
                out.add(n // d)
    return sorted(out)


def integer_roots(p: IntPoly) -> tuple[list[int], IntPoly]:
    """Strip every integer root from a monic polynomial.

    Returns:
        (roots, residual): the distinct integer roots in descending order, and
        the quotient of ``p`` by all corresponding linear factors (with
        multiplicity). The residual is the constant 1 when ``p`` splits over Z.
    """
    if p.is_zero() or not p.is_monic():
        raise ValueError("integer_roots expects a monic nonzero polynomial")
    roots: list[int] = []
    rest = p
    while rest.degree > 0 and rest.coeffs[0] == 0:
        rest = rest.divide_linear(0)
        if 0 not in roots:
            roots.append(0)
    if rest.degree > 0:
        bound = 1 + max(abs(c) for c in rest.coeffs[:-1])
        for d in _divisors_upto(rest.coeffs[0], bound):
            for r in (d, -d):
                while rest.degree > 0 and rest(r) == 0:
                    rest = rest.divide_linear(r)
                    if r not in roots:
                        roots.append(r)
    for r in roots:
        assert p(r) == 0
    return sorted(roots, reverse=True), rest


# arithmetic over F_p, coefficient lists low-to-high

def _pstrip(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list, b: list, p: int) -> list:
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while a and len(a) - 1 >= db:
        f = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % p
        _pstrip(a)
    return a


def gcd_mod_p(a: IntPoly, b: IntPoly, p: int) -> list[int]:
    x = _pstrip([c % p for c in a.coeffs])
    y = _pstrip([c % p for c in b.coeffs])
    while y:
        x, y = y, _pmod(x, y, p)
    if x:
        inv = pow(x[-1], -1, p)
        x = [c * inv % p for c in x]
    return x


def is_squarefree_mod_p(poly: IntPoly, p: int) -> bool:
    """True iff ``poly`` reduced mod p has no repeated factor over the algebraic closure."""
    reduced = _pstrip([c % p for c in poly.coeffs])
    if len(reduced) <= 1:
        return True
    return len(gcd_mod_p(poly, poly.derivative(), p)) == 1
