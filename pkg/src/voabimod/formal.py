"""Exact formal calculus: generalized binomials, Laurent polynomials, residues.

Also hosts the verifiers for the formal-variable identities that the
bimodule construction relies on (the ``A_{m,n}(z) = 1`` identity, the
two-variable ``D_{n,m}`` vanishing identity, the ``z^{-l}`` double sum and
the alternating binomial convolution).
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, Mapping, Tuple, Union

from .vectors import Q

Rational = Fraction
Number = Union[int, Fraction]


@lru_cache(maxsize=None)
def binom(alpha: int, k: int) -> Fraction:
    """Generalized binomial coefficient ``alpha(alpha-1)...(alpha-k+1)/k!``.

    ``alpha`` may be any integer; returns 0 for ``k < 0``.
    """
    if k < 0:
        return Q(0)
    num = 1
    for t in range(k):
        num *= alpha - t
    return Q(num, factorial(k))


def ibinom(alpha: int, k: int) -> int:
    """Integer-valued version of :func:`binom` (it is always integral)."""
    b = binom(alpha, k)
    return b.numerator


def _frac(x) -> Fraction:
    # Fraction does not mix with gmpy2 scalars
    return x if isinstance(x, Fraction) else Fraction(int(x.numerator), int(x.denominator))


class LaurentPoly:
    """Finitely supported Laurent polynomial in one or two named variables.

    Terms are stored as ``{exponent tuple: Fraction}`` with no zero entries, so
    structural equality is polynomial equality.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Union[str, Tuple[str, ...]], terms: Mapping = None):
        if isinstance(variables, str):
            variables = (variables,)
        variables = tuple(variables)
        if not 1 <= len(variables) <= 2:
            raise ValueError("LaurentPoly supports one or two variables")
        self.variables = variables
        clean: Dict[Tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            if isinstance(exp, int):
                exp = (exp,)
            exp = tuple(exp)
            if len(exp) != len(variables):
                raise ValueError(f"exponent {exp} does not match variables {variables}")
            c = _frac(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = dict(sorted(clean.items()))

    # construction helpers
    @classmethod
    def constant(cls, variables, c: Number = 1) -> "LaurentPoly":
        nv = 1 if isinstance(variables, str) else len(variables)
        return cls(variables, {(0,) * nv: c})

    @classmethod
    def monomial(cls, variables, exponents, c: Number = 1) -> "LaurentPoly":
        if isinstance(exponents, int):
            exponents = (exponents,)
        return cls(variables, {tuple(exponents): c})

    def _check(self, other: "LaurentPoly") -> None:
        if other.variables != self.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, numbers.Rational):
            return LaurentPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Rational):
            other = _frac(other)
            return LaurentPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, numbers.Rational):
            other = LaurentPoly.constant(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponents) -> Fraction:
        if isinstance(exponents, int):
            exponents = (exponents,)
        return self.terms.get(tuple(exponents), Fraction(0))

    def degree_bounds(self, variable: str = None) -> Tuple[int, int]:
        """(lowest, highest) exponent of ``variable``; raises on the zero polynomial."""
        idx = self._index(variable or self.variables[0])
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        exps = [e[idx] for e in self.terms]
        return min(exps), max(exps)

    def _index(self, variable: str) -> int:
        try:
            return self.variables.index(variable)
        except ValueError:
            raise KeyError(f"unknown variable {variable!r}; have {self.variables}") from None

    def derivative(self, variable: str = None) -> "LaurentPoly":
        idx = self._index(variable or self.variables[0])
        out = {}
        for e, c in self.terms.items():
            if e[idx]:
                ne = list(e)
                ne[idx] -= 1
                out[tuple(ne)] = c * e[idx]
        return LaurentPoly(self.variables, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mon = "*".join(f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            parts.append(f"{c}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


def residue(p: LaurentPoly, variable: str = None) -> Union[Fraction, LaurentPoly]:
    """Coefficient of ``variable^{-1}``.

    Returns a Fraction for a univariate input, otherwise a LaurentPoly in the
    remaining variable.
    """
    variable = variable or p.variables[0]
    idx = p._index(variable)
    if len(p.variables) == 1:
        return p.terms.get((-1,), Fraction(0))
    rest = tuple(v for i, v in enumerate(p.variables) if i != idx)
    out = {}
    for e, c in p.terms.items():
        if e[idx] == -1:
            out[tuple(x for i, x in enumerate(e) if i != idx)] = c
    return LaurentPoly(rest, out)


def expand_binomial_power(base_offset: int, exponent: int, truncation_order: int,
                          variable: str = "z") -> LaurentPoly:
    """``z^base_offset * (1+z)^exponent`` expanded in nonnegative powers of z.

    For ``exponent >= 0`` the result is exact; for a negative exponent the
    series is truncated after ``z^(base_offset + truncation_order)``.
    """
    if truncation_order < 0:
        raise ValueError("truncation_order must be nonnegative")
    top = exponent if exponent >= 0 else truncation_order
    return LaurentPoly(variable, {base_offset + k: binom(exponent, k) for k in range(top + 1)})


def _pow1pz(k: int, var: str = "z") -> LaurentPoly:
    return expand_binomial_power(0, k, 0, var)


# ---------------------------------------------------------------------------
# identity verifiers


def a_mn_polynomial(m: int, n: int) -> LaurentPoly:
    """The Laurent polynomial ``A_{m,n}(z)`` built term by term."""
    total = LaurentPoly("z")
    head = _pow1pz(n + 1)
    for i in range(m + 1):
        total = total + head * LaurentPoly.monomial("z", -(n + i + 1), (-1) ** i * binom(n + i, i))
    for i in range(n + 1):
        total = total - _pow1pz(i) * LaurentPoly.monomial("z", -(m + i + 1), (-1) ** m * binom(m + i, i))
    return total


def verify_prop51(m: int, n: int) -> Tuple[bool, LaurentPoly]:
    """Check ``A_{m,n}(z) == 1`` exactly; returns (ok, computed polynomial)."""
    if m < 0 or n < 0:
        raise ValueError("m, n must be nonnegative")
    poly = a_mn_polynomial(m, n)
    return poly == 1, poly


def d_nm_polynomial(n: int, m: int) -> LaurentPoly:
    """The two-variable Laurent polynomial ``D_{n,m}(z1, z2)``."""
    vars2 = ("z1", "z2")
    total = LaurentPoly(vars2)
    for i in range(n + 1):
        inner: Dict[Tuple[int, int], Fraction] = {}
        for j in range(n - i + 1):
            cj = (-1) ** j * binom(-m - i - 1, j)
            for l in range(i + 1):
                key = (-(j + i), j + l)
                inner[key] = inner.get(key, 0) + cj * binom(i, l)
        inner[(-i, 0)] = inner.get((-i, 0), 0) - 1
        total = total + LaurentPoly(vars2, inner) * ((-1) ** i * binom(m + i, i))
    return total


def verify_prop52(n: int, m: int) -> Tuple[bool, LaurentPoly]:
    """Check ``D_{n,m}(z1, z2) == 0`` exactly."""
    if m < 0 or n < 0:
        raise ValueError("n, m must be nonnegative")
    poly = d_nm_polynomial(n, m)
    return poly.is_zero(), poly


def verify_prop53(k: int, l: int) -> Tuple[bool, LaurentPoly]:
    """Check the double sum over ``(-1)^(i+j) C(-l,j) C(l+i+j-1,i) z^-(i+j+l)`` equals ``z^-l``."""
    if l < 1 or k + 1 - l < 0:
        raise ValueError(f"need l >= 1 and k+1-l >= 0, got k={k}, l={l}")
    out: Dict[int, Fraction] = {}
    top = k + 1 - l
    for j in range(top + 1):
        cj = (-1) ** j * binom(-l, j)
        for i in range(top - j + 1):
            e = -(i + j + l)
            out[e] = out.get(e, 0) + cj * (-1) ** i * binom(l + i + j - 1, i)
    poly = LaurentPoly("z", out)
    return poly == LaurentPoly.monomial("z", -l), poly


def vandermonde_sum(n: int, m: int, p: int, k: int) -> Fraction:
    a = n + m - p
    return sum((binom(a + i, i) * binom(-a - i - 1, k - i) for i in range(k + 1)), Fraction(0))


def verify_vandermonde_vanishing(n: int, m: int, p: int, k: int) -> bool:
    """True iff ``sum_i C(n+m-p+i, i) C(-n-m+p-i-1, k-i)`` vanishes (needs 1 <= k <= p)."""
    if not 1 <= k <= p:
        raise ValueError(f"need 1 <= k <= p, got k={k}, p={p}")
    return vandermonde_sum(n, m, p, k) == 0


def appendix_grid() -> Iterable[Tuple[str, tuple]]:
    """The default verification grid: every parameter tuple the appendix suite runs."""
    for m in range(9):
        for n in range(9):
            yield "prop51", (m, n)
    for n in range(7):
        for m in range(7):
            yield "prop52", (n, m)
    for l in range(1, 7):
        for k in range(l - 1, 13):
            yield "prop53", (k, l)
    for n in range(5):
        for m in range(5):
            for p in range(1, 5):
                for k in range(1, p + 1):
                    yield "vandermonde", (n, m, p, k)


def run_appendix(grid: Iterable[Tuple[str, tuple]] = None):
    """Evaluate every verifier on the grid; returns list of (name, params, ok)."""
    fns = {
        "prop51": lambda a: verify_prop51(*a)[0],
        "prop52": lambda a: verify_prop52(*a)[0],
        "prop53": lambda a: verify_prop53(*a)[0],
        "vandermonde": lambda a: verify_vandermonde_vanishing(*a),
    }
    return [(name, params, fns[name](params)) for name, params in (grid or appendix_grid())]
