"""Laurent polynomials over Z in one variable, exact.

Used in two roles: Hecke-algebra coefficients (variable ``x``) and Fock-space
coefficients (variable ``v``).  The representation is a dict mapping exponent
(int, possibly negative) to nonzero int coefficient.  Instances are immutable
in practice: all operations return new objects.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping


class Laurent:
    """A Laurent polynomial with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | int = 0):
        if isinstance(coeffs, int):
            self._c = {0: coeffs} if coeffs else {}
        else:
            self._c = {e: c for e, c in coeffs.items() if c}

    # -- constructors ------------------------------------------------------

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "Laurent":
        return cls({exponent: coeff})

    @classmethod
    def variable(cls) -> "Laurent":
        return cls({1: 1})

    # -- basic queries ------------------------------------------------------

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c)

    def max_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    def constant_term(self) -> int:
        return self._c.get(0, 0)

    # -- arithmetic ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Laurent(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            other = Laurent(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return Laurent(c)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            other = Laurent(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "Laurent":
        return Laurent(other) - self

    def __mul__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            other = Laurent(other)
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return Laurent(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            raise ValueError("negative powers only for monomials; shift instead")
        result = Laurent(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, k: int) -> "Laurent":
        """Multiply by the k-th power of the variable."""
        return Laurent({e + k: v for e, v in self._c.items()})

    def bar(self) -> "Laurent":
        """The involution sending the variable to its inverse."""
        return Laurent({-e: v for e, v in self._c.items()})

    def exact_div(self, other: "Laurent") -> "Laurent":
        """Divide, requiring an exact Laurent quotient over Z."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return Laurent(0)
        # Normalize to ordinary polynomials: strip minimal degrees.
        a_shift = self.min_degree()
        b_shift = other.min_degree()
        num = {e - a_shift: v for e, v in self._c.items()}
        den = {e - b_shift: v for e, v in other._c.items()}
        dn = max(den)
        lead = den[dn]
        quo: dict[int, int] = {}
        while num:
            n = max(num)
            if n < dn:
                raise ValueError("not exactly divisible")
            c, r = divmod(num[n], lead)
            if r:
                raise ValueError("not exactly divisible over Z")
            quo[n - dn] = c
            for e, v in den.items():
                k = e + n - dn
                w = num.get(k, 0) - c * v
                if w:
                    num[k] = w
                elif k in num:
                    del num[k]
        return Laurent({e + a_shift - b_shift: v for e, v in quo.items()})

    # -- evaluation ----------------------------------------------------------

    def __call__(self, value):
        """Evaluate.  Exact for int/Fraction arguments; negative exponents
        require an invertible value."""
        total = 0
        for e, c in self._c.items():
            if e >= 0:
                total += c * value**e
            else:
                total += c * Fraction(1, 1) / Fraction(value) ** (-e)
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def eval_mod(self, value: int, modulus: int) -> int:
        """Evaluate at ``value`` modulo ``modulus``; negative exponents need
        ``value`` invertible mod ``modulus``."""
        inv = None
        total = 0
        for e, c in self._c.items():
            if e >= 0:
                total += c * pow(value, e, modulus)
            else:
                if inv is None:
                    inv = pow(value, -1, modulus)
                total += c * pow(inv, -e, modulus)
        return total % modulus

    # -- display -------------------------------------------------------------

    def to_string(self, var: str = "v") -> str:
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items()):
            if e == 0:
                term = str(c)
            else:
                if c == 1:
                    term = ""
                elif c == -1:
                    term = "-"
                else:
                    term = str(c) + "*"
                term += var if e == 1 else f"{var}^{e}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out

    def __repr__(self) -> str:
        return f"Laurent({self.to_string()})"

    def to_json(self) -> dict[str, str]:
        """Exponent -> coefficient, both as decimal strings."""
        return {str(e): str(c) for e, c in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "Laurent":
        return cls({int(e): int(c) for e, c in data.items()})


def quantum_integer(k: int) -> Laurent:
    """[k] = (v^k - v^-k)/(v - v^-1) = v^(k-1) + v^(k-3) + ... + v^(1-k)."""
    if k < 0:
        return -quantum_integer(-k)
    return Laurent({k - 1 - 2 * i: 1 for i in range(k)})


def quantum_factorial(k: int) -> Laurent:
    out = Laurent(1)
    for i in range(2, k + 1):
        out = out * quantum_integer(i)
    return out


def poly_from_coeffs(coeffs: Iterable[int]) -> Laurent:
    """Laurent polynomial from an ordinary coefficient list, degree 0 first."""
    return Laurent({i: c for i, c in enumerate(coeffs)})
