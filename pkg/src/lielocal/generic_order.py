"""Generic order polynomials |G(q)| = q^N · prod_d Phi_d(q)^{a(d)}.

The order of the finite group attached to a (possibly twisted) datum is a
product q^N · prod_i (q^{d_i} - eps_i) over the reflection degrees d_i, where
eps_i are roots of unity recording the twist (all 1 in the split case).  The
tables are classical; nothing here trusts them: the expansion is factored
exactly into cyclotomic polynomials (hard failure if anything is left over),
and the test suite compares evaluations against brute-force matrix-group
counts.

GL/GU mode (degrees 1..n, the extra torus factor) is provided for the
partition-combinatorics cross-checks; those groups are not simple and have no
RootDatum here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cyclotomic import cyclotomic, factor_into_cyclotomics, poly_eval, poly_mul
from .errors import InvariantError, UnsupportedTypeError, check
from .root_datum import RootDatum

# eps values as (order, exponent): exp(2*pi*i*exponent/order)
_ONE = (1, 0)
_MINUS = (2, 1)
_OMEGA = (3, 1)
_OMEGA2 = (3, 2)


def _split_degrees(family: str, n: int) -> list[int]:
    if family == "A":
        return list(range(2, n + 2))
    if family in ("B", "C"):
        return [2 * i for i in range(1, n + 1)]
    if family == "D":
        return [2 * i for i in range(1, n)] + [n]
    if family == "G":
        return [2, 6]
    if family == "F":
        return [2, 6, 8, 12]
    if family == "E":
        return {6: [2, 5, 6, 8, 9, 12],
                7: [2, 6, 8, 10, 12, 14, 18],
                8: [2, 8, 12, 14, 18, 20, 24, 30]}[n]
    raise UnsupportedTypeError(f"unsupported family {family}")


def factor_pairs_for(label: str) -> list[tuple[int, tuple[int, int]]]:
    """(degree, eps) list for a type label, eps a root of unity as
    (order, exponent)."""
    m = re.match(r"^([23]?)([A-G])(\d+)$", label)
    if not m:
        raise UnsupportedTypeError(f"unsupported type {label!r}")
    twist = int(m.group(1) or "1")
    family, n = m.group(2), int(m.group(3))
    degrees = _split_degrees(family, n)
    if twist == 1:
        return [(d, _ONE) for d in degrees]
    if family == "A":
        # eps_i = (-1)^{d_i}: factors q^d - 1 (d even), q^d + 1 (d odd)
        return [(d, _ONE if d % 2 == 0 else _MINUS) for d in degrees]
    if family == "D" and twist == 2:
        # eps = -1 on exactly one degree-n factor
        pairs = []
        flipped = False
        for d in degrees:
            if d == n and not flipped:
                pairs.append((d, _MINUS))
                flipped = True
            else:
                pairs.append((d, _ONE))
        return pairs
    if family == "D" and twist == 3:
        # the two degree-4 factors pair into q^8 + q^4 + 1
        return [(2, _ONE), (4, _OMEGA), (4, _OMEGA2), (6, _ONE)]
    if family == "E":
        return [(d, _MINUS if d in (5, 9) else _ONE) for d in degrees]
    raise UnsupportedTypeError(f"unsupported twisted type {label!r}")


@dataclass(frozen=True)
class CycloFactorization:
    """|G(q)| = q^qpower · prod Phi_d(q)^{exponents[d]}."""

    label: str
    rank: int
    qpower: int
    exponents: tuple[tuple[int, int], ...]  # sorted (d, a(d)) pairs
    factor_pairs: tuple[tuple[int, tuple[int, int]], ...]

    def exponent(self, d: int) -> int:
        return dict(self.exponents).get(d, 0)

    def to_json(self) -> dict:
        return {
            "type": self.label,
            "rank": self.rank,
            "qpower": str(self.qpower),
            "exponents": {str(d): str(a) for d, a in self.exponents},
            "factor_pairs": [[d, [o, e]] for d, (o, e) in self.factor_pairs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycloFactorization":
        return cls(
            label=data["type"],
            rank=int(data["rank"]),
            qpower=int(data["qpower"]),
            exponents=tuple(sorted((int(d), int(a)) for d, a in data["exponents"].items())),
            factor_pairs=tuple((int(d), (int(o), int(e)))
                               for d, (o, e) in data["factor_pairs"]),
        )


def _expand_and_factor(label: str, rank: int, qpower: int,
                       pairs: list[tuple[int, tuple[int, int]]]) -> CycloFactorization:
    check(sum(d for d, _ in pairs) == qpower + rank,
          f"{label}: sum of degrees {sum(d for d, _ in pairs)} != N + rank")
    # multiply real factors directly; complex eps come in conjugate pairs
    poly = [1]
    omega_pending: dict[int, int] = {}
    candidates: set[int] = set()
    for d, (order, exp) in pairs:
        for k in range(1, order * d + 1):
            if (order * d) % k == 0:
                candidates.add(k)
        if order == 1:
            factor = [-1] + [0] * (d - 1) + [1]
        elif order == 2:
            factor = [1] + [0] * (d - 1) + [1]
        elif order == 3:
            omega_pending[d] = omega_pending.get(d, 0) + (1 if exp == 1 else -1)
            if omega_pending[d] == 0:
                # (q^d - w)(q^d - w^2) = q^{2d} + q^d + 1
                factor = [1] + [0] * (d - 1) + [1] + [0] * (d - 1) + [1]
            else:
                continue
        else:
            raise InvariantError(f"unsupported eps order {order}")
        poly = poly_mul(poly, factor)
    check(all(v == 0 for v in omega_pending.values()),
          f"{label}: unpaired complex eps factors")
    exps = factor_into_cyclotomics(poly, sorted(candidates))
    return CycloFactorization(
        label=label,
        rank=rank,
        qpower=qpower,
        exponents=tuple(sorted(exps.items())),
        factor_pairs=tuple((d, e) for d, e in pairs),
    )


def generic_order(datum: RootDatum) -> CycloFactorization:
    """Cyclotomic factorization of the generic order of the simply connected
    group with this datum."""
    pairs = factor_pairs_for(datum.label)
    return _expand_and_factor(datum.label, datum.rank, datum.N, pairs)


def gl_order(n: int, unitary: bool = False) -> CycloFactorization:
    """Generic order of GL_n(q) (or GU_n(q) with unitary=True): degrees 1..n,
    eps_i = 1 (GL) or (-1)^i (GU)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if unitary:
        pairs = [(i, _ONE if i % 2 == 0 else _MINUS) for i in range(1, n + 1)]
    else:
        pairs = [(i, _ONE) for i in range(1, n + 1)]
    label = ("GU" if unitary else "GL") + str(n)
    return _expand_and_factor(label, n, n * (n - 1) // 2, pairs)


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    i = 2
    while i * i <= m:
        if m % i == 0:
            return False
        i += 1
    return True


def prime_power_base(q: int) -> int | None:
    """The prime p with q = p^k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            m = q
            while m % p == 0:
                m //= p
            return p if m == 1 else None
        p += 1
    return q  # q itself prime


def evaluate_order(f: CycloFactorization, q: int) -> int:
    """Exact integer order at a prime power q."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if prime_power_base(q) is None:
        raise ValueError(f"q = {q} is not a prime power")
    value = q**f.qpower
    for d, a in f.exponents:
        value *= poly_eval(list(cyclotomic(d)), q) ** a
    check(value > 0, "order must be positive")
    return value


def valuation(n: int, ell: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def multiplicative_order(q: int, ell: int) -> int:
    d = 1
    x = q % ell
    if x == 0:
        raise ValueError("q not invertible mod ell")
    acc = x
    while acc != 1:
        acc = acc * x % ell
        d += 1
    return d


def ell_part(f: CycloFactorization, q: int, ell: int) -> tuple[int, int]:
    """(d, nu) with d the multiplicative order of q mod ell and nu the exact
    ell-adic valuation of |G(q)|."""
    if not is_prime(ell):
        raise ValueError(f"ell = {ell} is not prime")
    if q % ell == 0:
        raise ValueError("defining characteristic: use defining_char")
    if q < 2 or prime_power_base(q) is None:
        raise ValueError(f"q = {q} is not a prime power")
    d = multiplicative_order(q, ell)
    nu = 0
    for e, a in f.exponents:
        value = poly_eval(list(cyclotomic(e)), q)
        if value % ell == 0:
            nu += a * valuation(value, ell)
    check(nu == valuation(evaluate_order(f, q), ell),
          "cyclotomic ell-valuation disagrees with the integer order")
    return d, nu
