"""Degeneration of group algebras of finite abelian ell-groups.

For P = prod_i (Z/ell^{r_i})^{n_i} and V = J(F_ell P)/J(F_ell P)^2, any
linear section sigma of the quotient J -> V extends to an algebra map
S(V) -> F_ell P which factors through an isomorphism

    S(V)/(v^{ell^{r_i}} for v in V_i)  ->  F_ell P.

When a finite group E of order prime to ell acts on P (preserving the
factor decomposition), averaging an arbitrary section over E produces an
E-equivariant sigma, so the isomorphism intertwines the two E-actions and
extends to the semidirect products.

The module constructs the averaged section, extends it to the full
monomial basis, and certifies the result exactly: dimension equality,
unitriangularity of the matrix with respect to the radical filtration
(images are leading monomial plus strictly higher-degree terms), the
truncation relations, and E-equivariance on generators.  Any certificate
failure raises InvariantError since it signals a broken construction, not
bad input.

The same data feeds a Koszul-type differential graded algebra
F_ell[t] (x) Lambda(V) (x) S(V) with d(v) = t v^{ell^{r_i}} for v in V_i.
Over the fraction field F_ell(t) its cohomology vanishes outside degree 0
and H^0 is the truncated algebra; dg_cohomology_check verifies both
statements degree by degree with exact linear algebra over F_ell (every
matrix entry of d carries exactly one factor of t, so ranks over F_ell(t)
reduce to ranks over F_ell).

Group algebra elements are stored in "radical coordinates": the products
prod_j (g_j - 1)^{a_j} with 0 <= a_j < ell^{r_j} form a basis of F_ell P,
and since (g - 1)^{ell^r} = g^{ell^r} - 1 = 0, multiplication in that
basis is truncated polynomial multiplication.  Conversions to and from
the group-element basis are binomial expansions.

LIELOCAL_DEGEN_GUARD caps both |P| for basis-level constructions and the
size of the generated automorphism group E (default 4096).
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterator

from .errors import GuardExceeded, InvariantError, check
from .generic_order import is_prime

DEGEN_GUARD = int(os.environ.get("LIELOCAL_DEGEN_GUARD", "4096"))

Exponents = tuple[int, ...]
UPoly = dict[Exponents, int]  # radical coordinates, coefficients mod ell
GroupElt = tuple[int, ...]


# ---------------------------------------------------------------------------
# modular linear algebra helpers


def _inv_mod(a: int, m: int) -> int:
    return pow(a % m, -1, m)


def _matrix_inverse_mod(mat: list[list[int]], ell: int) -> list[list[int]]:
    size = len(mat)
    work = [[mat[r][c] % ell for c in range(size)] +
            [1 if c == r else 0 for c in range(size)] for r in range(size)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col] % ell), None)
        if pivot is None:
            raise ValueError("matrix is singular mod %d" % ell)
        work[col], work[pivot] = work[pivot], work[col]
        inv = _inv_mod(work[col][col], ell)
        work[col] = [x * inv % ell for x in work[col]]
        for r in range(size):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [(x - f * y) % ell for x, y in zip(work[r], work[col])]
    return [row[size:] for row in work]


def _sparse_rank_mod(rows: list[dict[int, int]], ell: int) -> int:
    """Rank over F_ell of a matrix given as sparse rows (column -> entry)."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        row = {c: v % ell for c, v in row.items() if v % ell}
        while row:
            col = min(row)
            if col in pivots:
                base = pivots[col]
                f = row[col] * _inv_mod(base[col], ell) % ell
                for c, v in base.items():
                    new = (row.get(c, 0) - f * v) % ell
                    if new:
                        row[c] = new
                    else:
                        row.pop(c, None)
            else:
                pivots[col] = row
                rank += 1
                break
    return rank


# ---------------------------------------------------------------------------
# the group and its automorphisms


@dataclass(frozen=True)
class AbelianLGroup:
    """P = prod_i (Z/ell^{r_i})^{n_i} with a finite ell'-group of
    automorphisms given by integer generator matrices.

    Coordinates are exponent vectors: coordinate j belongs to factor
    block(j) and is taken mod ell^{r_{block(j)}}.  A generator matrix M
    sends the group generator g_j to prod_k g_k^{M[k][j]}; it must be
    block diagonal with respect to the factor decomposition.
    """

    ell: int
    factors: tuple[tuple[int, int], ...]
    e_generators: tuple[tuple[tuple[int, ...], ...], ...] = ()

    def __post_init__(self) -> None:
        if not is_prime(self.ell):
            raise ValueError("ell must be prime, got %r" % (self.ell,))
        for r, n in self.factors:
            if r < 1 or n < 1:
                raise ValueError("factor (r, n) = (%d, %d) must be positive" % (r, n))
        rank = self.rank
        for mat in self.e_generators:
            if len(mat) != rank or any(len(row) != rank for row in mat):
                raise ValueError("automorphism matrix must be %d x %d" % (rank, rank))
            self._validate_generator(mat)

    def _validate_generator(self, mat) -> None:
        blocks = self.block_index
        rank = self.rank
        for r in range(rank):
            for c in range(rank):
                if blocks[r] != blocks[c] and mat[r][c] % self.moduli[r]:
                    raise ValueError(
                        "automorphism does not preserve the factor decomposition")
        # invertibility mod ell of each diagonal block
        for i in range(len(self.factors)):
            idx = [j for j in range(rank) if blocks[j] == i]
            block = [[mat[r][c] for c in idx] for r in idx]
            try:
                _matrix_inverse_mod(block, self.ell)
            except ValueError:
                raise ValueError("automorphism block %d is singular mod %d"
                                 % (i, self.ell)) from None

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.factors)

    @property
    def block_index(self) -> tuple[int, ...]:
        out = []
        for i, (_, n) in enumerate(self.factors):
            out.extend([i] * n)
        return tuple(out)

    @property
    def moduli(self) -> tuple[int, ...]:
        out = []
        for r, n in self.factors:
            out.extend([self.ell ** r] * n)
        return tuple(out)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def group_elements(self) -> Iterator[GroupElt]:
        return itertools.product(*(range(m) for m in self.moduli))

    def _normalize(self, mat) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(mat[r][c] % self.moduli[r] for c in range(self.rank))
                     for r in range(self.rank))

    def _compose(self, a, b) -> tuple[tuple[int, ...], ...]:
        rank = self.rank
        return tuple(
            tuple(sum(a[r][k] * b[k][c] for k in range(rank)) % self.moduli[r]
                  for c in range(rank))
            for r in range(rank))

    def automorphism_group(self, guard: int = DEGEN_GUARD):
        """All elements of E = <generators>, as normalized matrices."""
        identity = self._normalize(
            [[1 if r == c else 0 for c in range(self.rank)]
             for r in range(self.rank)])
        gens = [self._normalize(m) for m in self.e_generators]
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for mat in frontier:
                for g in gens:
                    prod = self._compose(g, mat)
                    if prod not in seen:
                        if len(seen) >= guard:
                            raise GuardExceeded(
                                "automorphism group exceeds guard %d" % guard)
                        seen.add(prod)
                        nxt.append(prod)
            frontier = nxt
        return sorted(seen)

    def apply_automorphism(self, mat, x: GroupElt) -> GroupElt:
        rank = self.rank
        return tuple(sum(mat[r][c] * x[c] for c in range(rank)) % self.moduli[r]
                     for r in range(rank))


# ---------------------------------------------------------------------------
# radical coordinates for F_ell P


def _u_mult(a: UPoly, b: UPoly, moduli: tuple[int, ...], ell: int) -> UPoly:
    out: UPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = tuple(x + y for x, y in zip(ea, eb))
            if any(e >= m for e, m in zip(exp, moduli)):
                continue
            c = (out.get(exp, 0) + ca * cb) % ell
            if c:
                out[exp] = c
            else:
                out.pop(exp, None)
    return out


def _u_add(a: UPoly, b: UPoly, ell: int, scale: int = 1) -> UPoly:
    out = dict(a)
    for e, c in b.items():
        v = (out.get(e, 0) + scale * c) % ell
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _u_pow(a: UPoly, k: int, moduli: tuple[int, ...], ell: int) -> UPoly:
    zero_exp = tuple(0 for _ in moduli)
    result: UPoly = {zero_exp: 1}
    base = dict(a)
    while k:
        if k & 1:
            result = _u_mult(result, base, moduli, ell)
        k >>= 1
        if k:
            base = _u_mult(base, base, moduli, ell)
    return result


def group_element_to_radical(x: GroupElt, moduli: tuple[int, ...],
                             ell: int) -> UPoly:
    """Expand the basis group element g^x as a polynomial in u_j = g_j - 1:
    prod_j (1 + u_j)^{x_j} = sum_a prod_j C(x_j, a_j) u^a."""
    out: UPoly = {}
    per_coord = [[(a, math.comb(xj, a) % ell) for a in range(xj + 1)
                  if math.comb(xj, a) % ell] for xj in x]
    for combo in itertools.product(*per_coord):
        exp = tuple(a for a, _ in combo)
        coeff = 1
        for _, c in combo:
            coeff = coeff * c % ell
        if coeff:
            out[exp] = coeff
    return out


def group_algebra_to_radical(elem: dict[GroupElt, int], moduli: tuple[int, ...],
                             ell: int) -> UPoly:
    out: UPoly = {}
    for x, c in elem.items():
        if c % ell:
            out = _u_add(out, group_element_to_radical(x, moduli, ell), ell,
                         scale=c)
    return out


def radical_to_group_algebra(poly: UPoly, moduli: tuple[int, ...],
                             ell: int) -> dict[GroupElt, int]:
    """Inverse expansion: u^a = prod_j (g_j - 1)^{a_j}
    = sum_x prod_j (-1)^{a_j - x_j} C(a_j, x_j) g^x."""
    out: dict[GroupElt, int] = {}
    for a, c in poly.items():
        per_coord = [[(x, (-1) ** (aj - x) * math.comb(aj, x) % ell)
                      for x in range(aj + 1)] for aj in a]
        for combo in itertools.product(*per_coord):
            x = tuple(v for v, _ in combo)
            coeff = c
            for _, s in combo:
                coeff = coeff * s % ell
            if coeff:
                v = (out.get(x, 0) + coeff) % ell
                if v:
                    out[x] = v
                else:
                    out.pop(x, None)
    return out


def convolve_group_algebra(a: dict[GroupElt, int], b: dict[GroupElt, int],
                           moduli: tuple[int, ...], ell: int) -> dict[GroupElt, int]:
    out: dict[GroupElt, int] = {}
    for x, cx in a.items():
        for y, cy in b.items():
            z = tuple((u + v) % m for u, v, m in zip(x, y, moduli))
            c = (out.get(z, 0) + cx * cy) % ell
            if c:
                out[z] = c
            else:
                out.pop(z, None)
    return out


# ---------------------------------------------------------------------------
# the truncated symmetric algebra


@dataclass(frozen=True)
class TruncatedAlgebra:
    """S(V)/(v^{ell^{r_i}} for v in V_i): monomials with per-variable
    exponent below ell^{r_i}, truncated multiplication.

    By the freshman's dream the ideal generated by the powers of ALL
    vectors of V_i coincides with the one generated by the basis powers
    v_j^{ell^{r_i}}, so the quotient has this monomial basis.
    """

    ell: int
    moduli: tuple[int, ...]
    block_index: tuple[int, ...]

    @classmethod
    def of_group(cls, group: AbelianLGroup) -> "TruncatedAlgebra":
        return cls(ell=group.ell, moduli=group.moduli,
                   block_index=group.block_index)

    @property
    def dim(self) -> int:
        return math.prod(self.moduli)

    @property
    def n_generators(self) -> int:
        return len(self.moduli)

    def generator(self, j: int) -> UPoly:
        exp = tuple(1 if k == j else 0 for k in range(self.n_generators))
        return {exp: 1}

    def basis(self) -> Iterator[Exponents]:
        return itertools.product(*(range(m) for m in self.moduli))

    def multiply(self, a: UPoly, b: UPoly) -> UPoly:
        return _u_mult(a, b, self.moduli, self.ell)

    def power(self, a: UPoly, k: int) -> UPoly:
        return _u_pow(a, k, self.moduli, self.ell)

    def dimension_of_degree(self, degree: int) -> int:
        counts = [1]
        for m in self.moduli:
            new = [0] * (len(counts) + m - 1)
            for d, c in enumerate(counts):
                for e in range(m):
                    new[d + e] += c
            counts = new
        return counts[degree] if 0 <= degree < len(counts) else 0

    @property
    def top_degree(self) -> int:
        return sum(m - 1 for m in self.moduli)


# ---------------------------------------------------------------------------
# the averaged section and the isomorphism certificate


@dataclass(frozen=True)
class RadicalSection:
    """An E-equivariant linear right inverse V -> J(F_ell P) of the
    projection J -> V = J/J^2, stored in radical coordinates."""

    group: AbelianLGroup
    images: tuple  # per generator of V, a UPoly
    e_order: int

    def to_json(self) -> dict:
        return {
            "ell": self.group.ell,
            "factors": [list(f) for f in self.group.factors],
            "e_order": self.e_order,
            "images": [
                {" ".join(str(x) for x in e): str(c) for e, c in sorted(img.items())}
                for img in self.images
            ],
        }


def radical_section(group: AbelianLGroup, guard: int = DEGEN_GUARD) -> RadicalSection:
    """Average the canonical section v_j -> g_j - 1 over E.

    sigma = |E|^{-1} sum_e  e . sigma_0 . e^{-1}, where e acts on V by the
    generator matrix reduced mod ell and on F_ell P by permuting group
    elements.  Requires |E| prime to ell.
    """
    ell = group.ell
    moduli = group.moduli
    rank = group.rank
    aut = group.automorphism_group(guard)
    if len(aut) % ell == 0:
        raise ValueError(
            "automorphism group order %d is divisible by ell = %d; "
            "no equivariant section by averaging" % (len(aut), ell))
    inv_order = _inv_mod(len(aut), ell)

    images = []
    for j in range(rank):
        total: dict[GroupElt, int] = {}
        for mat in aut:
            mat_v = [[mat[r][c] % ell for c in range(rank)] for r in range(rank)]
            inv_v = _matrix_inverse_mod(mat_v, ell)
            # e^{-1} v_j = sum_k inv_v[k][j] v_k; sigma_0 sends v_k to g_k - 1;
            # then e permutes group elements.
            zero = tuple(0 for _ in range(rank))
            for k in range(rank):
                coeff = inv_v[k][j] % ell
                if not coeff:
                    continue
                g_k = tuple(1 if c == k else 0 for c in range(rank))
                image = group.apply_automorphism(mat, g_k)
                for point, sgn in ((image, 1), (zero, -1)):
                    v = (total.get(point, 0) + sgn * coeff) % ell
                    if v:
                        total[point] = v
                    else:
                        total.pop(point, None)
        scaled = {x: c * inv_order % ell for x, c in total.items()}
        images.append(group_algebra_to_radical(scaled, moduli, ell))

    section = RadicalSection(group=group, images=tuple(images),
                             e_order=len(aut))
    _check_right_inverse(section)
    _check_equivariance(section)
    return section


def _check_right_inverse(section: RadicalSection) -> None:
    rank = section.group.rank
    for j, img in enumerate(section.images):
        zero = tuple(0 for _ in range(rank))
        check(zero not in img, "section image %d has a constant term" % j)
        for k in range(rank):
            e_k = tuple(1 if c == k else 0 for c in range(rank))
            expected = 1 if k == j else 0
            check(img.get(e_k, 0) == expected,
                  "section is not a right inverse at generator %d" % j)


def _action_on_radical(group: AbelianLGroup, mat, poly: UPoly) -> UPoly:
    """Automorphism action in radical coordinates:
    u^a -> prod_j (e(g_j) - 1)^{a_j}."""
    ell = group.ell
    moduli = group.moduli
    rank = group.rank
    zero = tuple(0 for _ in range(rank))
    gen_images = []
    for j in range(rank):
        g_j = tuple(1 if c == j else 0 for c in range(rank))
        elem = {group.apply_automorphism(mat, g_j): 1, zero: -1 % ell}
        if list(elem) == [zero]:  # fixed generator g_j -> g_j
            elem = {}
        gen_images.append(group_algebra_to_radical(elem, moduli, ell))
    out: UPoly = {}
    for a, c in poly.items():
        term: UPoly = {zero: c}
        for j, aj in enumerate(a):
            if aj:
                term = _u_mult(term, _u_pow(gen_images[j], aj, moduli, ell),
                               moduli, ell)
        out = _u_add(out, term, ell)
    return out


def _check_equivariance(section: RadicalSection) -> None:
    group = section.group
    ell = group.ell
    rank = group.rank
    for mat in group.e_generators:
        norm = group._normalize(mat)
        for j in range(rank):
            lhs = _action_on_radical(group, norm, section.images[j])
            rhs: UPoly = {}
            for k in range(rank):
                coeff = norm[k][j] % ell
                if coeff:
                    rhs = _u_add(rhs, section.images[k], ell, scale=coeff)
            check(lhs == rhs,
                  "section is not equivariant at generator %d" % j)


@dataclass(frozen=True)
class IsomorphismCertificate:
    dim_source: int
    dim_target: int
    triangular: bool
    relations_hold: bool
    equivariant: bool
    e_order: int

    @property
    def passed(self) -> bool:
        return (self.dim_source == self.dim_target and self.triangular
                and self.relations_hold and self.equivariant)

    def to_json(self) -> dict:
        return {
            "dim_source": str(self.dim_source),
            "dim_target": str(self.dim_target),
            "dims_equal": self.dim_source == self.dim_target,
            "triangular_leading_terms": self.triangular,
            "relations_hold": self.relations_hold,
            "equivariant_on_generators": self.equivariant,
            "e_order": self.e_order,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class DegenerationIsomorphism:
    group: AbelianLGroup
    algebra: TruncatedAlgebra
    section: RadicalSection
    certificate: IsomorphismCertificate

    def image_of_monomial(self, exponents: Exponents) -> UPoly:
        out: UPoly = {tuple(0 for _ in exponents): 1}
        for j, a in enumerate(exponents):
            if a:
                out = self.algebra.multiply(
                    out, self.algebra.power(self.section.images[j], a))
        return out

    def to_json(self) -> dict:
        return {
            "ell": self.group.ell,
            "factors": [list(f) for f in self.group.factors],
            "order": str(self.group.order),
            "certificate": self.certificate.to_json(),
        }


def build_isomorphism(group: AbelianLGroup,
                      guard: int = DEGEN_GUARD) -> DegenerationIsomorphism:
    """Extend the averaged section multiplicatively and certify that it is
    an E-equivariant isomorphism onto F_ell P.

    The certificate checks dimension equality, the truncation relations
    sigma(v)^{ell^{r_i}} = 0 (on basis vectors and on sums, which the
    freshman's dream reduces to the basis case), unitriangularity with
    respect to total degree (each monomial maps to itself plus strictly
    higher-degree terms, hence the map is bijective), and E-equivariance
    on generators.  A failure raises InvariantError: the construction is
    supposed to make all four true for every valid input.
    """
    if group.order > guard:
        raise GuardExceeded("group order %d exceeds guard %d"
                            % (group.order, guard))
    section = radical_section(group, guard)
    algebra = TruncatedAlgebra.of_group(group)
    ell = group.ell
    rank = group.rank

    relations = True
    for j in range(rank):
        power = algebra.power(section.images[j], group.moduli[j])
        if power:
            relations = False
    # powers of sums inside one factor, exercising (a+b)^ell = a^ell + b^ell
    for i, (_, _) in enumerate(group.factors):
        idx = [j for j in range(rank) if group.block_index[j] == i]
        if len(idx) > 1:
            combo: UPoly = {}
            for t, j in enumerate(idx):
                combo = _u_add(combo, section.images[j], ell, scale=t + 1)
            if algebra.power(combo, group.moduli[idx[0]]):
                relations = False
    check(relations, "truncation relations fail for the averaged section")

    triangular = True
    ladder: dict[Exponents, UPoly] = {}
    zero = tuple(0 for _ in range(rank))
    ladder[zero] = {zero: 1}
    for exps in sorted(algebra.basis(), key=lambda e: (sum(e), e)):
        if exps == zero:
            continue
        j = next(k for k in range(rank) if exps[k])
        prev = tuple(e - 1 if k == j else e for k, e in enumerate(exps))
        image = algebra.multiply(ladder[prev], section.images[j])
        ladder[exps] = image
        degree = sum(exps)
        if image.get(exps, 0) != 1:
            triangular = False
        if any(sum(e) <= degree and e != exps for e in image):
            triangular = False
    check(triangular,
          "images are not unitriangular for the total-degree filtration")

    equivariant = True
    for mat in group.e_generators:
        norm = group._normalize(mat)
        for j in range(rank):
            lhs = _action_on_radical(group, norm, section.images[j])
            rhs: UPoly = {}
            for k in range(rank):
                coeff = norm[k][j] % ell
                if coeff:
                    rhs = _u_add(rhs, section.images[k], ell, scale=coeff)
            if lhs != rhs:
                equivariant = False
    check(equivariant, "extension is not equivariant on generators")

    certificate = IsomorphismCertificate(
        dim_source=algebra.dim,
        dim_target=group.order,
        triangular=triangular,
        relations_hold=relations,
        equivariant=equivariant,
        e_order=section.e_order,
    )
    check(certificate.passed, "isomorphism certificate failed")
    return DegenerationIsomorphism(group=group, algebra=algebra,
                                   section=section, certificate=certificate)


# ---------------------------------------------------------------------------
# the differential graded algebra and its cohomology


@dataclass(frozen=True)
class DGAlgebraA:
    """A = F_ell[t] (x) Lambda(V) (x) S(V), with t and S(V) in degree 0,
    V (the wedge generators) in degree -1, and d(v_j) = t v_j^{ell^{r_j}}.

    Basis elements are triples (t-power, wedge subset, monomial).  The
    wedge generator v_j carries internal degree ell^{r_j} and each
    polynomial variable degree 1, so d preserves internal degree.
    """

    ell: int
    moduli: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.moduli)

    def wedge_degree(self, subset: tuple[int, ...]) -> int:
        return sum(self.moduli[j] for j in subset)

    def differential(self, t_power: int, subset: tuple[int, ...],
                     monomial: Exponents):
        """d of a basis element, as a list of (coeff, t_power+1, subset', monomial')."""
        out = []
        for pos, j in enumerate(subset):
            sign = -1 if pos % 2 else 1
            rest = subset[:pos] + subset[pos + 1:]
            bumped = tuple(e + (self.moduli[j] if k == j else 0)
                           for k, e in enumerate(monomial))
            out.append((sign % self.ell, t_power + 1, rest, bumped))
        return out

    def multiply(self, a: dict, b: dict) -> dict:
        """Product of elements written as {(t_power, subset, monomial): coeff};
        used by the Leibniz checks."""
        out: dict = {}
        for (ta, wa, ma), ca in a.items():
            for (tb, wb, mb), cb in b.items():
                if set(wa) & set(wb):
                    continue
                merged = tuple(sorted(wa + wb))
                # sign of the shuffle sorting wa + wb
                seq = list(wa + wb)
                sign = 1
                for i in range(len(seq)):
                    for k in range(i + 1, len(seq)):
                        if seq[i] > seq[k]:
                            sign = -sign
                key = (ta + tb, merged,
                       tuple(x + y for x, y in zip(ma, mb)))
                c = (out.get(key, 0) + sign * ca * cb) % self.ell
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        return out

    def d_of_element(self, elem: dict) -> dict:
        out: dict = {}
        for (t_power, subset, monomial), coeff in elem.items():
            for sgn, tp, rest, bumped in self.differential(t_power, subset,
                                                           monomial):
                key = (tp, rest, bumped)
                c = (out.get(key, 0) + sgn * coeff) % self.ell
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        return out

    def check_d_squared(self) -> None:
        for size in range(self.n + 1):
            for subset in itertools.combinations(range(self.n), size):
                elem = {(0, subset, tuple(0 for _ in range(self.n))): 1}
                dd = self.d_of_element(self.d_of_element(elem))
                check(not dd, "d^2 is nonzero on wedge %r" % (subset,))

    def check_leibniz(self, pairs) -> None:
        for a, b in pairs:
            left = self.d_of_element(self.multiply(a, b))
            da_b = self.multiply(self.d_of_element(a), b)
            # sign: d(ab) = (da)b + (-1)^{deg a} a (db); basis elements of a
            # must share one wedge size for the sign to be well defined
            sizes = {len(w) for (_, w, _) in a}
            check(len(sizes) == 1, "Leibniz test needs homogeneous left factor")
            sign = -1 if sizes.pop() % 2 else 1
            a_db = self.multiply(a, self.d_of_element(b))
            rhs = dict(da_b)
            for key, c in a_db.items():
                v = (rhs.get(key, 0) + sign * c) % self.ell
                if v:
                    rhs[key] = v
                else:
                    rhs.pop(key, None)
            check(left == rhs, "Leibniz rule fails")


@dataclass(frozen=True)
class DGReport:
    ell: int
    factors: tuple[tuple[int, int], ...]
    degree_bound: int
    h0_dims: tuple[int, ...]
    truncated_dims: tuple[int, ...]
    nonzero_cohomology: tuple  # (cohomological degree, internal degree, dim)
    complete: bool

    @property
    def passed(self) -> bool:
        return (not self.nonzero_cohomology
                and self.h0_dims == self.truncated_dims)

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "factors": [list(f) for f in self.factors],
            "degree_bound": self.degree_bound,
            "h0_dims": list(self.h0_dims),
            "truncated_dims": list(self.truncated_dims),
            "nonzero_cohomology": [list(x) for x in self.nonzero_cohomology],
            "complete": self.complete,
            "passed": self.passed,
        }


def _monomials_of_degree(n: int, degree: int) -> list[Exponents]:
    if degree < 0:
        return []
    if n == 0:
        return [()] if degree == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for x in range(remaining + 1):
            rec(prefix + (x,), remaining - x, slots - 1)

    rec((), degree, n)
    return out


def dg_cohomology_check(group: AbelianLGroup, degree_bound: int) -> DGReport:
    """Verify, over F_ell(t) and degree by degree up to the bound, that the
    Koszul-type complex has cohomology only in degree 0, where it matches
    the truncated algebra.

    Every entry of d carries exactly one factor of t, so ranks over
    F_ell(t) equal ranks of the t-stripped matrices over F_ell.  Each
    internal degree is a finite complex computed completely, so the
    verdict per degree is exact; the bound only limits which internal
    degrees are inspected.  A bound too small to reach any truncation
    relation is rejected as inconclusive.
    """
    ell = group.ell
    moduli = group.moduli
    dga = DGAlgebraA(ell=ell, moduli=moduli)
    algebra = TruncatedAlgebra.of_group(group)
    if degree_bound < max(moduli, default=0):
        raise ValueError(
            "inconclusive at bound %d: no truncation relation has internal "
            "degree below %d" % (degree_bound, max(moduli)))

    n = dga.n
    h0 = []
    truncated = []
    bad = []
    for degree in range(degree_bound + 1):
        # bases per cohomological degree -k
        layers: list[list[tuple[tuple[int, ...], Exponents]]] = []
        k = 0
        while True:
            layer = []
            for subset in itertools.combinations(range(n), k):
                rest = degree - dga.wedge_degree(subset)
                for mono in _monomials_of_degree(n, rest):
                    layer.append((subset, mono))
            if not layer and k > 0:
                break
            layers.append(layer)
            k += 1
        ranks = []
        for k in range(1, len(layers)):
            index = {basis_elt: i for i, basis_elt in enumerate(layers[k - 1])}
            rows = []
            for subset, mono in layers[k]:
                row: dict[int, int] = {}
                for sgn, _, rest, bumped in dga.differential(0, subset, mono):
                    col = index[(rest, bumped)]
                    row[col] = (row.get(col, 0) + sgn) % ell
                rows.append(row)
            ranks.append(_sparse_rank_mod(rows, ell))
        ranks.append(0)  # nothing maps into the deepest layer

        for k in range(1, len(layers)):
            kernel = len(layers[k]) - ranks[k - 1]
            image_in = ranks[k] if k < len(ranks) else 0
            h_dim = kernel - image_in
            if h_dim:
                bad.append((-k, degree, h_dim))
        h0_dim = len(layers[0]) - (ranks[0] if ranks else 0)
        h0.append(h0_dim)
        truncated.append(algebra.dimension_of_degree(degree))

    report = DGReport(
        ell=ell,
        factors=group.factors,
        degree_bound=degree_bound,
        h0_dims=tuple(h0),
        truncated_dims=tuple(truncated),
        nonzero_cohomology=tuple(bad),
        complete=degree_bound >= algebra.top_degree,
    )
    check(not bad, "cohomology outside degree zero: %r" % (bad,))
    check(report.h0_dims == report.truncated_dims,
          "H^0 dimensions %r do not match the truncated algebra %r"
          % (report.h0_dims, report.truncated_dims))
    return report
