"""Finite Weyl groups: exact enumeration, twisted classes, regular elements.

Elements are represented two ways at once:

* a permutation of the 2N signed roots (indices 0..N-1 the positive roots,
  N+k the negative of root k) — fast composition and length/descent queries;
* an integer matrix on the weight lattice — needed for eigenspace work.

The same machinery drives both the crystallographic groups coming from a
:class:`~lielocal.root_datum.RootDatum` and the symmetric group S_n acting on
Z^n (GL mode), via :class:`ReflectionContext`.

The permutation context works without enumerating the group, so the braid
module can handle E_7/E_8 word problems; full enumeration is guarded at 10^6
elements and refuses those types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import (
    CycloField,
    cyclo_kernel,
    cyclo_rref,
    euler_phi,
    factor_into_cyclotomics,
)
from .errors import GuardExceeded, InvariantError, check
from .linalg import identity, mat_mul, mat_vec, rank
from .root_datum import RootDatum

WEYL_GUARD = 10**6


# ---------------------------------------------------------------------------
# Reflection contexts


class ReflectionContext:
    """A finite reflection action given by generator matrices and the root
    vectors they permute.  Provides permutation arithmetic on signed roots
    without enumerating the group."""

    def __init__(self, label: str, gen_matrices, pos_root_vectors,
                 coroot_functionals, phi_matrix, gram, predicted_order: int | None):
        self.label = label
        self.dim = len(gen_matrices[0]) if gen_matrices else len(phi_matrix)
        self.n_gens = len(gen_matrices)
        self.gen_matrices = [tuple(tuple(row) for row in m) for m in gen_matrices]
        self.pos_roots = [tuple(v) for v in pos_root_vectors]
        self.N = len(self.pos_roots)
        self.coroots = [tuple(c) for c in coroot_functionals]
        self.phi_mat = tuple(tuple(row) for row in phi_matrix)
        self.gram = gram  # rational Gram matrix of the invariant form
        self.predicted_order = predicted_order
        self._index = {}
        for k, v in enumerate(self.pos_roots):
            self._index[v] = k
            self._index[tuple(-x for x in v)] = k + self.N
        self.gen_perms = [self._perm_of_matrix(m) for m in self.gen_matrices]
        self.phi_perm = self._perm_of_matrix(self.phi_mat)
        self.identity_perm = tuple(range(2 * self.N))

    def _signed_vector(self, idx: int) -> tuple[int, ...]:
        if idx < self.N:
            return self.pos_roots[idx]
        return tuple(-x for x in self.pos_roots[idx - self.N])

    def _perm_of_matrix(self, m) -> tuple[int, ...]:
        out = []
        for k in range(2 * self.N):
            image = tuple(mat_vec(m, self._signed_vector(k)))
            if image not in self._index:
                raise InvariantError("matrix does not permute the roots")
            out.append(self._index[image])
        return tuple(out)

    # permutation helpers -----------------------------------------------------

    def compose(self, p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
        """Permutation of the map p∘q (apply q first)."""
        return tuple(p[x] for x in q)

    def invert(self, p: tuple[int, ...]) -> tuple[int, ...]:
        out = [0] * len(p)
        for i, x in enumerate(p):
            out[x] = i
        return tuple(out)

    def length(self, p: tuple[int, ...]) -> int:
        n_pos = self.N
        return sum(1 for k in range(n_pos) if p[k] >= n_pos)

    def right_descents(self, p: tuple[int, ...]) -> set[int]:
        """{i : l(w s_i) < l(w)} = simple roots sent negative by w."""
        return {i for i in range(self.n_gens) if p[i] >= self.N}

    def perm_of_word(self, word) -> tuple[int, ...]:
        p = self.identity_perm
        for i in word:
            p = self.compose(p, self.gen_perms[i])
        return p

    def matrix_of_word(self, word):
        m = identity(self.dim)
        for i in word:
            m = mat_mul(m, self.gen_matrices[i])
        return m

    def word_from_perm(self, p: tuple[int, ...]) -> tuple[int, ...]:
        """A reduced word for the element with permutation p, extracted by
        descent walking (always succeeds for genuine group elements)."""
        word = []
        cur = p
        while True:
            descent = next((i for i in range(self.n_gens) if cur[i] >= self.N), None)
            if descent is None:
                break
            cur = self.compose(cur, self.gen_perms[descent])
            word.append(descent)
        if cur != self.identity_perm:
            raise InvariantError("descent walk did not terminate at the identity")
        return tuple(reversed(word))

    def reflection_matrix_of_root(self, root_idx: int):
        """s_beta for the root with index root_idx (positive list)."""
        beta = self.pos_roots[root_idx]
        func = self.coroots[root_idx]
        return [[(1 if r == c else 0) - beta[r] * func[c] for c in range(self.dim)]
                for r in range(self.dim)]

    def reflection_perm_of_root(self, root_idx: int) -> tuple[int, ...]:
        """Signed-root permutation of s_beta for a positive root index."""
        return self._perm_of_matrix(self.reflection_matrix_of_root(root_idx))

    def root_inner(self, i: int, j: int) -> Fraction:
        vi = self.pos_roots[i]
        vj = self.pos_roots[j]
        return sum(vi[r] * self.gram[r][c] * vj[c]
                   for r in range(self.dim) for c in range(self.dim))

    def longest_element_perm(self) -> tuple[int, ...]:
        """Permutation of w_0, found by greedy descent ascent from the
        identity (no enumeration)."""
        cur = self.identity_perm
        while True:
            i = next((i for i in range(self.n_gens) if cur[i] < self.N), None)
            if i is None:
                return cur
            cur = self.compose(cur, self.gen_perms[i])


def _fix_right_descents(ctx: ReflectionContext):
    # right_descents above must look up where w sends the i-th SIMPLE root;
    # the simple roots are the first n_gens entries of pos_roots by
    # construction, asserted here once per context.
    for i in range(ctx.n_gens):
        check(ctx._index[ctx.pos_roots[i]] == i, "simple roots are not listed first")


def context_from_datum(datum: RootDatum) -> ReflectionContext:
    roots_w = [datum.root_weight_coords(r) for r in datum.pos_roots]
    order = [i for i, _ in sorted(enumerate(datum.pos_roots),
                                  key=lambda t: (sum(t[1]), tuple(-x for x in t[1])))]
    roots_sorted = [roots_w[i] for i in order]
    coroots_sorted = [datum.pos_coroots[i] for i in order]
    ctx = ReflectionContext(
        label=datum.label,
        gen_matrices=[datum.reflection_matrix(i) for i in range(datum.rank)],
        pos_root_vectors=roots_sorted,
        coroot_functionals=coroots_sorted,
        phi_matrix=datum.phi_matrix(),
        gram=datum.weight_gram(),
        predicted_order=predicted_weyl_order(datum.label),
    )
    _fix_right_descents(ctx)
    return ctx


def gl_context(n: int) -> ReflectionContext:
    """S_n acting on Z^n with roots e_i - e_j (GL mode)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    simples = []
    others = []
    for i in range(n):
        for j in range(i + 1, n):
            v = tuple(1 if k == i else (-1 if k == j else 0) for k in range(n))
            (simples if j == i + 1 else others).append(v)
    simples.sort(key=lambda v: v.index(1))
    others.sort(key=lambda v: (v.index(1), v))
    roots = simples + others
    gens = []
    for k in range(n - 1):
        m = identity(n)
        m[k][k] = m[k + 1][k + 1] = 0
        m[k][k + 1] = m[k + 1][k] = 1
        gens.append(m)
    gram = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    ctx = ReflectionContext(
        label=f"GL{n}",
        gen_matrices=gens,
        pos_root_vectors=roots,
        coroot_functionals=roots,
        phi_matrix=identity(n),
        gram=gram,
        predicted_order=math.factorial(n),
    )
    _fix_right_descents(ctx)
    return ctx


def predicted_weyl_order(label: str) -> int | None:
    import re
    m = re.match(r"^([23]?)([A-G])(\d+)$", label)
    if not m:
        return None
    family, n = m.group(2), int(m.group(3))
    if family == "A":
        return math.factorial(n + 1)
    if family in ("B", "C"):
        return 2**n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    if family == "G":
        return 12
    if family == "F":
        return 1152
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[n]
    return None


# ---------------------------------------------------------------------------
# Enumerated groups


@dataclass(frozen=True)
class WeylElement:
    """One group element: permutation of signed roots, weight-lattice matrix,
    a lexicographically least reduced word, and its length."""

    index: int
    word: tuple[int, ...]
    length: int
    perm: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "word": [i + 1 for i in self.word],
            "length": self.length,
            "matrix": [list(r) for r in self.matrix],
        }


@dataclass(frozen=True)
class TwistedClass:
    """An F-conjugacy class: the orbit of w under w -> v^{-1} w phi(v)."""

    representatives: tuple[WeylElement, ...]
    twisted: bool

    @property
    def representative(self) -> WeylElement:
        return self.representatives[0]

    @property
    def size(self) -> int:
        return len(self.representatives)

    def to_json(self) -> dict:
        rep = self.representative
        return {
            "representative_word": [i + 1 for i in rep.word],
            "representative_length": rep.length,
            "size": self.size,
            "twisted": self.twisted,
        }


@dataclass(frozen=True)
class RegularReport:
    """Witness data for a d-regular twisted element."""

    d: int
    zeta_order: int
    witness_w: WeylElement
    eigenspace_dim: int
    centralizer_order: int
    centralizer_is_reflection_group: bool

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "zeta_order": self.zeta_order,
            "witness_word": [i + 1 for i in self.witness_w.word],
            "witness_length": self.witness_w.length,
            "eigenspace_dim": self.eigenspace_dim,
            "centralizer_order": self.centralizer_order,
            "centralizer_is_reflection_group": self.centralizer_is_reflection_group,
        }


class WeylGroup:
    """Fully enumerated reflection group over a :class:`ReflectionContext`.

    BFS from the identity appending generators in ascending index yields, for
    every element, the lexicographically least reduced word; elements are
    listed in (length, word) order, which downstream code uses as the
    canonical tie-break."""

    def __init__(self, ctx: ReflectionContext, guard: int = WEYL_GUARD):
        if ctx.predicted_order is not None and ctx.predicted_order > guard:
            raise GuardExceeded(
                f"Weyl group of {ctx.label} has order {ctx.predicted_order} > guard {guard}")
        self.ctx = ctx
        elements: list[WeylElement] = []
        index_of: dict[tuple[int, ...], int] = {}

        def add(perm, word, matrix):
            el = WeylElement(index=len(elements), word=word,
                             length=ctx.length(perm), perm=perm,
                             matrix=tuple(tuple(r) for r in matrix))
            check(el.length == len(word), "stored word is not reduced")
            elements.append(el)
            index_of[perm] = el.index
            return el

        add(ctx.identity_perm, (), identity(ctx.dim))
        frontier = [elements[0]]
        while frontier:
            next_frontier = []
            for el in frontier:
                for i in range(ctx.n_gens):
                    if el.perm[i] < ctx.N:  # l(w s_i) = l(w) + 1
                        perm = ctx.compose(el.perm, ctx.gen_perms[i])
                        if perm not in index_of:
                            m = mat_mul(el.matrix, ctx.gen_matrices[i])
                            next_frontier.append(add(perm, el.word + (i,), m))
            frontier = next_frontier
            if len(elements) > guard:
                raise GuardExceeded(f"enumeration of {ctx.label} exceeded guard {guard}")
        self.elements = elements
        self.index_of = index_of
        if ctx.predicted_order is not None:
            check(len(elements) == ctx.predicted_order,
                  f"enumerated {len(elements)} elements, classical order {ctx.predicted_order}")
        self._cache: dict = {}

    # basic group ops ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def multiply(self, a: int, b: int) -> int:
        return self.index_of[self.ctx.compose(self.elements[a].perm, self.elements[b].perm)]

    def inverse(self, a: int) -> int:
        return self.index_of[self.ctx.invert(self.elements[a].perm)]

    def phi_image(self, a: int) -> int:
        ctx = self.ctx
        p = ctx.compose(ctx.phi_perm, ctx.compose(self.elements[a].perm,
                                                  ctx.invert(ctx.phi_perm)))
        return self.index_of[p]

    @property
    def longest(self) -> WeylElement:
        key = "longest"
        if key not in self._cache:
            candidates = [el for el in self.elements if el.length == self.ctx.N]
            check(len(candidates) == 1, "longest element is not unique")
            self._cache[key] = candidates[0]
        return self._cache[key]

    # Poincaré polynomial and degrees -------------------------------------------

    def poincare_polynomial(self) -> list[int]:
        out = [0] * (self.ctx.N + 1)
        for el in self.elements:
            out[el.length] += 1
        return out

    def degrees(self) -> tuple[int, ...]:
        """Reflection degrees, recovered by factoring P(x)·(x-1)^n into
        cyclotomic polynomials and peeling off x^{d_i} - 1 factors."""
        key = "degrees"
        if key in self._cache:
            return self._cache[key]
        from .cyclotomic import poly_mul
        n = self.ctx.dim  # = rank for root data; includes the fixed line in GL mode
        q = self.poincare_polynomial()
        for _ in range(n):
            q = poly_mul(q, [-1, 1])
        exps = factor_into_cyclotomics(q, range(1, self.ctx.N + n + 1))
        degrees = []
        for _ in range(n):
            d = max(e for e, c in exps.items() if c > 0)
            degrees.append(d)
            for e in list(exps):
                if d % e == 0:
                    exps[e] -= 1
        check(all(c == 0 for c in exps.values()), "degree recovery left factors over")
        degrees.sort()
        prod = 1
        for d in degrees:
            prod *= d
        check(prod == len(self), "product of degrees != |W|")
        check(sum(d - 1 for d in degrees) == self.ctx.N, "sum of (d_i - 1) != N")
        self._cache[key] = tuple(degrees)
        return self._cache[key]

    # F-conjugacy ---------------------------------------------------------------

    def f_conjugacy_classes(self) -> list[TwistedClass]:
        key = "fclasses"
        if key in self._cache:
            return self._cache[key]
        twisted = self.ctx.phi_perm != self.ctx.identity_perm
        gen_indices = [self.index_of[p] for p in self.ctx.gen_perms]
        phi_of_gen = [self.phi_image(g) for g in gen_indices]
        seen = [False] * len(self)
        classes = []
        for start in range(len(self)):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            pos = 0
            while pos < len(orbit):
                w = orbit[pos]
                pos += 1
                for g, pg in zip(gen_indices, phi_of_gen):
                    # s_g^{-1} w phi(s_g)
                    image = self.multiply(self.multiply(g, w), pg)
                    if not seen[image]:
                        seen[image] = True
                        orbit.append(image)
            members = tuple(sorted((self.elements[i] for i in orbit),
                                   key=lambda el: (el.length, el.word)))
            classes.append(TwistedClass(representatives=members, twisted=twisted))
        check(sum(c.size for c in classes) == len(self), "classes do not partition W")
        classes.sort(key=lambda c: (c.representative.length, c.representative.word))
        self._cache[key] = classes
        return classes

    def centralizer_of_twisted(self, w: int) -> list[int]:
        """C_W(w phi) = {v : v (w phi) = (w phi) v} by direct scan."""
        ctx = self.ctx
        sigma = ctx.compose(self.elements[w].perm, ctx.phi_perm)
        out = []
        for el in self.elements:
            if ctx.compose(el.perm, sigma) == ctx.compose(sigma, el.perm):
                out.append(el.index)
        return out

    # eigenspace machinery -------------------------------------------------------

    def _twisted_matrix(self, w: int):
        return mat_mul(self.elements[w].matrix, self.ctx.phi_mat)

    def phi_d_dimensions(self, d: int) -> list[int]:
        """dim over Q(zeta_d) of the zeta_d-eigenspace of w·phi, for every w
        (computed as dim_Q ker Phi_d(w phi) / phi(d))."""
        key = ("dims", d)
        if key in self._cache:
            return self._cache[key]
        from .cyclotomic import cyclotomic
        phi_poly = list(cyclotomic(d))
        deg = euler_phi(d)
        dims = []
        n = self.ctx.dim
        for w in range(len(self)):
            m = self._twisted_matrix(w)
            acc = [[phi_poly[-1] if i == j else 0 for j in range(n)] for i in range(n)]
            for c in reversed(phi_poly[:-1]):
                acc = mat_mul(acc, m)
                for i in range(n):
                    acc[i][i] += c
            dim_q = n - rank(acc)
            check(dim_q % deg == 0, "Q-kernel dimension not divisible by phi(d)")
            dims.append(dim_q // deg)
        self._cache[key] = dims
        return dims

    def max_phi_d_eigenspace(self, d: int) -> tuple[WeylElement, int]:
        """Witness maximizing the zeta_d-eigenspace dimension; ties broken by
        least length then lexicographically least reduced word (= BFS order)."""
        dims = self.phi_d_dimensions(d)
        best = max(dims)
        witness = dims.index(best)  # elements are listed in (length, word) order
        return self.elements[witness], best

    def eigenspace_basis(self, w: int, d: int):
        """Basis over K = Q(zeta_d) of ker(w phi - zeta_d) in X ⊗ K."""
        field = CycloField(d)
        zeta = field.zeta()
        m = self._twisted_matrix(w)
        km = [[field.from_rational(x) for x in row] for row in m]
        for i in range(self.ctx.dim):
            km[i][i] = field.sub(km[i][i], zeta)
        return field, cyclo_kernel(field, km)

    def is_regular_eigenspace(self, field: CycloField, basis) -> bool:
        """True when the eigenspace is contained in no root hyperplane."""
        if not basis:
            return False
        for coroot in self.ctx.coroots:
            if all(field.is_zero(_pair_k(field, coroot, v)) for v in basis):
                return False
        return True

    def regular_elements(self, d: int) -> RegularReport | None:
        """Scan W for d-regular twisted elements; return the canonical witness
        (max eigenspace dimension, first in BFS order) or None."""
        dims = self.phi_d_dimensions(d)
        best = max(dims)
        if best == 0:
            return None
        for w in range(len(self)):
            if dims[w] != best:
                continue
            field, basis = self.eigenspace_basis(w, d)
            check(len(basis) == dims[w], "cyclotomic kernel dim mismatch")
            if not self.is_regular_eigenspace(field, basis):
                continue
            centralizer = self.centralizer_of_twisted(w)
            is_refl = self._centralizer_reflection_check(w, d, field, basis, centralizer)
            return RegularReport(
                d=d, zeta_order=d, witness_w=self.elements[w],
                eigenspace_dim=dims[w], centralizer_order=len(centralizer),
                centralizer_is_reflection_group=is_refl,
            )
        return None

    def _centralizer_reflection_check(self, w, d, field, basis, centralizer) -> bool:
        """Restrict C_W(w phi) to the eigenspace and test whether the image is
        generated by its pseudo-reflections (rank(R - 1) = 1)."""
        k = len(basis)
        images = set()
        for v in centralizer:
            r = _restrict_to_span(field, self.elements[v].matrix, basis)
            images.add(r)
        reflections = [r for r in images if _rank_minus_identity(field, r) == 1]
        generated = {_k_identity(field, k)}
        frontier = list(generated)
        while frontier:
            new = []
            for g in frontier:
                for s in reflections:
                    prod = _k_mat_mul(field, g, s)
                    if prod not in generated:
                        generated.add(prod)
                        new.append(prod)
            frontier = new
        return generated == images


def _pair_k(field: CycloField, coroot, vec):
    total = field.zero
    for c, x in zip(coroot, vec):
        if c:
            total = field.add(total, field.scale(c, x))
    return total


def _restrict_to_span(field: CycloField, int_matrix, basis):
    """Matrix of an integer matrix's action on span(basis), coordinates in
    that basis; raises if the span is not preserved."""
    n = len(basis[0])
    k = len(basis)
    cols = []
    for b in basis:
        image = []
        for i in range(n):
            acc = field.zero
            for j in range(n):
                if int_matrix[i][j]:
                    acc = field.add(acc, field.scale(int_matrix[i][j], b[j]))
            image.append(acc)
        cols.append(image)
    # solve [basis columns] * x = image for each image column
    aug = [[basis[j][i] for j in range(k)] + [cols[j][i] for j in range(k)]
           for i in range(n)]
    red, pivots = cyclo_rref(field, aug)
    check(pivots[:k] == list(range(k)) and all(p < k for p in pivots),
          "centralizer does not preserve the eigenspace")
    sol = [[red[i][k + j] for j in range(k)] for i in range(k)]
    return tuple(tuple(row) for row in sol)


def _k_identity(field: CycloField, k: int):
    return tuple(tuple(field.one if i == j else field.zero for j in range(k))
                 for i in range(k))


def _k_mat_mul(field: CycloField, a, b):
    k = len(a)
    return tuple(
        tuple(
            _sum_k(field, (field.mul(a[i][t], b[t][j]) for t in range(k)))
            for j in range(k))
        for i in range(k))


def _sum_k(field: CycloField, items):
    total = field.zero
    for x in items:
        total = field.add(total, x)
    return total


def _rank_minus_identity(field: CycloField, r) -> int:
    k = len(r)
    m = [[field.sub(r[i][j], field.one) if i == j else r[i][j] for j in range(k)]
         for i in range(k)]
    _, pivots = cyclo_rref(field, m)
    return len(pivots)


# ---------------------------------------------------------------------------
# public helpers


@lru_cache(maxsize=32)
def _cached_group(label: str, guard: int) -> WeylGroup:
    from .root_datum import cached_datum
    return WeylGroup(context_from_datum(cached_datum(label)), guard=guard)


def generate_weyl(datum: RootDatum, guard: int = WEYL_GUARD) -> WeylGroup:
    """Enumerate the Weyl group of a root datum (guarded)."""
    if datum.label and predicted_weyl_order(datum.label) is not None:
        return _cached_group(datum.label, guard)
    return WeylGroup(context_from_datum(datum), guard=guard)


@lru_cache(maxsize=16)
def gl_weyl(n: int, guard: int = WEYL_GUARD) -> WeylGroup:
    """S_n with its permutation reflection action on Z^n."""
    return WeylGroup(gl_context(n), guard=guard)
