"""Simply connected root data with a diagram automorphism.

Conventions, fixed once for the whole package:

* The character lattice X is Z^n in the fundamental-weight basis, so a weight
  is a plain integer tuple and ``<omega_i, alpha_j_vee> = delta_ij``.
* ``cartan[i][j] = <alpha_j, alpha_i_vee>`` (row i pairs against the i-th
  simple coroot).  A root written in simple-root coordinates ``c`` has
  fundamental-weight coordinates ``cartan @ c``.
* Positive roots are stored in simple-root coordinates together with their
  coroots in simple-coroot coordinates; both are produced by one reflection
  closure from the simple pairs.
* The diagram automorphism ``phi`` is a permutation of {0..n-1} preserving the
  Cartan matrix; it acts on weights by permuting fundamental-weight
  coordinates.
* The W-invariant inner product is normalized so short roots have squared
  length 2: ``(alpha_i, alpha_j) = d_i * cartan[i][j]`` with integer
  symmetrizer ``d_i >= 1``.

Simple groups of types A..G with rank at most 8 are supported, split or
twisted (2A, 2D, 3D4, 2E6).  The very twisted Suzuki/Ree families need a
square-root twist that is not a Frobenius endomorphism over F_q and are
rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InvariantError, UnsupportedTypeError, check
from .linalg import mat_inverse, mat_vec

MAX_RANK = 8

_N_TABLE = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "G": lambda n: 6,
    "F": lambda n: 24,
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
}

_RANK_RANGE = {
    "A": (1, MAX_RANK),
    "B": (2, MAX_RANK),
    "C": (2, MAX_RANK),
    "D": (3, MAX_RANK),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

_TWISTS = {("A", 2), ("D", 2), ("D", 3), ("E", 2)}


def _chain_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def _cartan_matrix(family: str, n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, cij=-1, cji=-1):
        # a[i][j] = <alpha_j, alpha_i_vee>
        a[i][j] = cij
        a[j][i] = cji

    if family == "A":
        for i, j in _chain_edges(n):
            bond(i, j)
    elif family == "B":
        # alpha_{n-1} short: <alpha_{n-2}, alpha_{n-1}_vee> = -2
        for i, j in _chain_edges(n - 1):
            bond(i, j)
        bond(n - 2, n - 1, -1, -2)
    elif family == "C":
        # alpha_{n-1} long: <alpha_{n-1}, alpha_{n-2}_vee> = -2
        for i, j in _chain_edges(n - 1):
            bond(i, j)
        bond(n - 2, n - 1, -2, -1)
    elif family == "D":
        for i, j in _chain_edges(n - 1):
            bond(i, j)
        bond(n - 3, n - 1)
    elif family == "G":
        # alpha_0 short, alpha_1 long: <alpha_1, alpha_0_vee> = -3
        bond(0, 1, -3, -1)
    elif family == "F":
        # 0-1 long chain, 2-3 short chain, double bond 1 => 2
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif family == "E":
        # Bourbaki: chain 1-3-4-5-6(-7)(-8) with node 2 hanging off node 4
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if n >= 7:
            edges.append((5, 6))
        if n == 8:
            edges.append((6, 7))
        for i, j in edges:
            bond(i, j)
    else:
        raise UnsupportedTypeError(f"unsupported type family {family!r}")
    return a


def _diagram_automorphism(family: str, n: int, order: int) -> tuple[int, ...]:
    if order == 1:
        return tuple(range(n))
    if family == "A" and order == 2:
        return tuple(n - 1 - i for i in range(n))
    if family == "D" and order == 2:
        p = list(range(n))
        p[n - 2], p[n - 1] = n - 1, n - 2
        return tuple(p)
    if family == "D" and order == 3 and n == 4:
        # rotate the three outer nodes 0 -> 2 -> 3 -> 0 around the center 1
        return (2, 1, 3, 0)
    if family == "E" and order == 2 and n == 6:
        return (5, 1, 4, 3, 2, 0)
    raise UnsupportedTypeError(f"no order-{order} diagram automorphism for {family}{n}")


def _perm_order(p: tuple[int, ...]) -> int:
    order = 1
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        order = order * length // _gcd(order, length)
    return order


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _symmetrizer(cartan: list[list[int]]) -> tuple[int, ...]:
    """Positive integers d_i with d_i * a[i][j] = d_j * a[j][i], min = 1,
    found by propagating ratios through the diagram (per connected part)."""
    n = len(cartan)
    d = [Fraction(0)] * n
    for start in range(n):
        if d[start]:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and cartan[i][j]:
                    val = d[i] * cartan[i][j] / cartan[j][i]
                    if d[j] == 0:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise InvariantError("Cartan matrix is not symmetrizable")
    lcm_den = 1
    for x in d:
        lcm_den = lcm_den * x.denominator // _gcd(lcm_den, x.denominator)
    ints = [x * lcm_den for x in d]
    g = 0
    for x in ints:
        g = _gcd(g, x.numerator)
    out = tuple(int(x / g) for x in ints)
    for i in range(n):
        for j in range(n):
            if out[i] * cartan[i][j] != out[j] * cartan[j][i]:
                raise InvariantError("symmetrizer failed to symmetrize")
    return out


@dataclass(frozen=True)
class RootDatum:
    """Immutable simply connected root datum with twist."""

    label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    phi: tuple[int, ...]
    pos_roots: tuple[tuple[int, ...], ...] = field(repr=False)
    pos_coroots: tuple[tuple[int, ...], ...] = field(repr=False)
    symmetrizer: tuple[int, ...] = field(repr=False)

    # -- derived basics ------------------------------------------------------

    @property
    def N(self) -> int:
        return len(self.pos_roots)

    @property
    def delta(self) -> int:
        return _perm_order(self.phi)

    @property
    def twisted(self) -> bool:
        return self.delta > 1

    @property
    def rho(self) -> tuple[int, ...]:
        return tuple([1] * self.rank)

    def pairing(self, lam, coroot) -> int:
        """<lam, coroot>: lam in fundamental-weight coordinates, coroot either
        a simple index or a vector in simple-coroot coordinates."""
        if isinstance(coroot, int):
            if not 0 <= coroot < self.rank:
                raise ValueError(f"coroot index {coroot} out of range")
            return lam[coroot]
        if len(lam) != self.rank or len(coroot) != self.rank:
            raise ValueError("dimension mismatch")
        return sum(l * c for l, c in zip(lam, coroot))

    def root_weight_coords(self, root: tuple[int, ...]) -> tuple[int, ...]:
        """Fundamental-weight coordinates of a root given in simple-root
        coordinates (the Cartan matrix applied columnwise)."""
        return tuple(sum(self.cartan[i][j] * root[j] for j in range(self.rank))
                     for i in range(self.rank))

    def simple_reflection(self, i: int, lam: tuple[int, ...]) -> tuple[int, ...]:
        """s_i acting on a weight: lam - <lam, alpha_i_vee> alpha_i."""
        li = lam[i]
        return tuple(lam[j] - li * self.cartan[j][i] for j in range(self.rank))

    def reflection_matrix(self, i: int) -> list[list[int]]:
        """Matrix of s_i on X (columns = images of fundamental weights)."""
        n = self.rank
        m = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for r in range(n):
            m[r][i] -= self.cartan[r][i]
        return m

    def phi_matrix(self) -> list[list[int]]:
        """Matrix of phi on X: omega_i -> omega_{phi(i)}."""
        n = self.rank
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[self.phi[i]][i] = 1
        return m

    def phi_on_weight(self, lam: tuple[int, ...]) -> tuple[int, ...]:
        out = [0] * self.rank
        for i in range(self.rank):
            out[self.phi[i]] = lam[i]
        return tuple(out)

    def root_inner(self, r1: tuple[int, ...], r2: tuple[int, ...]) -> int:
        """(r1, r2) in the W-invariant form, roots in simple-root coords;
        (alpha_i, alpha_j) = d_i * cartan[i][j], short roots have norm 2."""
        total = 0
        for i, a in enumerate(r1):
            if a:
                for j, b in enumerate(r2):
                    if b:
                        total += a * b * self.symmetrizer[i] * self.cartan[i][j]
        return total

    def weight_gram(self) -> list[list[Fraction]]:
        """Gram matrix of the invariant form in fundamental-weight
        coordinates (rational)."""
        ainv = mat_inverse([list(r) for r in self.cartan])
        m = [[Fraction(self.symmetrizer[i] * self.cartan[i][j]) for j in range(self.rank)]
             for i in range(self.rank)]
        # weight lambda has root coords A^{-1} lambda; form = (A^-1)^T M (A^-1)
        at = [list(col) for col in zip(*ainv)]
        from .linalg import mat_mul
        return mat_mul(mat_mul(at, m), ainv)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "type": self.label,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "phi": [i + 1 for i in self.phi],
            "N": self.N,
        }

    def untwisted(self) -> "RootDatum":
        """The same datum with phi = id."""
        if not self.twisted:
            return self
        return _finish_datum(self.label.lstrip("23"), self.cartan, tuple(range(self.rank)))


def _reflection_closure(cartan) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """All positive roots (simple-root coords) and coroots (simple-coroot
    coords), via closure under simple reflections; sorted by (height, coords)."""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen: dict[tuple[int, ...], tuple[int, ...]] = {s: s for s in simple}
    frontier = list(simple)
    while frontier:
        new_frontier = []
        for root in frontier:
            coroot = seen[root]
            for i in range(n):
                # s_i on root coords uses row i of the Cartan matrix;
                # on coroot coords it uses column i.
                pr = sum(cartan[i][j] * root[j] for j in range(n))
                new_root = tuple(root[j] - (pr if j == i else 0) for j in range(n))
                pc = sum(cartan[j][i] * coroot[j] for j in range(n))
                new_coroot = tuple(coroot[j] - (pc if j == i else 0) for j in range(n))
                if all(x >= 0 for x in new_root):
                    if new_root not in seen:
                        seen[new_root] = new_coroot
                        new_frontier.append(new_root)
                    elif seen[new_root] != new_coroot:
                        raise InvariantError("inconsistent coroot in closure")
                else:
                    if not all(x <= 0 for x in new_root):
                        raise InvariantError("reflection left +-Phi")
        frontier = new_frontier
    roots = sorted(seen, key=lambda r: (sum(r), r))
    return roots, [seen[r] for r in roots]


_LABEL_RE = re.compile(r"^([23]?)([A-G])(\d+)$")


def _finish_datum(label: str, cartan, phi: tuple[int, ...]) -> RootDatum:
    roots, coroots = _reflection_closure(cartan)
    datum = RootDatum(
        label=label,
        rank=len(cartan),
        cartan=tuple(tuple(r) for r in cartan),
        phi=phi,
        pos_roots=tuple(roots),
        pos_coroots=tuple(coroots),
        symmetrizer=_symmetrizer([list(r) for r in cartan]),
    )
    _validate(datum)
    return datum


def build_root_datum(type_label: str) -> RootDatum:
    """Construct the simply connected root datum named by ``type_label``
    ("A3", "2A3", "3D4", "G2", ...)."""
    if type_label in ("2B2", "2G2", "2F4"):
        raise UnsupportedTypeError(f"{type_label}: F not Frobenius: out of scope")
    m = _LABEL_RE.match(type_label)
    if not m:
        raise UnsupportedTypeError(f"unsupported type {type_label!r}")
    twist = int(m.group(1) or "1")
    family = m.group(2)
    n = int(m.group(3))
    lo, hi = _RANK_RANGE.get(family, (0, -1))
    if not lo <= n <= hi:
        raise UnsupportedTypeError(f"unsupported type {type_label!r} (rank out of range)")
    if twist > 1:
        if (family, twist) not in _TWISTS or (twist == 3 and (family, n) != ("D", 4)):
            raise UnsupportedTypeError(f"unsupported type {type_label!r}")
        if family == "A" and n < 2:
            raise UnsupportedTypeError("2A_n requires n >= 2")
        if family == "E" and n != 6:
            raise UnsupportedTypeError("twisted E only exists for E6")
    cartan = _cartan_matrix(family, n)
    phi = _diagram_automorphism(family, n, twist)
    return _finish_datum(type_label, cartan, phi)


def from_cartan(label: str, cartan, phi=None) -> RootDatum:
    """Datum from an explicit Cartan matrix (e.g. reducible A1 x A1) with an
    optional automorphism; validated like the built-in types."""
    n = len(cartan)
    phi = tuple(range(n)) if phi is None else tuple(phi)
    return _finish_datum(label, cartan, phi)


def _validate(datum: RootDatum) -> None:
    n = datum.rank
    a = datum.cartan
    for i in range(n):
        check(a[i][i] == 2, f"cartan[{i}][{i}] != 2")
        for j in range(n):
            if i != j:
                check(a[i][j] <= 0, "positive off-diagonal Cartan entry")
                check((a[i][j] == 0) == (a[j][i] == 0), "asymmetric Cartan zero pattern")
    p = datum.phi
    check(sorted(p) == list(range(n)), "phi is not a permutation")
    for i in range(n):
        for j in range(n):
            check(a[p[i]][p[j]] == a[i][j], "phi does not preserve the Cartan matrix")
    m = _LABEL_RE.match(datum.label)
    if m and m.group(2) in _N_TABLE and m.group(1):
        check(_perm_order(p) == int(m.group(1)), "twist order mismatch")
    if m and m.group(2) in _N_TABLE:
        expected_n = _N_TABLE[m.group(2)](n)
        check(datum.N == expected_n, f"positive-root count {datum.N} != {expected_n}")
    # pairing sanity: <rho, alpha_i_vee> = 1; coroot of a simple root is the
    # simple coroot; <root, its coroot> = 2
    for i in range(n):
        check(datum.pairing(datum.rho, i) == 1, "rho pairing != 1")
    for root, coroot in zip(datum.pos_roots, datum.pos_coroots):
        w = datum.root_weight_coords(root)
        check(datum.pairing(w, coroot) == 2, "<alpha, alpha_vee> != 2")
    # phi permutes the positive roots (as root-coordinate vectors)
    root_set = set(datum.pos_roots)
    for root in datum.pos_roots:
        image = tuple(_apply_perm_to_root(p, root))
        check(image in root_set, "phi does not permute positive roots")


def _apply_perm_to_root(p: tuple[int, ...], root: tuple[int, ...]) -> list[int]:
    out = [0] * len(root)
    for i, c in enumerate(root):
        out[p[i]] = c
    return out


@lru_cache(maxsize=None)
def cached_datum(type_label: str) -> RootDatum:
    return build_root_datum(type_label)


ALL_LABELS: tuple[str, ...] = tuple(
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 9)]
    + [f"C{n}" for n in range(2, 9)]
    + [f"D{n}" for n in range(3, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
    + [f"2A{n}" for n in range(2, 9)]
    + [f"2D{n}" for n in range(3, 9)]
    + ["3D4", "2E6"]
)


def labels_of_rank(max_rank: int, include_twisted: bool = True) -> list[str]:
    out = []
    for label in ALL_LABELS:
        m = _LABEL_RE.match(label)
        if int(m.group(3)) <= max_rank and (include_twisted or not m.group(1)):
            out.append(label)
    return out
