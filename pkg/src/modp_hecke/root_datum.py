"""Finite root systems, coweight lattices and finite Weyl groups.

All arithmetic is exact.  Roots are stored as integer vectors in the basis
of simple roots; coweights as integer vectors in "ambient" coordinates,
which are fundamental-coweight coordinates on the semisimple part followed
by central-torus coordinates.  In ambient coordinates the pairing of the
i-th simple root with a coweight x is simply x[i], so everything downstream
reduces to small integer dot products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
import json

Root = tuple[int, ...]      # coordinates in the simple-root basis
Coweight = tuple[int, ...]  # ambient coordinates

VALID_RANKS = {
    "A": range(1, 100),
    "B": range(2, 100),
    "C": range(2, 100),
    "D": range(3, 100),
    "E": range(6, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}


class RootDatumError(ValueError):
    pass


def cartan_matrix(letter: str, rank: int) -> list[list[int]]:
    """Cartan matrix a[i][j] = <alpha_i, alpha_j^vee> in Bourbaki numbering."""
    if letter not in VALID_RANKS or rank not in VALID_RANKS[letter]:
        raise RootDatumError(f"invalid Dynkin type {letter}{rank}")
    n = rank
    a = [[2 * (i == j) for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if letter in ("A", "B", "C", "G", "F"):
        for i in range(n - 1):
            bond(i, i + 1)
        if letter == "B":
            bond(n - 2, n - 1, -2, -1)  # alpha_n short
        if letter == "C":
            bond(n - 2, n - 1, -1, -2)  # alpha_n long
        if letter == "G":
            bond(0, 1, -1, -3)          # alpha_1 short, alpha_2 long
        if letter == "F":
            bond(1, 2, -2, -1)          # alpha_1, alpha_2 long
    elif letter == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif letter == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]  # Bourbaki: 2 hangs off 4
        for i, j in zip(chain, chain[1:]):
            bond(i, j)
        bond(1, 3)
    return a


@dataclass(frozen=True)
class CartanDatum:
    """Concrete presentation of a split reductive group: Dynkin components
    plus a coweight-lattice choice ('sc', 'ad', or an explicit basis)."""

    components: tuple[tuple[str, int], ...]
    lattice: object  # 'sc' | 'ad' | tuple of integer basis rows

    def __post_init__(self):
        for letter, rank in self.components:
            if letter not in VALID_RANKS or rank not in VALID_RANKS[letter]:
                raise RootDatumError(f"invalid Dynkin type {letter}{rank}")
        if self.lattice not in ("sc", "ad"):
            rows = self.lattice
            if not rows or any(len(r) != len(rows[0]) for r in rows):
                raise RootDatumError("lattice basis must be a rectangular matrix")
            if any(not isinstance(e, int) for r in rows for e in r):
                raise RootDatumError("lattice basis must have integer entries")


class FiniteWeylElement:
    """Element of the finite Weyl group, stored as its integer matrix acting
    on ambient coweight coordinates (column-vector convention)."""

    __slots__ = ("datum", "matrix", "_hash", "_inv")

    def __init__(self, datum: "RootDatum", matrix: tuple[tuple[int, ...], ...]):
        self.datum = datum
        self.matrix = matrix
        self._hash = hash(matrix)
        self._inv = None

    def __eq__(self, other):
        return (isinstance(other, FiniteWeylElement)
                and self.datum is other.datum and self.matrix == other.matrix)

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "FiniteWeylElement") -> "FiniteWeylElement":
        if self.datum is not other.datum:
            raise RootDatumError("datum mismatch")
        return self.datum._intern_weyl(_mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "FiniteWeylElement":
        if self._inv is None:
            self._inv = self.datum._intern_weyl(_mat_inv(self.matrix))
        return self._inv

    def is_identity(self) -> bool:
        return self is self.datum.weyl_identity

    def act(self, x: Coweight) -> Coweight:
        m = self.matrix
        return tuple(sum(m[i][j] * x[j] for j in range(len(x))) for i in range(len(x)))

    def act_root(self, root: Root) -> Root:
        """Dual action on roots (simple-root coordinates)."""
        n = self.datum.n
        minv = self.inverse().matrix
        return tuple(sum(root[i] * minv[i][j] for i in range(n)) for j in range(n))

    def __repr__(self):
        return f"FiniteWeylElement{self.datum.finite_word(self)}"


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _det(a) -> Fraction:
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        m[col] = [e * inv for e in m[col]]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col]
                m[r] = [e - f * g for e, g in zip(m[r], m[col])]
    return det


def _mat_inv(a):
    """Exact inverse of an integer matrix; entries must come out integral."""
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(i == j) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise RootDatumError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [e * inv for e in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [e - f * g for e, g in zip(aug[r], aug[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = aug[i][n + j]
            if v.denominator != 1:
                raise RootDatumError("matrix is not invertible over the integers")
            row.append(int(v))
        out.append(tuple(row))
    return tuple(out)


def _solve_rational(basis_rows, target):
    """Solve sum_j c_j * basis_rows[j] = target over the rationals."""
    n = len(basis_rows)
    dim = len(target)
    aug = [[Fraction(basis_rows[j][i]) for j in range(n)] + [Fraction(target[i])]
           for i in range(dim)]
    c = [Fraction(0)] * n
    row = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(row, dim) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = Fraction(1) / aug[row][col]
        aug[row] = [e * inv for e in aug[row]]
        for r in range(dim):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [e - f * g for e, g in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, dim):
        if aug[r][n] != 0:
            return None
    for r, col in enumerate(pivots):
        c[col] = aug[r][n]
    return c


def _diagonalize_lattice(rows, dim):
    """Diagonalize the integer matrix whose rows span a sublattice of Z^dim.

    Returns (diag, col_transform) such that after the change of coordinates
    y = x @ col_transform, the sublattice becomes sum_i diag[i] * Z e_i.
    Row operations are free; column operations are accumulated.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    c = [[int(i == j) for j in range(dim)] for i in range(dim)]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in c:
            r[i], r[j] = r[j], r[i]

    def add_col(src, dst, f):
        for r in m:
            r[dst] += f * r[src]
        for r in c:
            r[dst] += f * r[src]

    def neg_col(i):
        for r in m:
            r[i] = -r[i]
        for r in c:
            r[i] = -r[i]

    diag = []
    top = 0
    for col in range(dim):
        if top >= nr:
            break
        while True:
            piv = None
            best = None
            for r in range(top, nr):
                for cc in range(col, dim):
                    v = abs(m[r][cc])
                    if v and (best is None or v < best):
                        best, piv = v, (r, cc)
            if piv is None:
                break
            r0, c0 = piv
            m[top], m[r0] = m[r0], m[top]
            if c0 != col:
                swap_cols(col, c0)
            if m[top][col] < 0:
                neg_col(col)
            clean = True
            for r in range(top + 1, nr):
                q = m[r][col] // m[top][col]
                if q:
                    m[r] = [a - q * b for a, b in zip(m[r], m[top])]
                if m[r][col]:
                    clean = False
            for cc in range(col + 1, dim):
                q = m[top][cc] // m[top][col]
                if q:
                    add_col(col, cc, -q)
                if m[top][cc]:
                    clean = False
            if clean:
                break
        if top < nr and m[top][col]:
            diag.append(m[top][col])
            top += 1
    return diag, tuple(tuple(r) for r in c)


class RootDatum:
    """A finite root system with a chosen coweight lattice.

    Positive roots are generated by closing the simple roots under simple
    reflections; coroots are carried along in parallel so no inner products
    are ever needed.
    """

    def __init__(self, cartan: CartanDatum, spec_string: str | None = None):
        self.cartan_datum = cartan
        self.components = cartan.components
        self.n = sum(rank for _, rank in self.components)

        a = [[0] * self.n for _ in range(self.n)]
        off = 0
        self.component_ranges = []
        for letter, rank in self.components:
            sub = cartan_matrix(letter, rank)
            for i in range(rank):
                for j in range(rank):
                    a[off + i][off + j] = sub[i][j]
            self.component_ranges.append(range(off, off + rank))
            off += rank
        self.cartan = tuple(tuple(r) for r in a)

        if cartan.lattice == "sc":
            self.dim = self.n
            basis = [tuple(self.cartan[i][j] for i in range(self.n))
                     for j in range(self.n)]  # simple coroots
        elif cartan.lattice == "ad":
            self.dim = self.n
            basis = [tuple(int(i == j) for i in range(self.n)) for j in range(self.n)]
        else:
            rows = tuple(tuple(r) for r in cartan.lattice)
            self.dim = len(rows[0])
            if self.dim < self.n or len(rows) != self.dim:
                raise RootDatumError("lattice basis must be square of size >= rank")
            if _det(rows) == 0:
                raise RootDatumError("lattice basis is singular")
            basis = list(rows)
        self.x_basis = tuple(basis)
        self.lattice_label = cartan.lattice if cartan.lattice in ("sc", "ad") else "explicit"

        self.simple_coroots = tuple(
            tuple(self.cartan[i][j] for i in range(self.n)) + (0,) * (self.dim - self.n)
            for j in range(self.n))
        for j, crt in enumerate(self.simple_coroots):
            if self.x_coords(crt) is None:
                raise RootDatumError(
                    f"lattice does not contain the simple coroot alpha_{j + 1}^vee")

        self._weyl_cache: dict[tuple, FiniteWeylElement] = {}
        ident = tuple(tuple(int(i == j) for j in range(self.dim)) for i in range(self.dim))
        self.weyl_identity = self._intern_weyl(ident)
        self.simple_reflections = tuple(self._simple_reflection(i) for i in range(self.n))

        self._generate_roots()
        self._snf_data = None
        self._w0_elements = None
        self.spec_string = spec_string or self._default_spec_string()

    # -- construction helpers --------------------------------------------------

    def _intern_weyl(self, matrix) -> FiniteWeylElement:
        el = self._weyl_cache.get(matrix)
        if el is None:
            el = FiniteWeylElement(self, matrix)
            self._weyl_cache[matrix] = el
        return el

    def _simple_reflection(self, i: int) -> FiniteWeylElement:
        crt = self.simple_coroots[i]
        rows = []
        for r in range(self.dim):
            row = [int(r == c) for c in range(self.dim)]
            row[i] -= crt[r]  # s_i(x) = x - x[i] * alpha_i^vee
            rows.append(tuple(row))
        return self._intern_weyl(tuple(rows))

    def _generate_roots(self):
        simple_roots = [tuple(int(i == j) for j in range(self.n)) for i in range(self.n)]
        pairs = dict(zip(simple_roots, self.simple_coroots))
        frontier = list(pairs.items())
        while frontier:
            nxt = []
            for rt, crt in frontier:
                for i in range(self.n):
                    m = sum(rt[k] * self.cartan[k][i] for k in range(self.n))
                    new_rt = tuple(rt[j] - m * (j == i) for j in range(self.n))
                    if new_rt not in pairs:
                        new_crt = self.simple_reflections[i].act(crt)
                        pairs[new_rt] = new_crt
                        nxt.append((new_rt, new_crt))
            frontier = nxt
        pos = sorted(rt for rt in pairs if all(x >= 0 for x in rt))
        if len(pairs) != 2 * len(pos):
            raise RootDatumError("root closure is not symmetric")
        self.positive_roots = tuple(pos)
        self.positive_coroots = tuple(pairs[rt] for rt in pos)
        self.coroot_of = dict(zip(self.positive_roots, self.positive_coroots))

        self.highest_roots = []
        for rng in self.component_ranges:
            block = [rt for rt in pos if any(rt[i] for i in rng)]
            theta = max(block, key=lambda rt: sum(rt))
            self.highest_roots.append((theta, pairs[theta]))
        self.highest_roots = tuple(self.highest_roots)

    def _default_spec_string(self):
        typ = "x".join(f"{letter}{rank}" for letter, rank in self.components)
        return f"{typ}:{self.lattice_label}"

    # -- basic arithmetic --------------------------------------------------------

    def pair(self, root: Root, coweight: Coweight) -> int:
        """<alpha, nu> for alpha in simple-root coords, nu in ambient coords."""
        return sum(root[i] * coweight[i] for i in range(self.n))

    def is_positive_root(self, root: Root) -> bool:
        return any(root) and all(x >= 0 for x in root)

    def is_root(self, root: Root) -> bool:
        return root in self.coroot_of or tuple(-x for x in root) in self.coroot_of

    def coroot(self, root: Root) -> Coweight:
        if root in self.coroot_of:
            return self.coroot_of[root]
        neg = tuple(-x for x in root)
        return tuple(-x for x in self.coroot_of[neg])

    def reflection(self, root: Root) -> FiniteWeylElement:
        """Finite reflection s_alpha: x -> x - <alpha, x> alpha^vee."""
        crt = self.coroot(root)
        rows = []
        for r in range(self.dim):
            row = [int(r == c) - crt[r] * (root[c] if c < self.n else 0)
                   for c in range(self.dim)]
            rows.append(tuple(row))
        return self._intern_weyl(tuple(rows))

    def x_coords(self, coweight: Coweight):
        """Coordinates in the chosen lattice basis, or None if outside X."""
        sol = _solve_rational(self.x_basis, coweight)
        if sol is None or any(x.denominator != 1 for x in sol):
            return None
        return tuple(int(x) for x in sol)

    def coweight_from_x_coords(self, coords) -> Coweight:
        if len(coords) != self.dim:
            raise RootDatumError(f"expected {self.dim} lattice coordinates")
        return tuple(sum(c * b[i] for c, b in zip(coords, self.x_basis))
                     for i in range(self.dim))

    def in_lattice(self, coweight: Coweight) -> bool:
        return self.x_coords(coweight) is not None

    def zero_coweight(self) -> Coweight:
        return (0,) * self.dim

    # -- Weyl group ----------------------------------------------------------------

    def w0_elements(self) -> tuple[FiniteWeylElement, ...]:
        """All elements of the finite Weyl group."""
        if self._w0_elements is None:
            seen = {self.weyl_identity}
            frontier = [self.weyl_identity]
            while frontier:
                nxt = []
                for w in frontier:
                    for s in self.simple_reflections:
                        p = s * w
                        if p not in seen:
                            seen.add(p)
                            nxt.append(p)
                frontier = nxt
            self._w0_elements = tuple(sorted(seen, key=self.finite_word))
        return self._w0_elements

    def finite_length(self, w: FiniteWeylElement) -> int:
        return sum(1 for rt in self.positive_roots
                   if not self.is_positive_root(w.act_root(rt)))

    def finite_word(self, w: FiniteWeylElement) -> tuple[int, ...]:
        """Canonical reduced word (smallest left descent first), as 0-based
        simple-root indices."""
        word = []
        cur = w
        while True:
            winv = cur.inverse()
            for i in range(self.n):
                alpha = tuple(int(j == i) for j in range(self.n))
                if not self.is_positive_root(winv.act_root(alpha)):
                    word.append(i)
                    cur = self.simple_reflections[i] * cur
                    break
            else:
                break
        return tuple(word)

    # -- anti-dominance ---------------------------------------------------------------

    def is_antidominant(self, coweight: Coweight) -> bool:
        return all(self.pair(rt, coweight) <= 0 for rt in self.positive_roots)

    def is_dominant(self, coweight: Coweight) -> bool:
        return all(self.pair(rt, coweight) >= 0 for rt in self.positive_roots)

    def antidominant_representative(self, coweight: Coweight):
        """The unique anti-dominant point of the W0-orbit, plus a Weyl element
        mapping the input onto it."""
        x = tuple(coweight)
        w = self.weyl_identity
        while True:
            for i in range(self.n):
                if x[i] > 0:
                    x = self.simple_reflections[i].act(x)
                    w = self.simple_reflections[i] * w
                    break
            else:
                return x, w

    # -- fundamental group X/Q^vee -------------------------------------------------------

    def _snf(self):
        if self._snf_data is None:
            coroot_rows = [self.x_coords(crt) for crt in self.simple_coroots]
            diag, ctrans = _diagonalize_lattice(coroot_rows, self.dim)
            self._snf_data = (tuple(diag), ctrans, _mat_inv(ctrans))
        return self._snf_data

    def fundamental_group_class(self, coweight: Coweight) -> tuple[int, ...]:
        """Class in X/Q^vee as a canonical tuple: torsion coordinates reduced
        modulo their orders, then free (central) coordinates."""
        coords = self.x_coords(coweight)
        if coords is None:
            raise RootDatumError("coweight is not in the lattice")
        diag, ctrans, _ = self._snf()
        y = [sum(coords[i] * ctrans[i][j] for i in range(self.dim))
             for j in range(self.dim)]
        return tuple(v % diag[i] if i < len(diag) else v for i, v in enumerate(y))

    def fundamental_group_order(self):
        """|X/Q^vee|, or None when there are free (central) directions."""
        diag, _, _ = self._snf()
        if len(diag) < self.dim:
            return None
        return reduce(lambda x, y: x * y, diag, 1)

    def fundamental_group_torsion_reps(self) -> tuple[Coweight, ...]:
        """One coweight representative per torsion class of X/Q^vee."""
        diag, _, cinv = self._snf()
        reps = []

        def rec(i, acc):
            if i == len(diag):
                y = acc + [0] * (self.dim - len(diag))
                coords = tuple(sum(y[j] * cinv[j][i2] for j in range(self.dim))
                               for i2 in range(self.dim))
                reps.append(self.coweight_from_x_coords(coords))
                return
            for v in range(diag[i]):
                rec(i + 1, acc + [v])

        rec(0, [])
        return tuple(reps)

    def __repr__(self):
        return f"RootDatum({self.spec_string})"


# -- presets and parsing -------------------------------------------------------------

_PRESET_CACHE: dict[str, RootDatum] = {}


def _parse_components(typ: str) -> tuple[tuple[str, int], ...]:
    comps = []
    for part in typ.replace("+", "x").split("x"):
        part = part.strip()
        if len(part) < 2 or part[0] not in VALID_RANKS or not part[1:].isdigit():
            raise RootDatumError(f"cannot parse Dynkin type {part!r}")
        comps.append((part[0], int(part[1:])))
    return tuple(comps)


def build_root_datum(cartan: CartanDatum) -> RootDatum:
    return RootDatum(cartan)


def preset(spec: str) -> RootDatum:
    """Root datum for a preset string like 'A2', 'C2:sc' or 'A1:ad'.

    A bare type defaults to the simply-connected lattice.
    """
    key = spec if ":" in spec else spec + ":sc"
    if key not in _PRESET_CACHE:
        typ, _, lat = key.partition(":")
        if lat not in ("sc", "ad"):
            raise RootDatumError(f"unknown lattice suffix {lat!r}")
        _PRESET_CACHE[key] = RootDatum(CartanDatum(_parse_components(typ), lat),
                                       spec_string=key)
    return _PRESET_CACHE[key]


def from_json(doc) -> RootDatum:
    """Explicit-lattice datum from a {type, rank, lattice_basis} document."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    typ = str(doc["type"])
    if not any(ch.isdigit() for ch in typ):
        typ = f"{typ}{doc['rank']}"
    comps = _parse_components(typ)
    if "rank" in doc and sum(r for _, r in comps) != int(doc["rank"]):
        raise RootDatumError("rank field disagrees with type string")
    basis = tuple(tuple(int(e) for e in row) for row in doc["lattice_basis"])
    return RootDatum(CartanDatum(comps, basis))
