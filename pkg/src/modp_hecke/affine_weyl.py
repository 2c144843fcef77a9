"""The extended affine Weyl group W = X x| W0.

Elements are pairs (translation, finite part) multiplying by the semidirect
product law.  The affine simple system consists of the finite simple
reflections plus, for each irreducible component, the reflection
s_0 = t_{theta^vee} s_theta in the wall <theta, x> = 1 of the base alcove
{x : 0 < <alpha, x> < 1 for all positive alpha}.  Length-zero elements form
the subgroup Omega, which permutes the affine simple reflections; every
element factors as (word in affine simples) * (Omega part).

Affine roots are pairs (beta, k) with beta a root in simple-root coordinates
and k an integer, acting on the coweight space as x -> <beta, x> + k.
"""

from __future__ import annotations

from .root_datum import Coweight, FiniteWeylElement, Root, RootDatum, RootDatumError

AffineRoot = tuple[Root, int]


class CapExceeded(RuntimeError):
    """An enumeration guard (interval size or word length cap) was hit."""


class AffineWeylElement:
    """t_lambda * u with lambda a lattice coweight and u a finite Weyl element."""

    __slots__ = ("datum", "translation", "finite", "_hash")

    def __init__(self, datum: RootDatum, translation: Coweight, finite: FiniteWeylElement):
        self.datum = datum
        self.translation = translation
        self.finite = finite
        self._hash = hash((translation, finite.matrix))

    def __eq__(self, other):
        return (isinstance(other, AffineWeylElement) and self.datum is other.datum
                and self.translation == other.translation and self.finite == other.finite)

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        if self.datum is not other.datum:
            raise RootDatumError("datum mismatch")
        lam = tuple(a + b for a, b in zip(self.translation,
                                          self.finite.act(other.translation)))
        return AffineWeylElement(self.datum, lam, self.finite * other.finite)

    def inverse(self) -> "AffineWeylElement":
        uinv = self.finite.inverse()
        lam = tuple(-x for x in uinv.act(self.translation))
        return AffineWeylElement(self.datum, lam, uinv)

    def is_identity(self) -> bool:
        return self.finite.is_identity() and not any(self.translation)

    def __repr__(self):
        return f"<{element_to_string(self)}>"


def identity(datum: RootDatum) -> AffineWeylElement:
    return AffineWeylElement(datum, datum.zero_coweight(), datum.weyl_identity)


def translation(datum: RootDatum, coweight: Coweight) -> AffineWeylElement:
    if not datum.in_lattice(coweight):
        raise RootDatumError(f"{coweight} is not in the coweight lattice")
    return AffineWeylElement(datum, tuple(coweight), datum.weyl_identity)


def from_finite(datum: RootDatum, u: FiniteWeylElement) -> AffineWeylElement:
    return AffineWeylElement(datum, datum.zero_coweight(), u)


def reflection(datum: RootDatum, aroot: AffineRoot) -> AffineWeylElement:
    """Reflection in the affine hyperplane <beta, x> + k = 0, i.e.
    t_{-k beta^vee} s_beta."""
    beta, k = aroot
    crt = datum.coroot(beta)
    lam = tuple(-k * c for c in crt)
    return AffineWeylElement(datum, lam, datum.reflection(beta))


# -- affine simple system ------------------------------------------------------


class AffineSimpleSystem:
    """Indexing of the affine simple reflections.

    Each irreducible component occupies a contiguous block of indices: the
    block starts with the affine node, followed by the component's finite
    simple reflections.  For a single component this is the usual numbering
    s_0 (affine), s_1 .. s_r (finite).
    """

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.index_of_finite = {}
        self.simple_roots: dict[int, AffineRoot] = {}
        self.elements: dict[int, AffineWeylElement] = {}
        off = 0
        self.affine_indices = []
        self.finite_indices = []
        for comp, rng in enumerate(datum.component_ranges):
            theta, theta_vee = datum.highest_roots[comp]
            idx0 = off
            self.affine_indices.append(idx0)
            self.simple_roots[idx0] = (tuple(-c for c in theta), 1)
            self.elements[idx0] = AffineWeylElement(
                datum, theta_vee, datum.reflection(theta))
            for pos, i in enumerate(rng):
                idx = off + 1 + pos
                self.finite_indices.append(idx)
                self.index_of_finite[i] = idx
                alpha = tuple(int(j == i) for j in range(datum.n))
                self.simple_roots[idx] = (alpha, 0)
                self.elements[idx] = from_finite(datum, datum.simple_reflections[i])
            off += 1 + len(rng)
        self.indices = tuple(sorted(self.simple_roots))
        self._omega_conj_cache: dict[tuple, int] = {}
        self._element_index = {el: i for i, el in self.elements.items()}

    def simple(self, i: int) -> AffineWeylElement:
        if i not in self.elements:
            raise RootDatumError(f"invalid affine simple index {i}")
        return self.elements[i]

    def finite_root_index(self, i: int):
        """Finite simple-root index for a finite node, None for affine nodes."""
        beta, k = self.simple_roots[i]
        if k != 0:
            return None
        return beta.index(1)


_SYSTEMS: dict[int, AffineSimpleSystem] = {}


def simple_system(datum: RootDatum) -> AffineSimpleSystem:
    sys = _SYSTEMS.get(id(datum))
    if sys is None:
        sys = AffineSimpleSystem(datum)
        _SYSTEMS[id(datum)] = sys
    return sys


# -- length, words, Bruhat order -------------------------------------------------

_LENGTH_CACHE: dict[tuple, int] = {}


def length(w: AffineWeylElement) -> int:
    """Iwahori-Matsumoto closed form, pinned to agree with the alcove-walk
    count for the base alcove 0 < <alpha, x> < 1 (see oracle.brute_length)."""
    key = (id(w.datum), w.translation, w.finite.matrix)
    val = _LENGTH_CACHE.get(key)
    if val is None:
        datum = w.datum
        uinv = w.finite.inverse()
        val = 0
        for rt in datum.positive_roots:
            m = datum.pair(rt, w.translation)
            if datum.is_positive_root(uinv.act_root(rt)):
                val += abs(m)
            else:
                val += abs(m - 1)
        _LENGTH_CACHE[key] = val
    return val


def aff_act(w: AffineWeylElement, aroot: AffineRoot) -> AffineRoot:
    """Action on affine roots: t_lambda u . (beta, k) = (u beta, k - <u beta, lambda>)."""
    beta, k = aroot
    ubeta = w.finite.act_root(beta)
    return (ubeta, k - w.datum.pair(ubeta, w.translation))


def aff_is_positive(datum: RootDatum, aroot: AffineRoot) -> bool:
    beta, k = aroot
    if datum.is_positive_root(beta):
        return k >= 0
    return k >= 1


def left_descents(w: AffineWeylElement):
    sys = simple_system(w.datum)
    lw = length(w)
    for i in sys.indices:
        if length(sys.elements[i] * w) < lw:
            yield i


def right_descents(w: AffineWeylElement):
    sys = simple_system(w.datum)
    lw = length(w)
    for i in sys.indices:
        if length(w * sys.elements[i]) < lw:
            yield i


_WORD_CACHE: dict[tuple, tuple] = {}


def reduced_word(w: AffineWeylElement):
    """(word, tau): w = s_{i1} ... s_{ik} * tau with the word reduced and tau
    of length zero.  Deterministic: smallest left descent at every step."""
    key = (id(w.datum), w.translation, w.finite.matrix)
    cached = _WORD_CACHE.get(key)
    if cached is not None:
        return cached
    sys = simple_system(w.datum)
    word = []
    cur = w
    while length(cur) > 0:
        for i in sys.indices:
            if length(sys.elements[i] * cur) < length(cur):
                word.append(i)
                cur = sys.elements[i] * cur
                break
        else:
            raise RootDatumError("positive length element with no left descent")
    result = (tuple(word), cur)
    _WORD_CACHE[key] = result
    return result


def omega_part(w: AffineWeylElement) -> AffineWeylElement:
    return reduced_word(w)[1]


def omega_element(datum: RootDatum, coweight: Coweight) -> AffineWeylElement:
    """The length-zero element of t_mu W_af, for mu in the lattice."""
    cur = translation(datum, coweight)
    sys = simple_system(datum)
    while length(cur) > 0:
        for i in sys.indices:
            if length(cur * sys.elements[i]) < length(cur):
                cur = cur * sys.elements[i]
                break
        else:
            raise RootDatumError("descent search failed")
    return cur


def omega_conjugate(tau: AffineWeylElement, i: int) -> int:
    """Index j with tau s_i tau^{-1} = s_j."""
    sys = simple_system(tau.datum)
    key = (tau.translation, tau.finite.matrix, i)
    j = sys._omega_conj_cache.get(key)
    if j is None:
        conj = tau * sys.simple(i) * tau.inverse()
        j = sys._element_index.get(conj)
        if j is None:
            raise RootDatumError("conjugation does not permute the simple system; "
                                 "is the element length-zero?")
        sys._omega_conj_cache[key] = j
    return j


_BRUHAT_CACHE: dict[tuple, bool] = {}


def bruhat_leq(u: AffineWeylElement, w: AffineWeylElement) -> bool:
    """Bruhat order on W; elements with different Omega parts are incomparable."""
    if u.datum is not w.datum:
        raise RootDatumError("datum mismatch")
    if length(u) > length(w):
        return False
    if u == w:
        return True
    if omega_part(u) != omega_part(w):
        return False
    return _bruhat_rec(u, w)


def _bruhat_rec(u, w):
    # invariants: omega parts agree, u != w possible, ell(w) > 0 here
    if u == w:
        return True
    lu, lw = length(u), length(w)
    if lu > lw:
        return False
    if lw == 0:
        return False
    key = (id(u.datum), u.translation, u.finite.matrix, w.translation, w.finite.matrix)
    val = _BRUHAT_CACHE.get(key)
    if val is None:
        sys = simple_system(u.datum)
        i = next(iter(left_descents(w)))
        s = sys.elements[i]
        su = s * u
        if length(su) < lu:
            val = _bruhat_rec(su, s * w)
        else:
            val = _bruhat_rec(u, s * w)
        _BRUHAT_CACHE[key] = val
    return val


_LOWER_CACHE: dict[tuple, frozenset] = {}


def lower_set(w: AffineWeylElement, cap: int | None = None) -> frozenset:
    """All v <= w in Bruhat order (within the Omega fiber of w)."""
    key = (id(w.datum), w.translation, w.finite.matrix)
    val = _LOWER_CACHE.get(key)
    if val is None:
        if length(w) == 0:
            val = frozenset([w])
        else:
            sys = simple_system(w.datum)
            i = next(iter(right_descents(w)))
            s = sys.elements[i]
            below = lower_set(w * s, cap)
            val = frozenset(below | {v * s for v in below})
        _LOWER_CACHE[key] = val
    if cap is not None and len(val) > cap:
        raise CapExceeded(f"lower interval has {len(val)} > {cap} elements")
    return val


# -- Demazure product ---------------------------------------------------------------


def demazure_product(datum: RootDatum, word) -> AffineWeylElement:
    """Greedy 0-Hecke fold: process the word right to left, multiplying only
    when the length goes up."""
    sys = simple_system(datum)
    x = identity(datum)
    for i in reversed(tuple(word)):
        s = sys.simple(i)
        sx = s * x
        if length(sx) > length(x):
            x = sx
    return x


def demazure_mult(a: AffineWeylElement, b: AffineWeylElement) -> AffineWeylElement:
    """0-Hecke monoid product a * b.

    Only the W_af parts participate; Omega parts multiply through by
    conjugating b's word (tau s_i tau^{-1} is again simple), matching
    concatenation of the decompositions a = a_af tau_a, b = b_af tau_b."""
    word_a, tau_a = reduced_word(a)
    word_b, tau_b = reduced_word(b)
    shifted = [omega_conjugate(tau_a, i) for i in word_b]
    folded = demazure_product(a.datum, tuple(word_a) + tuple(shifted))
    return folded * tau_a * tau_b


# -- facets and coset representatives -------------------------------------------------


class Facet:
    """A subset J of affine simple indices generating a finite parabolic W_f."""

    __slots__ = ("datum", "indices", "elements", "_special", "_hash")

    def __init__(self, datum: RootDatum, indices):
        self.datum = datum
        self.indices = tuple(sorted(set(indices)))
        sys = simple_system(datum)
        for i in self.indices:
            if i not in sys.elements:
                raise RootDatumError(f"invalid affine simple index {i}")
        cap = len(datum.w0_elements())
        gens = [sys.elements[i] for i in self.indices]
        seen = {identity(datum)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    p = w * g
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
            frontier = nxt
            if len(seen) > cap:
                raise RootDatumError(
                    f"facet {self.indices} does not generate a finite parabolic")
        self.elements = tuple(sorted(seen, key=element_sort_key))
        self._special = None
        self._hash = hash((id(datum), self.indices))

    def __eq__(self, other):
        return (isinstance(other, Facet) and self.datum is other.datum
                and self.indices == other.indices)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Facet{self.indices}"

    @property
    def is_iwahori(self) -> bool:
        return not self.indices

    def is_special(self) -> bool:
        """True iff W_f projects bijectively onto the finite Weyl group."""
        if self._special is None:
            w0 = self.datum.w0_elements()
            finite_parts = {w.finite for w in self.elements}
            self._special = (len(self.elements) == len(w0)
                             and len(finite_parts) == len(w0))
        return self._special


_FACETS: dict[tuple, Facet] = {}


def facet(datum: RootDatum, indices) -> Facet:
    key = (id(datum), tuple(sorted(set(indices))))
    f = _FACETS.get(key)
    if f is None:
        f = Facet(datum, indices)
        _FACETS[key] = f
    return f


def iwahori(datum: RootDatum) -> Facet:
    return facet(datum, ())


def hyperspecial(datum: RootDatum) -> Facet:
    """The facet of all finite simple reflections (the base vertex)."""
    return facet(datum, simple_system(datum).finite_indices)


def is_special_facet(f: Facet) -> bool:
    return f.is_special()


def element_sort_key(w: AffineWeylElement):
    """Deterministic total order used for canonical tie-breaking."""
    coords = w.datum.x_coords(w.translation)
    return (length(w), coords, w.datum.finite_word(w.finite))


def min_coset_rep(w: AffineWeylElement, f: Facet) -> AffineWeylElement:
    """The unique minimal-length element of w W_f."""
    sys = simple_system(w.datum)
    cur = w
    changed = True
    while changed:
        changed = False
        for i in f.indices:
            nxt = cur * sys.elements[i]
            if length(nxt) < length(cur):
                cur = nxt
                changed = True
                break
    return cur


class DoubleCosetIndex:
    """Canonical representative of a class in W_f \\ W / W_f."""

    __slots__ = ("facet", "rep", "_hash")

    def __init__(self, facet_: Facet, rep: AffineWeylElement):
        self.facet = facet_
        self.rep = rep
        self._hash = hash((facet_, rep))

    def __eq__(self, other):
        return (isinstance(other, DoubleCosetIndex)
                and self.facet == other.facet and self.rep == other.rep)

    def __hash__(self):
        return self._hash

    @property
    def length(self) -> int:
        return length(self.rep)

    def __repr__(self):
        return f"[{element_to_string(self.rep)}]"

    def to_json(self):
        return {"facet": list(self.facet.indices),
                "rep": element_to_string(self.rep)}


def double_coset_rep(w: AffineWeylElement, f: Facet) -> DoubleCosetIndex:
    """The representative _f w^f: the unique longest element among the
    minimal coset representatives {(v w)^f : v in W_f}."""
    candidates = {min_coset_rep(v * w, f) for v in f.elements}
    best = max(candidates, key=length)
    ties = [c for c in candidates if length(c) == length(best)]
    if len(ties) != 1:
        raise RootDatumError("double coset has no unique maximal min-rep")
    return DoubleCosetIndex(f, best)


def enumerate_lower_interval(idx: DoubleCosetIndex, cap: int | None = 20000,
                             cache=None) -> frozenset:
    """{v in _f W^f : v <= _f w^f}, as canonical double-coset indices."""
    f = idx.facet
    if cache is not None:
        hit = cache.get(f, idx.rep)
        if hit is not None:
            return frozenset(DoubleCosetIndex(f, parse_element(f.datum, s))
                             for s in hit)
    out = set()
    for v in lower_set(idx.rep, cap):
        c = double_coset_rep(v, f)
        if c.rep == v:
            out.add(c)
    if cache is not None:
        cache.put(f, idx.rep, sorted(element_to_string(c.rep) for c in out))
    return frozenset(out)


def coset_min_reps(idx: DoubleCosetIndex):
    """Minimal coset representatives u in W^f whose double coset is idx."""
    f = idx.facet
    return {min_coset_rep(g * idx.rep, f) for g in f.elements}


def length_ball(datum: RootDatum, length_cap: int):
    """All elements of length <= cap whose Omega part is torsion (for data
    without central directions this is the full length ball of W)."""
    sys = simple_system(datum)
    taus = [omega_element(datum, rep)
            for rep in datum.fundamental_group_torsion_reps()]
    seen = set(taus)
    frontier = list(taus)
    while frontier:
        nxt = []
        for w in frontier:
            for i in sys.indices:
                p = w * sys.elements[i]
                if length(p) <= length_cap and p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return sorted(seen, key=element_sort_key)


# -- textual forms ----------------------------------------------------------------------


def element_to_string(w: AffineWeylElement) -> str:
    """Canonical form 't[..]*s<i>*..': lattice coordinates of the translation
    part followed by a reduced word of the finite part (1-based s-indices as
    positioned in the affine simple system)."""
    datum = w.datum
    sys = simple_system(datum)
    parts = []
    if any(w.translation):
        coords = datum.x_coords(w.translation)
        parts.append("t[" + ",".join(str(c) for c in coords) + "]")
    for i in datum.finite_word(w.finite):
        parts.append(f"s{sys.index_of_finite[i]}")
    return "*".join(parts) if parts else "e"


def parse_element(datum: RootDatum, text: str) -> AffineWeylElement:
    """Parse 'e', 't[..]', 's<i>', 'w[i,j,..]' and '*'-products thereof.

    Commas may be used instead of '*' between atoms; a bare integer after an
    's'-atom is read as another simple reflection index.
    """
    sys = simple_system(datum)
    s = text.strip().replace(" ", "")
    if not s:
        raise RootDatumError("empty element string")
    atoms = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch in "*,":
            i += 1
            continue
        if ch == "e":
            atoms.append(identity(datum))
            i += 1
        elif ch == "s" or ch.isdigit() or ch == "-":
            j = i + 1 if ch == "s" else i
            k = j
            if k < len(s) and s[k] == "-":
                k += 1
            while k < len(s) and s[k].isdigit():
                k += 1
            if k == j or (k == j + 1 and s[j] == "-"):
                raise RootDatumError(f"cannot parse element {text!r} at {i}")
            atoms.append(sys.simple(int(s[j:k])))
            i = k
        elif ch in "tw":
            if i + 1 >= len(s) or s[i + 1] != "[":
                raise RootDatumError(f"cannot parse element {text!r} at {i}")
            close = s.index("]", i)
            body = s[i + 2:close]
            nums = [int(v) for v in body.split(",")] if body else []
            if ch == "t":
                atoms.append(translation(datum, datum.coweight_from_x_coords(nums)))
            else:
                el = identity(datum)
                for v in nums:
                    el = el * sys.simple(v)
                atoms.append(el)
            i = close + 1
        else:
            raise RootDatumError(f"cannot parse element {text!r} at {i}")
    out = identity(datum)
    for a in atoms:
        out = out * a
    return out


def word_form(w: AffineWeylElement) -> str:
    """'s0*s1' style reduced word of the W_af part, with a ':tau' suffix when
    the Omega part is nontrivial."""
    word, tau = reduced_word(w)
    body = "*".join(f"s{i}" for i in word) if word else "e"
    if tau.is_identity():
        return body
    return f"{body}:{element_to_string(tau)}"
