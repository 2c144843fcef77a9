"""Mod p parahoric Hecke algebras in the indicator and phi bases.

The phi basis element attached to a double coset w is the sum of the
indicator functions of all double cosets below it in Bruhat order.  Products
of phi basis elements are again phi basis elements: the product class is the
double coset of the 0-Hecke (Demazure) fold of concatenated reduced words,
with the length-zero parts pulled to the outside.  Indicator-basis products
are computed by converting through the phi basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import affine_weyl as aw
from .affine_weyl import (DoubleCosetIndex, Facet, demazure_product,
                          double_coset_rep, element_to_string,
                          enumerate_lower_interval, omega_conjugate,
                          parse_element, reduced_word)


class HeckeError(ValueError):
    pass


def _check_prime(p: int):
    if not isinstance(p, int) or p < 2:
        raise HeckeError(f"coefficient modulus must be a prime >= 2, got {p}")
    if any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise HeckeError(f"coefficient modulus {p} is not prime")


class HeckeElement:
    """Sparse F_p-linear combination of double-coset indices."""

    __slots__ = ("facet", "prime", "basis", "coeffs")

    def __init__(self, facet: Facet, prime: int, basis: str, coeffs: dict):
        _check_prime(prime)
        if basis not in ("indicator", "phi"):
            raise HeckeError(f"unknown basis {basis!r}")
        self.facet = facet
        self.prime = prime
        self.basis = basis
        norm = {}
        for idx, c in coeffs.items():
            if idx.facet != facet:
                raise HeckeError("coefficient indexed by a foreign facet")
            c %= prime
            if c:
                norm[idx] = c
        self.coeffs = norm

    def __eq__(self, other):
        return (isinstance(other, HeckeElement) and self.facet == other.facet
                and self.prime == other.prime and self.basis == other.basis
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.facet, self.prime, self.basis,
                     frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check_compatible(other)
        if self.basis != other.basis:
            raise HeckeError("cannot add elements in different bases")
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, 0) + c
        return HeckeElement(self.facet, self.prime, self.basis, out)

    def scale(self, c: int) -> "HeckeElement":
        return HeckeElement(self.facet, self.prime, self.basis,
                            {idx: v * c for idx, v in self.coeffs.items()})

    def _check_compatible(self, other):
        if self.facet != other.facet:
            raise HeckeError("facet mismatch")
        if self.prime != other.prime:
            raise HeckeError("prime mismatch")

    def convert(self, basis: str, cap: int | None = 20000) -> "HeckeElement":
        if basis == self.basis:
            return self
        if basis == "indicator":
            out = {}
            for idx, c in self.coeffs.items():
                for v in enumerate_lower_interval(idx, cap):
                    out[v] = out.get(v, 0) + c
            return HeckeElement(self.facet, self.prime, "indicator", out)
        # indicator -> phi by unitriangular back-substitution from the top.
        remaining = dict(self.coeffs)
        out = {}
        while remaining:
            idx = max(remaining, key=lambda i: (i.length,
                                                aw.element_sort_key(i.rep)))
            c = remaining.pop(idx)
            out[idx] = c
            for v in enumerate_lower_interval(idx, cap):
                if v == idx:
                    continue
                newc = (remaining.get(v, 0) - c) % self.prime
                if newc:
                    remaining[v] = newc
                else:
                    remaining.pop(v, None)
        return HeckeElement(self.facet, self.prime, "phi", out)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return convolve(self, other)

    def to_json(self):
        terms = sorted(((element_to_string(idx.rep), c)
                        for idx, c in self.coeffs.items()))
        return {"facet": list(self.facet.indices), "prime": self.prime,
                "basis": self.basis,
                "terms": [{"rep": r, "coeff": c} for r, c in terms]}

    def __repr__(self):
        sym = "1" if self.basis == "indicator" else "phi"
        if not self.coeffs:
            return "0"
        terms = sorted(((element_to_string(idx.rep), c)
                        for idx, c in self.coeffs.items()))
        return " + ".join(f"{c}*{sym}[{r}]" if c != 1 else f"{sym}[{r}]"
                          for r, c in terms)


def hecke_from_json(datum, doc) -> HeckeElement:
    f = aw.facet(datum, doc["facet"])
    coeffs = {}
    for term in doc["terms"]:
        idx = double_coset_rep(parse_element(datum, term["rep"]), f)
        coeffs[idx] = coeffs.get(idx, 0) + term["coeff"]
    return HeckeElement(f, doc["prime"], doc["basis"], coeffs)


def indicator_basis_element(idx: DoubleCosetIndex, prime: int) -> HeckeElement:
    return HeckeElement(idx.facet, prime, "indicator", {idx: 1})


def phi_basis_element(idx: DoubleCosetIndex, prime: int) -> HeckeElement:
    """phi_w as a single phi-basis term; convert() expands it to the sum of
    indicators over the lower interval."""
    return HeckeElement(idx.facet, prime, "phi", {idx: 1})


def unit(facet: Facet, prime: int) -> HeckeElement:
    e_idx = double_coset_rep(aw.identity(facet.datum), facet)
    return phi_basis_element(e_idx, prime)


@dataclass(frozen=True)
class ConvolutionWitness:
    """Replayable record of one phi-class convolution."""

    facet: Facet
    w1: str
    w2: str
    tau1: str
    tau2: str
    word1: tuple[int, ...]  # tau1-conjugated word of w1 (Omega part pulled left)
    word2: tuple[int, ...]
    folded: str
    result: str

    def replay(self) -> DoubleCosetIndex:
        datum = self.facet.datum
        folded = demazure_product(datum, self.word1 + self.word2)
        assert element_to_string(folded) == self.folded
        tau1 = parse_element(datum, self.tau1)
        tau2 = parse_element(datum, self.tau2)
        out = double_coset_rep(tau1 * folded * tau2, self.facet)
        assert element_to_string(out.rep) == self.result
        return out

    def to_json(self):
        return {"facet": list(self.facet.indices), "w1": self.w1, "w2": self.w2,
                "tau1": self.tau1, "tau2": self.tau2,
                "word1": list(self.word1), "word2": list(self.word2),
                "folded": self.folded, "result": self.result}


def convolve_phi_classes(w1: DoubleCosetIndex, w2: DoubleCosetIndex):
    """Product class of phi_{w1} * phi_{w2} = phi_w, with a witness.

    Reduced decompositions are taken with the length-zero part of w1 pulled
    to the left and that of w2 kept on the right; the product class is the
    double coset of tau1 * fold(word1 ++ word2) * tau2.
    """
    if w1.facet != w2.facet:
        raise HeckeError("facet mismatch")
    datum = w1.facet.datum
    word1_r, tau1 = reduced_word(w1.rep)
    word2, tau2 = reduced_word(w2.rep)
    tau1_inv = tau1.inverse()
    word1 = tuple(omega_conjugate(tau1_inv, i) for i in word1_r)
    folded = demazure_product(datum, word1 + tuple(word2))
    out = double_coset_rep(tau1 * folded * tau2, w1.facet)
    witness = ConvolutionWitness(
        facet=w1.facet, w1=element_to_string(w1.rep), w2=element_to_string(w2.rep),
        tau1=element_to_string(tau1), tau2=element_to_string(tau2),
        word1=word1, word2=tuple(word2),
        folded=element_to_string(folded), result=element_to_string(out.rep))
    return out, witness


def convolve(a: HeckeElement, b: HeckeElement, cap: int | None = 20000) -> HeckeElement:
    """Convolution product, computed bilinearly in the phi basis; the result
    is returned in the basis of the left operand."""
    a._check_compatible(b)
    pa = a.convert("phi", cap)
    pb = b.convert("phi", cap)
    out = {}
    for i1, c1 in pa.coeffs.items():
        for i2, c2 in pb.coeffs.items():
            prod, _ = convolve_phi_classes(i1, i2)
            out[prod] = out.get(prod, 0) + c1 * c2
    result = HeckeElement(a.facet, a.prime, "phi", out)
    return result.convert(a.basis, cap)


def point_count_polynomial(idx: DoubleCosetIndex, cap: int | None = 20000):
    """Coefficients (low to high) of sum_u q^{ell(u)} over the minimal coset
    representatives u with _f u^f <= idx: the cell count of the associated
    Schubert scheme over F_q.  The constant term is always 1."""
    coeffs = [0] * (idx.length + 1)
    for v in enumerate_lower_interval(idx, cap):
        for u in aw.coset_min_reps(v):
            coeffs[aw.length(u)] += 1
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_string(coeffs) -> str:
    """Human form of a coefficient tuple, e.g. (1, 1) -> '1 + q'."""
    if not coeffs:
        return "0"
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            qpow = "q" if i == 1 else f"q^{i}"
            parts.append(qpow if c == 1 else f"{c}*{qpow}")
    return " + ".join(parts) if parts else "0"
