"""Exact arithmetic in the equivariant parameters.

Localization contributions live in Q(u1, s, t) where s and t are the
combinations of torus characters that get sent to zero at the end of the
computation (t first, then s).  Everything is kept factored: each
contribution is a rational constant times a product of powers of sparse
polynomials, so the iterated restriction reduces to reading off the
minimal variable order of each factor.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NonHomogeneous, OrderTooSmall, PoleAtRestriction, ZeroWeightSlot

U1, S, T = 0, 1, 2
_VAR_NAMES = ("u1", "s", "t")

Rat = Fraction


@dataclass(frozen=True)
class LinForm:
    """Integer linear form a*u1 + b*s + c*t."""

    a: int
    b: int
    c: int

    def __add__(self, other: "LinForm") -> "LinForm":
        return LinForm(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "LinForm") -> "LinForm":
        return LinForm(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> "LinForm":
        return LinForm(-self.a, -self.b, -self.c)

    def scaled(self, k: int) -> "LinForm":
        return LinForm(k * self.a, k * self.b, k * self.c)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def as_poly(self) -> "Poly":
        terms = {}
        for coeff, key in ((self.a, (1, 0, 0)), (self.b, (0, 1, 0)), (self.c, (0, 0, 1))):
            if coeff:
                terms[key] = Fraction(coeff)
        return Poly(terms)

    def __str__(self) -> str:
        parts = []
        for coeff, name in zip((self.a, self.b, self.c), _VAR_NAMES):
            if coeff:
                parts.append(f"{'+' if coeff > 0 and parts else ''}{coeff}*{name}")
        return "".join(parts) or "0"


class Poly:
    """Sparse polynomial in (u1, s, t) with exact rational coefficients.

    Terms map exponent triples to nonzero Fractions.  Instances are
    treated as immutable after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int, int], Fraction] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, value) -> "Poly":
        value = Fraction(value)
        return cls({(0, 0, 0): value} if value else {})

    @classmethod
    def var(cls, v: int) -> "Poly":
        key = tuple(int(i == v) for i in range(3))
        return cls({key: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0, 0)}

    def constant_value(self) -> Fraction:
        return self.terms.get((0, 0, 0), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out.get(k, Fraction(0)) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly({k: v * c for k, v in self.terms.items()})
        out: dict[tuple[int, int, int], Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                nv = out.get(key, Fraction(0)) + v1 * v2
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a Poly; use FactoredRat")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval_at(self, u1, s, t) -> Fraction:
        u1, s, t = Fraction(u1), Fraction(s), Fraction(t)
        total = Fraction(0)
        for (e0, e1, e2), v in self.terms.items():
            total += v * u1**e0 * s**e1 * t**e2
        return total

    def var_order(self, v: int) -> int:
        """Largest m with var^m dividing the polynomial."""
        if not self.terms:
            raise ValueError("var_order of the zero polynomial")
        return min(k[v] for k in self.terms)

    def divide_out(self, v: int, m: int) -> "Poly":
        """Divide every monomial by var^m."""
        if m == 0:
            return self
        if self.var_order(v) < m:
            raise OrderTooSmall(f"{_VAR_NAMES[v]}^{m} does not divide polynomial")
        out = {}
        for k, val in self.terms.items():
            nk = list(k)
            nk[v] -= m
            out[tuple(nk)] = val
        return Poly(out)

    def set_var_zero(self, v: int) -> "Poly":
        return Poly({k: val for k, val in self.terms.items() if k[v] == 0})

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(sum(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(k) for k in self.terms}
        return len(degrees) <= 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms):
            mono = "*".join(f"{_VAR_NAMES[i]}^{e}" for i, e in enumerate(key) if e)
            coeff = self.terms[key]
            bits.append(f"{coeff}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    __repr__ = __str__


@dataclass(frozen=True)
class FactoredRat:
    """coeff * product(factor^exponent) with sparse-polynomial factors."""

    coeff: Fraction
    factors: tuple[tuple[Poly, int], ...]

    def __mul__(self, other) -> "FactoredRat":
        if isinstance(other, FactoredRat):
            return FactoredRat(self.coeff * other.coeff, self.factors + other.factors)
        return FactoredRat(self.coeff * Fraction(other), self.factors)

    __rmul__ = __mul__


def factored(coeff=1, factors: Iterable[tuple[Poly, int]] = ()) -> FactoredRat:
    """Build a FactoredRat, folding constant factors into the coefficient."""
    c = Fraction(coeff)
    fs: list[tuple[Poly, int]] = []
    for poly, exp in factors:
        if isinstance(poly, LinForm):
            poly = poly.as_poly()
        if exp == 0:
            continue
        if poly.is_zero():
            raise ZeroDivisionError("zero polynomial factor in FactoredRat")
        if poly.is_constant():
            c *= poly.constant_value() ** exp
            continue
        fs.append((poly, exp))
    return FactoredRat(c, tuple(fs))


ONE = factored()


def linear_factor(form: LinForm, exp: int = 1) -> FactoredRat:
    return factored(1, [(form.as_poly(), exp)])


def degree_check(fr: FactoredRat) -> int:
    """Total homogeneity degree; invariant contributions must give 0."""
    total = 0
    for poly, exp in fr.factors:
        if not poly.is_homogeneous():
            raise NonHomogeneous(f"non-homogeneous factor {poly}")
        total += exp * poly.degree()
    return total


def set_var_zero(fr: FactoredRat, v: int) -> FactoredRat | None:
    """One restriction stage: the limit var -> 0 of fr, in factored form.

    Net order < 0 raises PoleAtRestriction, net order > 0 returns None
    (the limit is zero); at net order 0 each factor is replaced by the
    coefficient of its minimal var power.
    """
    if fr.coeff == 0:
        return None
    net = 0
    staged = []
    for poly, exp in fr.factors:
        if not poly.is_homogeneous():
            raise NonHomogeneous(f"non-homogeneous factor {poly}")
        order = poly.var_order(v)
        net += exp * order
        staged.append((poly.divide_out(v, order).set_var_zero(v), exp))
    if net < 0:
        raise PoleAtRestriction(f"net {_VAR_NAMES[v]}-order {net} < 0")
    if net > 0:
        return None
    return factored(fr.coeff, staged)


def restrict(fr: FactoredRat) -> Fraction:
    """Iterated restriction t -> 0 then s -> 0, then u1 = 1.

    Matches the order the invariants are defined in: the fourth torus
    parameter is specialized before the framing combination.  After both
    stages every homogeneous factor is a pure u1 monomial, so the final
    evaluation is a nonzero rational per factor.
    """
    out = set_var_zero(fr, T)
    if out is None:
        return Fraction(0)
    out = set_var_zero(out, S)
    if out is None:
        return Fraction(0)
    value = out.coeff
    for poly, exp in out.factors:
        v = poly.eval_at(1, 0, 0)
        if v == 0:
            raise PoleAtRestriction(f"factor {poly} vanished after staging")
        value *= v**exp
    return value


def evaluate(fr: FactoredRat, u1, s, t) -> Fraction:
    """Direct exact evaluation, used to cross-check restrict numerically."""
    value = fr.coeff
    for poly, exp in fr.factors:
        v = poly.eval_at(u1, s, t)
        if v == 0:
            raise ZeroDivisionError("factor vanishes at evaluation point")
        value *= v**exp
    return value


def _series_mul(a: list[Fraction], b: list[Fraction], depth: int) -> list[Fraction]:
    out = [Fraction(0)] * depth
    for i, ai in enumerate(a):
        if ai == 0 or i >= depth:
            continue
        for j, bj in enumerate(b):
            if i + j >= depth:
                break
            out[i + j] += ai * bj
    return out


def _series_inv(a: list[Fraction], depth: int) -> list[Fraction]:
    inv0 = 1 / a[0]
    out = [inv0] + [Fraction(0)] * (depth - 1)
    for k in range(1, depth):
        acc = Fraction(0)
        for j in range(1, k + 1):
            aj = a[j] if j < len(a) else Fraction(0)
            acc += aj * out[k - j]
        out[k] = -inv0 * acc
    return out


def _series_pow(a: list[Fraction], e: int, depth: int) -> list[Fraction]:
    if e < 0:
        a, e = _series_inv(a, depth), -e
    out = [Fraction(1)] + [Fraction(0)] * (depth - 1)
    while e:
        if e & 1:
            out = _series_mul(out, a, depth)
        a = _series_mul(a, a, depth)
        e >>= 1
    return out


def laurent_tail(fr: FactoredRat, v: int = S) -> dict[int, Fraction]:
    """Laurent coefficients of nonpositive orders at var -> 0, after u1 = 1.

    The input must be free of the later restriction variables (run the t
    stage first when expanding in s).  Homogeneity makes the evaluation
    at u1 = 1 lossless.  Orders above zero vanish in the limit and are
    not reported; an empty dict means the value restricts to zero.
    """
    if fr.coeff == 0:
        return {}
    net = 0
    parts = []
    for poly, exp in fr.factors:
        if not poly.is_homogeneous():
            raise NonHomogeneous(f"non-homogeneous factor {poly}")
        order = poly.var_order(v)
        net += exp * order
        coeffs: dict[int, Fraction] = {}
        for key, c in poly.terms.items():
            coeffs[key[v] - order] = coeffs.get(key[v] - order, Fraction(0)) + c
        parts.append((coeffs, exp))
    if net > 0:
        return {}
    depth = 1 - net
    series = [Fraction(1)] + [Fraction(0)] * (depth - 1)
    for coeffs, exp in parts:
        dense = [coeffs.get(j, Fraction(0)) for j in range(depth)]
        series = _series_mul(series, _series_pow(dense, exp, depth), depth)
    return {net + j: fr.coeff * c for j, c in enumerate(series)
            if c != 0 and net + j <= 0}


def restrict_sum(frs: Iterable[FactoredRat], v: int = S) -> Fraction:
    """Restricted value of a sum whose members may have canceling poles.

    Runs the t stage per member, accumulates Laurent tails in the second
    variable, requires every negative order to cancel exactly across the
    sum, and returns the order-zero coefficient.
    """
    total: dict[int, Fraction] = {}
    for fr in frs:
        staged = set_var_zero(fr, T)
        if staged is None:
            continue
        for order, c in laurent_tail(staged, v).items():
            total[order] = total.get(order, Fraction(0)) + c
    residues = {k: c for k, c in total.items() if k < 0 and c != 0}
    if residues:
        raise PoleAtRestriction(f"uncancelled pole orders {sorted(residues)} in sum")
    return total.get(0, Fraction(0))


def vertex_integral(slots: list[tuple[LinForm, int] | None]) -> FactoredRat:
    """Genus-zero psi-class integral with the unstable-vertex conventions.

    Each slot is a (weight form, positive integer divisor) pair for weight
    w/d, or None for a marked point carrying no weight factor.  With
    weighted slots w_1..w_k out of n total slots the value is
    prod(1/w_i) * (sum(1/w_i))^(n-3), which reproduces the one-, two- and
    three-slot conventions verbatim.
    """
    n = len(slots)
    weighted = [slot for slot in slots if slot is not None]
    if not weighted:
        raise ZeroWeightSlot("vertex integral needs at least one weighted slot")
    coeff = Fraction(1)
    factors: list[tuple[Poly, int]] = []
    polys = []
    for form, div in weighted:
        if form.is_zero():
            raise ZeroWeightSlot("zero weight form in vertex integral")
        if div <= 0:
            raise ValueError("slot divisor must be positive")
        coeff *= div
        polys.append((form.as_poly(), div))
        factors.append((form.as_poly(), -(n - 2)))
    total = Poly.const(0)
    for i, (_, div) in enumerate(polys):
        prod = Poly.const(div)
        for j, (poly, _) in enumerate(polys):
            if j != i:
                prod = prod * poly
        total = total + prod
    if total.is_zero():
        raise PoleAtRestriction("vertex weights sum to zero, framing degenerate")
    factors.append((total, n - 3))
    return factored(coeff, factors)
