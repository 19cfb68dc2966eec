"""Localization kernel: edge factors, vertex terms, per-graph contributions.

Each of the four invariant pipelines (disk, maximally-tangent relative,
0- and 1-pointed local closed) assembles, per decorated graph, an exact
factored rational function in (u1, s, t):

* an edge factor per edge: the ratio of equivariant Euler classes of the
  odd/even cohomology of the pulled-back bundle along the degree-d cover
  of the wall's line, moving part only,
* a vertex factor per vertex: a power of the fixed point's tangent Euler
  class times a genus-zero psi integral over the edge (and marking) slots,
* a theory prefactor.

The relative pipeline twists the tangent summand on the divisor-meeting
wall down to degree one with vanishing weight at the divisor end (the log
tangent bundle restricted to that line), and its divisor vertex
contributes the factor 1 of the two-slot unstable convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import fan as fanmod
from .build import GeometrySet
from .errors import NonGenericFraming, NonIntegerDegree
from .fan import Fan
from .graphs import DecoratedGraph
from .symrat import (FactoredRat, LinForm, factored, vertex_integral)

U1_FORM = LinForm(1, 0, 0)
S_FORM = LinForm(0, 1, 0)


@dataclass(frozen=True)
class DiskTheory:
    """Genus-zero one-boundary-component counts at fixed winding."""

    framing: int
    winding: int


@dataclass(frozen=True)
class RelativeTheory:
    """Maximal tangency along the added divisor, unexpanded sector."""


@dataclass(frozen=True)
class ClosedTheory:
    """Local 4-fold counts, 0- or 1-pointed."""

    points: int

    def __post_init__(self):
        if self.points not in (0, 1):
            raise ValueError("points must be 0 or 1")


Theory = DiskTheory | RelativeTheory | ClosedTheory


def theory_fan(theory: Theory, g: GeometrySet) -> Fan:
    if isinstance(theory, DiskTheory):
        return g.x
    if isinstance(theory, RelativeTheory):
        return g.y
    return g.x4


def _checked_weight(g: GeometrySet, fan: Fan, wall_rays: frozenset,
                    cone_idx: int) -> LinForm:
    """Flag weight with the operational framing-genericity guard.

    Weights without u1 part do arise at unexceptional framings and are
    handled by order counting during restriction, but only in the shapes
    pure s, pure t, or s + t.  Any other u1-free shape signals that the
    framing landed in the exceptional set; genuine poles that slip past
    this shape check still surface as PoleAtRestriction.
    """
    w = fanmod.flag_weight(fan, wall_rays, cone_idx, g.f)
    if w.a != 0 or w.is_zero():
        return w
    if not (w.c == 0 or w.b == 0 or w.b == w.c):
        cone = fan.max_cones[cone_idx]
        raise NonGenericFraming(f"weight {w} at flag {sorted(wall_rays)} in cone "
                                f"{sorted(cone)} has no u1 part; framing {g.f} is "
                                "not generic for this fan")
    return w


@dataclass(frozen=True)
class Summand:
    """One line-bundle summand along an invariant line.

    weight_a and weight_b are the fiber weights over the two fixed
    points; degree is the line bundle degree, so weight_b = weight_a -
    degree * tangent_a.
    """

    weight_a: LinForm
    weight_b: LinForm
    degree: int


@dataclass(frozen=True)
class EdgeBundleData:
    wall: tuple[int, ...]
    cones: tuple[int, int]
    tangent_a: LinForm
    summands: tuple[Summand, ...]


def _degree_of(diff: LinForm, w: LinForm) -> int:
    for d, c in ((diff.a, w.a), (diff.b, w.b), (diff.c, w.c)):
        if c != 0:
            if d % c:
                raise NonIntegerDegree(f"{diff} is not an integer multiple of {w}")
            k = d // c
            break
    else:
        raise NonIntegerDegree("zero tangent weight")
    if diff != w.scaled(k):
        raise NonIntegerDegree(f"{diff} is not an integer multiple of {w}")
    return k


@lru_cache(maxsize=None)
def edge_bundle(theory: Theory, g: GeometrySet, wall_rays: frozenset) -> EdgeBundleData:
    """Summand weights and degrees of the relevant bundle along a wall.

    The bundle is the tangent bundle of the theory's fan, except that the
    relative theory twists the tangent-to-the-line summand on the brane
    wall: degree drops from 2 to 1 and the weight at the divisor end
    becomes zero.
    """
    fan = theory_fan(theory, g)
    wall = fanmod.wall_by_rays(fan, wall_rays)
    if not wall.compact:
        raise NonIntegerDegree(f"wall {sorted(wall_rays)} is not compact")
    ca, cb = wall.cones
    tangent_a = _checked_weight(g, fan, wall_rays, ca)
    tangent_b = _checked_weight(g, fan, wall_rays, cb)
    if isinstance(theory, RelativeTheory) and wall_rays == g.tau0:
        # Log twist: (w, -w, 2) becomes (w, 0, 1) with the zero at the
        # divisor fixed point.
        assert (ca, cb) == (g.sigma0, g.sigma0_hat)
        summands = [Summand(tangent_a, LinForm(0, 0, 0), 1)]
    else:
        summands = [Summand(tangent_a, tangent_b,
                            _degree_of(tangent_a - tangent_b, tangent_a))]
    for ray in sorted(wall_rays):
        ua = _checked_weight(g, fan, fan.max_cones[ca] - {ray}, ca)
        ub = _checked_weight(g, fan, fan.max_cones[cb] - {ray}, cb)
        summands.append(Summand(ua, ub, _degree_of(ua - ub, tangent_a)))
    return EdgeBundleData(tuple(sorted(wall_rays)), (ca, cb), tangent_a,
                          tuple(summands))


@lru_cache(maxsize=None)
def edge_factor(theory: Theory, g: GeometrySet, wall_rays: frozenset,
                d: int) -> FactoredRat:
    """Moving-part Euler class ratio for the degree-d cover of a wall line.

    Per summand with weight u over the first fixed point and pullback
    degree m = d * a: sections contribute denominators u - (j/d) w for
    j = 0..m, obstructions contribute numerators u + (j/d) w for
    j = 1..-m-1, and identically-zero weights are dropped as fixed part.
    """
    if d < 1:
        raise ValueError("cover degree must be positive")
    bundle = edge_bundle(theory, g, wall_rays)
    w = bundle.tangent_a
    coeff = Fraction(1)
    factors = []
    for summand in bundle.summands:
        m = d * summand.degree
        if m >= 0:
            for j in range(m + 1):
                form = summand.weight_a.scaled(d) - w.scaled(j)
                if form.is_zero():
                    continue
                coeff *= d
                factors.append((form.as_poly(), -1))
        else:
            for j in range(1, -m):
                form = summand.weight_a.scaled(d) + w.scaled(j)
                if form.is_zero():
                    continue
                coeff /= d
                factors.append((form.as_poly(), 1))
    return factored(coeff, factors)


@lru_cache(maxsize=None)
def vertex_weight(theory: Theory, g: GeometrySet, cone_idx: int) -> FactoredRat:
    """Equivariant Euler class of the tangent space at a fixed point."""
    fan = theory_fan(theory, g)
    cone = fan.max_cones[cone_idx]
    factors = [(_checked_weight(g, fan, cone - {ray}, cone_idx).as_poly(), 1)
               for ray in sorted(cone)]
    return factored(1, factors)


def _power(fr: FactoredRat, e: int) -> FactoredRat:
    if e == 0:
        return factored(1)
    return FactoredRat(fr.coeff**e, tuple((p, x * e) for p, x in fr.factors))


def divisor_insertion(g: GeometrySet, cone_idx: int | None = None) -> LinForm:
    """Equivariant restriction of the added divisor's class at a fixed point.

    Zero away from the divisor; at its unique fixed point it is the weight
    of the divisor's normal direction.
    """
    if cone_idx is None:
        cone_idx = g.sigma0_hat
    cone = g.x4.max_cones[cone_idx]
    if g.divisor_ray not in cone:
        return LinForm(0, 0, 0)
    return _checked_weight(g, g.x4, cone - {g.divisor_ray}, cone_idx)


def _disk_prefactor(f: int, d: int) -> FactoredRat:
    sign = -1 if (f * d) % 2 else 1
    prod = 1
    for k in range(1, d):
        prod *= f * d + k
    return factored(Fraction(sign * prod, factorial(d)), [(U1_FORM.as_poly(), -1)])


def contribution(theory: Theory, g: GeometrySet, graph: DecoratedGraph,
                 aut: int) -> FactoredRat:
    """Exact contribution of one decorated graph, theory prefactor included."""
    fan = theory_fan(theory, g)
    fr = factored(Fraction(1, aut))
    for _, _, wall, deg in graph.edges:
        fr = fr * edge_factor(theory, g, frozenset(wall), deg) * Fraction(1, deg)

    if isinstance(theory, DiskTheory):
        if theory.framing != g.f:
            raise ValueError("theory framing differs from geometry framing")
        if graph.marking is None or graph.labels[graph.marking] != g.sigma0:
            raise ValueError("disk graphs must be marked at the brane cone")
        fr = fr * _disk_prefactor(theory.framing, theory.winding)
        for v in range(graph.nvertices):
            slots = [( _checked_weight(g, fan, frozenset(wall), graph.labels[v]), deg)
                     for _, wall, deg in graph.vertex_edges(v)]
            n_v = 1 if v == graph.marking else 0
            if n_v:
                slots.append((U1_FORM, theory.winding))
            fr = fr * _power(vertex_weight(theory, g, graph.labels[v]),
                             graph.valence(v) - 1 + n_v)
            fr = fr * vertex_integral(slots)
        return fr

    if isinstance(theory, RelativeTheory):
        tau0_edges = [e for e in graph.edges if frozenset(e[2]) == g.tau0]
        if len(tau0_edges) != 1:
            raise ValueError("relative graphs carry exactly one brane-wall edge")
        divisor_vertices = [v for v in range(graph.nvertices)
                            if graph.labels[v] == g.sigma0_hat]
        assert len(divisor_vertices) == 1 and graph.valence(divisor_vertices[0]) == 1
        fr = fr * factored(1, [(S_FORM.as_poly(), 1)])
        for v in range(graph.nvertices):
            if v == divisor_vertices[0]:
                continue  # the divisor vertex contributes 1
            slots = [(_checked_weight(g, fan, frozenset(wall), graph.labels[v]), deg)
                     for _, wall, deg in graph.vertex_edges(v)]
            fr = fr * _power(vertex_weight(theory, g, graph.labels[v]),
                             graph.valence(v) - 1)
            fr = fr * vertex_integral(slots)
        return fr

    fr = fr * factored(1, [(S_FORM.as_poly(), 1)])
    if theory.points == 1:
        if graph.marking is None or graph.labels[graph.marking] != g.sigma0_hat:
            raise ValueError("1-pointed closed graphs must be marked over the divisor")
    for v in range(graph.nvertices):
        slots: list = [(_checked_weight(g, fan, frozenset(wall), graph.labels[v]), deg)
                       for _, wall, deg in graph.vertex_edges(v)]
        fr = fr * _power(vertex_weight(theory, g, graph.labels[v]),
                         graph.valence(v) - 1)
        if theory.points == 1 and v == graph.marking:
            slots.append(None)
            fr = fr * factored(1, [(divisor_insertion(g).as_poly(), 1)])
        fr = fr * vertex_integral(slots)
    return fr
