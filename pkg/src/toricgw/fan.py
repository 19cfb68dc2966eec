"""Smooth toric fans in dimension 3 and 4.

A fan validates itself on construction: primitive distinct rays, smooth
simplicial maximal cones, and pairwise intersection in common faces (the
latter via an exact separating-functional feasibility check).  Derived
data (walls, dual bases, torus weights, wall relations, certificates) is
computed lazily and cached per fan.

Torus weights are expressed directly in the coordinates (u1, s, t) where
s = u2 - f*u1 and t = u4, with the Calabi-Yau direction u3 dropped, so
the downstream restriction stages are plain order extractions.  This
presumes fans are in the normalized frame produced by the build module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

from . import lattice, ratlp
from .errors import (InvalidFan, NoPositiveFunctional, NotAFlag, NotCalabiYau,
                     NotSmooth)
from .symrat import LinForm


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.dim not in (3, 4):
            raise InvalidFan(f"unsupported dimension {self.dim}")
        for ray in self.rays:
            if len(ray) != self.dim:
                raise InvalidFan(f"ray {ray} has wrong length")
            if gcd(*[abs(v) for v in ray]) != 1:
                raise InvalidFan(f"ray {ray} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise InvalidFan("duplicate rays")
        for cone in self.max_cones:
            if len(cone) != self.dim:
                raise NotSmooth(f"maximal cone {sorted(cone)} is not full-dimensional simplicial")
            if not all(0 <= i < len(self.rays) for i in cone):
                raise InvalidFan(f"cone {sorted(cone)} has out-of-range ray indices")
            mat = [[self.rays[i][k] for i in sorted(cone)] for k in range(self.dim)]
            if abs(lattice.det(mat)) != 1:
                raise NotSmooth(f"cone {sorted(cone)} is not smooth")
        if len(set(self.max_cones)) != len(self.max_cones):
            raise InvalidFan("duplicate maximal cones")
        _check_common_faces(self.rays, self.max_cones, self.dim)

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def cone_rays(self, cone_idx: int) -> tuple[int, ...]:
        return tuple(sorted(self.max_cones[cone_idx]))


def make_fan(dim: int, rays, max_cones) -> Fan:
    return Fan(dim, tuple(tuple(r) for r in rays),
               tuple(frozenset(c) for c in max_cones))


def _check_common_faces(rays, cones, dim):
    # Two cones meet in the cone on their shared rays iff a functional
    # vanishes on the shared rays and strictly separates the rest.
    for ca, cb in combinations(cones, 2):
        shared = ca & cb
        eqs = [([Fraction(v) for v in rays[i]], 0) for i in shared]
        ges = [([Fraction(v) for v in rays[i]], 1) for i in ca - shared]
        ges += [([-Fraction(v) for v in rays[i]], 1) for i in cb - shared]
        if ratlp.feasible_point(dim, eqs, ges) is None:
            raise InvalidFan(
                f"cones {sorted(ca)} and {sorted(cb)} do not meet in a common face")


@dataclass(frozen=True)
class Wall:
    """A (dim-1)-cone, recorded with the maximal cones containing it."""

    rays: frozenset[int]
    cones: tuple[int, ...]

    @property
    def compact(self) -> bool:
        return len(self.cones) == 2


@lru_cache(maxsize=None)
def walls(fan: Fan) -> tuple[Wall, ...]:
    """All facets of maximal cones, in canonical order."""
    seen: dict[frozenset[int], list[int]] = {}
    for idx, cone in enumerate(fan.max_cones):
        for facet in combinations(sorted(cone), fan.dim - 1):
            seen.setdefault(frozenset(facet), []).append(idx)
    return tuple(Wall(rays, tuple(sorted(cone_ids)))
                 for rays, cone_ids in sorted(seen.items(), key=lambda kv: tuple(sorted(kv[0]))))


@lru_cache(maxsize=None)
def compact_walls(fan: Fan) -> tuple[Wall, ...]:
    return tuple(w for w in walls(fan) if w.compact)


@lru_cache(maxsize=None)
def wall_by_rays(fan: Fan, rays: frozenset) -> Wall:
    for w in walls(fan):
        if w.rays == rays:
            return w
    raise NotAFlag(f"{sorted(rays)} is not a wall of the fan")


@lru_cache(maxsize=None)
def cy_covector(fan: Fan) -> tuple[int, ...] | None:
    """Integer covector pairing to 1 with every ray, when one exists."""
    return lattice.solve_in_lattice(fan.rays, [1] * fan.nrays)


def require_calabi_yau(fan: Fan) -> tuple[int, ...]:
    u3 = cy_covector(fan)
    if u3 is None:
        raise NotCalabiYau("no covector pairs to 1 with every ray")
    return u3


@lru_cache(maxsize=None)
def dual_basis(fan: Fan, cone_idx: int) -> dict[int, tuple[int, ...]]:
    """Covectors dual to the ray generators of a smooth maximal cone."""
    order = fan.cone_rays(cone_idx)
    cols = [[fan.rays[i][k] for i in order] for k in range(fan.dim)]
    inv = lattice.inverse_unimodular(cols)
    return {ray: tuple(inv[pos]) for pos, ray in enumerate(order)}


def _to_linform(covector, f: int) -> LinForm:
    # Drop the u3 slot (Calabi-Yau subtorus) and rewrite u2 = f*u1 + s, u4 = t.
    a1, a2 = covector[0], covector[1]
    a4 = covector[3] if len(covector) == 4 else 0
    return LinForm(a1 + f * a2, a2, a4)


@lru_cache(maxsize=None)
def flag_weight(fan: Fan, wall_rays: frozenset, cone_idx: int, f: int) -> LinForm:
    """Tangent weight of the invariant line of the wall at the cone's fixed point."""
    cone = fan.max_cones[cone_idx]
    if not (wall_rays < cone and len(wall_rays) == fan.dim - 1):
        raise NotAFlag(f"{sorted(wall_rays)} is not a facet of cone {sorted(cone)}")
    (omitted,) = cone - wall_rays
    return _to_linform(dual_basis(fan, cone_idx)[omitted], f)


def ray_weight(fan: Fan, cone_idx: int, ray: int, f: int) -> LinForm:
    """Weight of the coordinate direction of one ray of a maximal cone."""
    return _to_linform(dual_basis(fan, cone_idx)[ray], f)


@lru_cache(maxsize=None)
def wall_relation(fan: Fan, wall_rays: frozenset) -> tuple[int, ...]:
    """Curve class of the invariant line of a compact wall.

    Coordinates are divisor pairings: 1 on the two off-wall rays, minus
    the coefficients of the unique relation among the adjacent cones'
    rays on the wall rays, 0 elsewhere.
    """
    wall = wall_by_rays(fan, wall_rays)
    if not wall.compact:
        raise NotAFlag(f"wall {sorted(wall_rays)} is not compact")
    sigma, sigma2 = wall.cones
    (i3,) = fan.max_cones[sigma] - wall_rays
    (i4,) = fan.max_cones[sigma2] - wall_rays
    dual = dual_basis(fan, sigma)
    coords = [0] * fan.nrays
    coords[i3] = coords[i4] = 1
    b4 = fan.rays[i4]
    # In the first cone's ray basis the opposite ray has coefficient -1
    # on the off-wall generator; anything else breaks smoothness.
    lead = sum(dual[i3][k] * b4[k] for k in range(fan.dim))
    if lead != -1:
        raise NotSmooth(f"cones across wall {sorted(wall_rays)} are incompatible")
    for i in wall_rays:
        coords[i] = -sum(dual[i][k] * b4[k] for k in range(fan.dim))
    assert not any(sum(c * fan.rays[i][k] for i, c in enumerate(coords))
                   for k in range(fan.dim))
    return tuple(coords)


def pair_with_divisor(cls, ray_index: int) -> int:
    return cls[ray_index]


def in_kernel(fan: Fan, coords) -> bool:
    if len(coords) != fan.nrays:
        return False
    return all(sum(c * fan.rays[i][k] for i, c in enumerate(coords)) == 0
               for k in range(fan.dim))


@lru_cache(maxsize=None)
def kahler_certificate(fan: Fan) -> tuple[Fraction, ...]:
    """Rational functional positive on every compact wall class.

    Returns the zero functional when there are no compact walls; raises
    NoPositiveFunctional when the wall classes admit none.
    """
    classes = [wall_relation(fan, w.rays) for w in compact_walls(fan)]
    if not classes:
        return tuple(Fraction(0) for _ in range(fan.nrays))
    point = ratlp.feasible_point(fan.nrays, ges=[(c, 1) for c in classes])
    if point is None:
        raise NoPositiveFunctional("compact wall classes admit no positive functional")
    # Rescale so the smallest wall value is exactly 1.
    low = min(sum(k * c for k, c in zip(point, cls)) for cls in classes)
    return tuple(v / low for v in point)


def kappa_degree(fan: Fan, coords) -> Fraction:
    kappa = kahler_certificate(fan)
    return sum((k * c for k, c in zip(kappa, coords)), Fraction(0))


def effective(fan: Fan, coords) -> bool:
    """Exact LP test: is the class a nonnegative wall-class combination?"""
    if not in_kernel(fan, coords):
        return False
    classes = [wall_relation(fan, w.rays) for w in compact_walls(fan)]
    if not classes:
        return not any(coords)
    n = len(classes)
    eqs = [([cls[i] for cls in classes], coords[i]) for i in range(fan.nrays)]
    ges = [([int(j == k) for j in range(n)], 0) for k in range(n)]
    return ratlp.feasible_point(n, eqs, ges) is not None
