"""Brane normalization and construction of the relative 3-fold and local 4-fold.

Starting from a smooth toric Calabi-Yau 3-fold fan with a framed outer
brane flag, this module:

* permutes and changes lattice coordinates so the brane cone occupies the
  standard position (rays 0, 1, 2 at (1,0,1), (0,1,1), (0,0,1) with the
  brane wall on rays {1, 2}),
* appends the divisor ray (-1, -f, 0) and its cone to form the partial
  compactification, and lifts everything to the Calabi-Yau 4-fold fan by
  adding the rays (-1, -f, 1, 1) and (0, 0, 1, 1),
* identifies curve classes across the three fans.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import fan as fanmod
from . import lattice
from .errors import BraneNotOuter, FanSpecError, NotAFlag, NotEffective
from .fan import Fan, make_fan


@dataclass(frozen=True)
class BraneData:
    """Brane flag: a non-compact wall, its unique cone, and a framing."""

    tau0: frozenset[int]
    sigma0: int
    framing: int


@dataclass(frozen=True)
class NormalizeRecord:
    """Ray permutation (new index -> old index) and GL(3,Z) change applied."""

    perm: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class GeometrySet:
    """The three fans with their distinguished cones and rays.

    All fans are in normalized coordinates.  Cone lists are aligned: the
    4-fold cone at index i is the lift of the 3-fold cone at index i, and
    the divisor cone sits at index sigma0_hat in both.
    """

    x: Fan
    y: Fan
    x4: Fan
    f: int
    sigma0: int
    sigma0_hat: int
    tau0: frozenset[int]
    divisor_ray: int
    fiber_ray: int
    record: NormalizeRecord


def parse_spec(doc: dict) -> tuple[Fan, BraneData]:
    """Validate a FanSpec document and return the raw fan plus brane data."""
    if not isinstance(doc, dict):
        raise FanSpecError("spec must be a JSON object")
    for key in ("rays", "max_cones", "brane", "framing"):
        if key not in doc:
            raise FanSpecError(f"missing field {key!r}")
    rays = doc["rays"]
    cones = doc["max_cones"]
    if not isinstance(rays, list) or not all(
            isinstance(r, list) and all(isinstance(v, int) for v in r) for r in rays):
        raise FanSpecError("rays must be a list of integer vectors")
    if not isinstance(cones, list) or not all(
            isinstance(c, list) and all(isinstance(v, int) for v in c) for c in cones):
        raise FanSpecError("max_cones must be a list of integer index lists")
    brane = doc["brane"]
    if not isinstance(brane, dict) or set(brane) != {"edge_rays", "cone"}:
        raise FanSpecError("brane must have fields edge_rays and cone")
    edge = brane["edge_rays"]
    cone = brane["cone"]
    if (not isinstance(edge, list) or len(edge) != 2
            or not all(isinstance(v, int) for v in edge)):
        raise FanSpecError("brane.edge_rays must be a pair of ray indices")
    if not isinstance(cone, int) or not 0 <= cone < len(cones):
        raise FanSpecError("brane.cone out of range")
    if not isinstance(doc["framing"], int):
        raise FanSpecError("framing must be an integer")
    if not set(edge) <= set(cones[cone]):
        raise FanSpecError("brane.edge_rays not contained in brane.cone")
    raw = make_fan(3, rays, cones)
    return raw, BraneData(frozenset(edge), cone, doc["framing"])


def normalize(x: Fan, brane: BraneData) -> tuple[Fan, NormalizeRecord]:
    """Move the brane flag into the standard frame.

    Raises BraneNotOuter when the wall is compact or when any ray lands at
    negative first coordinate (the outer-brane assumption fails), and
    NoPositiveFunctional when the compact wall classes of the input admit
    no positivity certificate.
    """
    if len(brane.tau0) != 2 or not 0 <= brane.sigma0 < len(x.max_cones):
        raise NotAFlag("brane flag indices out of range")
    cone = x.max_cones[brane.sigma0]
    if not brane.tau0 < cone:
        raise NotAFlag("brane wall is not a facet of the brane cone")
    fanmod.require_calabi_yau(x)
    wall = fanmod.wall_by_rays(x, brane.tau0)
    if wall.compact:
        raise BraneNotOuter("brane wall is compact")
    if wall.cones != (brane.sigma0,):
        raise NotAFlag("named cone is not the cone containing the brane wall")
    fanmod.kahler_certificate(x)  # operational semi-projectivity check

    (apex,) = cone - brane.tau0
    wa, wb = sorted(brane.tau0)
    # Counterclockwise order in the height-1 plane is the sign of the
    # 3x3 determinant of the three cone rays.
    if lattice.det([x.rays[apex], x.rays[wa], x.rays[wb]]) < 0:
        wa, wb = wb, wa
    perm = [apex, wa, wb] + [i for i in range(x.nrays) if i not in (apex, wa, wb)]
    std = ((1, 0, 1), (0, 1, 1), (0, 0, 1))
    basis_cols = [[x.rays[p][k] for p in (apex, wa, wb)] for k in range(3)]
    std_cols = [[std[j][k] for j in range(3)] for k in range(3)]
    binv = lattice.inverse_unimodular(basis_cols)
    matrix = tuple(tuple(sum(std_cols[i][k] * binv[k][j] for k in range(3))
                         for j in range(3)) for i in range(3))
    old_to_new = {old: new for new, old in enumerate(perm)}
    new_rays = [lattice.matvec(matrix, x.rays[old]) for old in perm]
    new_cones = [frozenset(old_to_new[i] for i in c) for c in x.max_cones]
    if any(r[2] != 1 for r in new_rays):
        raise BraneNotOuter("rays do not lie at height one after normalization")
    if any(r[0] < 0 for r in new_rays):
        raise BraneNotOuter("a ray has negative first coordinate; brane is not outer "
                            "in a semi-projective partial compactification")
    normalized = make_fan(3, new_rays, new_cones)
    return normalized, NormalizeRecord(tuple(perm), matrix)


def build_geometry(x: Fan, brane_cone: int, f: int,
                   record: NormalizeRecord | None = None) -> GeometrySet:
    """Assemble the geometry triple from a normalized 3-fold fan."""
    r = x.nrays
    tau0 = frozenset({1, 2})
    y_rays = x.rays + ((-1, -f, 0),)
    y_cones = x.max_cones + (frozenset({1, 2, r}),)
    y = make_fan(3, y_rays, y_cones)
    x4_rays = tuple(ray + (0,) for ray in x.rays) + ((-1, -f, 1, 1), (0, 0, 1, 1))
    x4_cones = tuple(c | {r + 1} for c in y.max_cones)
    x4 = make_fan(4, x4_rays, x4_cones)
    fanmod.require_calabi_yau(x4)
    g = GeometrySet(x=x, y=y, x4=x4, f=f, sigma0=brane_cone,
                    sigma0_hat=len(x.max_cones), tau0=tau0,
                    divisor_ray=r, fiber_ray=r + 1,
                    record=record or NormalizeRecord(tuple(range(r)),
                                                     ((1, 0, 0), (0, 1, 0), (0, 0, 1))))
    wall = fanmod.wall_by_rays(y, tau0)
    assert wall.compact and set(wall.cones) == {g.sigma0, g.sigma0_hat}
    return g


def make_geometry(doc: dict) -> GeometrySet:
    """FanSpec document to GeometrySet in one step."""
    raw, brane = parse_spec(doc)
    normalized, record = normalize(raw, brane)
    return build_geometry(normalized, brane.sigma0, brane.framing, record)


def iota_wall(g: GeometrySet, wall_rays: frozenset) -> frozenset:
    """Compact walls of the 3-fold lift by appending the fiber ray."""
    return wall_rays | {g.fiber_ray}


@lru_cache(maxsize=None)
def tau0_class_y(g: GeometrySet) -> tuple[int, ...]:
    return fanmod.wall_relation(g.y, g.tau0)


def class_X_to_Y(g: GeometrySet, beta_prime, d: int) -> tuple[int, ...]:
    """Pad an X class and add d times the compactified line's class."""
    if d <= 0:
        raise ValueError("winding must be positive")
    base = tuple(beta_prime) + (0,)
    tau = tau0_class_y(g)
    return tuple(b + d * t for b, t in zip(base, tau))


def class_Y_to_X4(g: GeometrySet, beta_hat) -> tuple[int, ...]:
    """Unique kernel lift of an effective class of the relative 3-fold."""
    beta_hat = tuple(beta_hat)
    if not fanmod.effective(g.y, beta_hat):
        raise NotEffective(f"{beta_hat} is not a nonnegative wall combination")
    lifted = beta_hat + (-beta_hat[g.divisor_ray],)
    assert fanmod.in_kernel(g.x4, lifted)
    return lifted


@lru_cache(maxsize=None)
def charge_vectors(g: GeometrySet) -> dict[str, tuple[tuple[int, ...], ...]]:
    """Charge vector tables for the three fans, for reporting.

    The X rows form the canonical kernel basis; the Y and 4-fold tables
    extend them by zero padding plus the compactified line's class, which
    is how the enlarged kernels split.
    """
    mat = [[g.x.rays[i][k] for i in range(g.x.nrays)] for k in range(3)]
    base = lattice.kernel_basis(mat)
    y_rows = tuple(v + (0,) for v in base) + (tau0_class_y(g),)
    x4_rows = tuple(v + (0, 0) for v in base) + (class_Y_to_X4(g, tau0_class_y(g)),)
    return {"x": tuple(base), "y": y_rows, "x4": x4_rows}
