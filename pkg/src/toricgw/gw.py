"""Public invariant API and correspondence verifier.

The three theories share only the fan and weight primitives; each
invariant is a separate sum over its own graph set, so the verifier's
identities are genuine cross-checks of independent pipelines.  All values
are exact rationals and all equalities are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import build, fan as fanmod, graphs, loc
from .build import GeometrySet
from .errors import NotEffective, NotTangent
from .symrat import restrict_sum


@dataclass(frozen=True)
class InvariantReport:
    beta_prime: tuple[int, ...]
    d: int
    disk: Fraction
    relative: Fraction
    closed0: Fraction
    closed1: Fraction
    checks: dict[str, bool]

    @property
    def all_pass(self) -> bool:
        return all(self.checks.values())


def _require_effective(fan, coords, what: str):
    if not fanmod.in_kernel(fan, coords):
        raise NotEffective(f"{what} {tuple(coords)} is not a curve class of the fan")
    if not fanmod.effective(fan, coords):
        raise NotEffective(f"{what} {tuple(coords)} is not effective")


def disk_invariant(g: GeometrySet, beta_prime, d: int) -> Fraction:
    """Winding-d disk count in class beta_prime + d times the disk."""
    beta_prime = tuple(beta_prime)
    if d < 1:
        raise ValueError("winding must be positive")
    _require_effective(g.x, beta_prime, "beta_prime")
    theory = loc.DiskTheory(g.f, d)
    return restrict_sum(
        loc.contribution(theory, g, graph, aut)
        for graph, aut in graphs.enumerate_graphs(g.x, beta_prime, marking_cone=g.sigma0))


def relative_invariant(g: GeometrySet, beta_hat) -> Fraction:
    """Maximally-tangent relative count in an effective class of the 3-fold."""
    beta_hat = tuple(beta_hat)
    d = fanmod.pair_with_divisor(beta_hat, g.divisor_ray)
    if d <= 0:
        raise NotTangent(f"class pairs to {d} with the divisor, need > 0")
    _require_effective(g.y, beta_hat, "beta_hat")
    theory = loc.RelativeTheory()
    # Graphs with several brane-wall edges index expanded-target
    # components; their restricted contribution vanishes, so the
    # unexpanded sector is the whole sum.
    return restrict_sum(
        loc.contribution(theory, g, graph, aut)
        for graph, aut in graphs.enumerate_graphs(g.y, beta_hat)
        if sum(1 for e in graph.edges if frozenset(e[2]) == g.tau0) == 1)


def closed_invariant(g: GeometrySet, beta_tilde, points: int) -> Fraction:
    """Genus-zero closed count of the local 4-fold, 0- or 1-pointed."""
    beta_tilde = tuple(beta_tilde)
    if points not in (0, 1):
        raise ValueError("points must be 0 or 1")
    if not any(beta_tilde):
        raise NotEffective("closed invariants need a nonzero class")
    _require_effective(g.x4, beta_tilde, "beta_tilde")
    theory = loc.ClosedTheory(points)
    marking = g.sigma0_hat if points == 1 else None
    return restrict_sum(
        loc.contribution(theory, g, graph, aut)
        for graph, aut in graphs.enumerate_graphs(g.x4, beta_tilde, marking_cone=marking))


def verify(g: GeometrySet, beta_prime, d: int) -> InvariantReport:
    """Compute all four invariants independently and check the identities."""
    beta_prime = tuple(beta_prime)
    beta_hat = build.class_X_to_Y(g, beta_prime, d)
    beta_tilde = build.class_Y_to_X4(g, beta_hat)
    n_disk = disk_invariant(g, beta_prime, d)
    n_rel = relative_invariant(g, beta_hat)
    n_cl0 = closed_invariant(g, beta_tilde, 0)
    n_cl1 = closed_invariant(g, beta_tilde, 1)
    sign = 1 if d % 2 else -1
    checks = {
        "open_relative": n_disk == sign * n_rel,
        "relative_local": n_rel == sign * d * n_cl0 and n_rel == sign * n_cl1,
        "divisor_relation": n_cl1 == d * n_cl0,
        "open_closed": n_disk == d * n_cl0 and n_disk == n_cl1,
    }
    return InvariantReport(beta_prime, d, n_disk, n_rel, n_cl0, n_cl1, checks)
