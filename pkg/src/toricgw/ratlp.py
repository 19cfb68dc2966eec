"""Exact rational linear feasibility by Fourier-Motzkin elimination.

The systems solved here are tiny (certificates for a handful of wall
classes, face separation for pairs of cones, effectivity of a class), so
the potential constraint blowup of Fourier-Motzkin never matters, and in
exchange we get exact rational answers with a witness point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Constraint = tuple[Sequence, object]  # (coefficients, rhs)


def feasible_point(n: int,
                   eqs: Sequence[Constraint] = (),
                   ges: Sequence[Constraint] = ()) -> tuple[Fraction, ...] | None:
    """Find x in Q^n with c.x == r for eqs and c.x >= r for ges.

    Returns a witness point, or None when the system is infeasible.
    Deterministic for fixed input order.
    """
    ges = [([Fraction(c) for c in co], Fraction(r)) for co, r in ges]
    pending = [([Fraction(c) for c in co], Fraction(r)) for co, r in eqs]

    # Eliminate equalities by substitution x_k = (r - rest.x)/ck.
    subs: list[tuple[int, list[Fraction], Fraction, Fraction]] = []
    while pending:
        co, r = pending.pop(0)
        k = max((j for j in range(n) if co[j] != 0), default=None)
        if k is None:
            if r != 0:
                return None
            continue
        ck = co[k]
        rest = list(co)
        rest[k] = Fraction(0)
        subs.append((k, rest, r, ck))

        def fold(con):
            c2, r2 = con
            f = c2[k]
            if f == 0:
                return con
            new = [c2[j] - f * rest[j] / ck for j in range(n)]
            new[k] = Fraction(0)
            return new, r2 - f * r / ck

        pending = [fold(c) for c in pending]
        ges = [fold(c) for c in ges]

    # Fourier-Motzkin on the remaining variables.
    sub_vars = {k for k, _, _, _ in subs}
    records: list[tuple[int, list, list]] = []
    cons = ges
    for k in range(n - 1, -1, -1):
        if k in sub_vars:
            continue
        pos = [c for c in cons if c[0][k] > 0]
        neg = [c for c in cons if c[0][k] < 0]
        cons = [c for c in cons if c[0][k] == 0]
        for cl, rl in pos:
            for cu, ru in neg:
                f1, f2 = cl[k], cu[k]
                co = [-f2 * cl[j] + f1 * cu[j] for j in range(n)]
                cons.append((co, -f2 * rl + f1 * ru))
        records.append((k, pos, neg))
    for co, r in cons:
        if r > 0:
            return None

    # Back-substitute a witness, midpoints between surviving bounds.
    x = [Fraction(0)] * n
    for k, pos, neg in reversed(records):
        los = [(r - sum(c[j] * x[j] for j in range(n) if j != k)) / c[k] for c, r in pos]
        ups = [(r - sum(c[j] * x[j] for j in range(n) if j != k)) / c[k] for c, r in neg]
        if los and ups:
            x[k] = (max(los) + min(ups)) / 2
        elif los:
            x[k] = max(los)
        elif ups:
            x[k] = min(ups)
    for k, rest, r, ck in reversed(subs):
        x[k] = (r - sum(rest[j] * x[j] for j in range(n))) / ck
    return tuple(x)
