"""Genus-zero decorated graphs over the toric 1-skeleton.

A decorated graph is a tree whose vertices carry maximal-cone labels and
whose edges carry (compact wall, positive degree) pairs, with each edge's
endpoints labeled by the two cones adjacent to its wall and the weighted
wall classes summing to a prescribed curve class.  Enumeration is exact
and complete: a positivity certificate bounds the edge data, trees are
grown by leaf attachment with canonical-form deduplication at every
level, and automorphism orders fall out of the canonical rooted encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import fan as fanmod
from .errors import NoCertificate, NoPositiveFunctional
from .fan import Fan

# An edge item is (wall ray tuple, degree); vertex labels are cone indices.
EdgeItem = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class DecoratedGraph:
    labels: tuple[int, ...]
    edges: tuple[tuple[int, int, tuple[int, ...], int], ...]
    marking: int | None = None

    @property
    def nvertices(self) -> int:
        return len(self.labels)

    def valence(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b, _, _ in self.edges)

    def vertex_edges(self, v: int):
        """Edges at v as (other endpoint, wall rays, degree) triples."""
        out = []
        for a, b, wall, deg in self.edges:
            if a == v:
                out.append((b, wall, deg))
            elif b == v:
                out.append((a, wall, deg))
        return out


def _adjacency(g: DecoratedGraph):
    adj: list[list[tuple[int, EdgeItem]]] = [[] for _ in range(g.nvertices)]
    for a, b, wall, deg in g.edges:
        adj[a].append((b, (wall, deg)))
        adj[b].append((a, (wall, deg)))
    return adj


def _tree_centers(adj) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    degree = [len(nb) for nb in adj]
    layer = [v for v in range(n) if degree[v] == 1]
    removed = 0
    while n - removed > 2:
        removed += len(layer)
        nxt = []
        for v in layer:
            degree[v] = 0
            for w, _ in adj[v]:
                if degree[w] > 1:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    return layer


def _encode_rooted(g: DecoratedGraph, adj, root: int) -> tuple[tuple, int]:
    """Canonical encoding and automorphism order of the rooted tree."""

    def rec(v: int, parent: int) -> tuple[tuple, int]:
        children = []
        aut = 1
        for w, item in adj[v]:
            if w == parent:
                continue
            key, sub_aut = rec(w, v)
            children.append((item, key))
            aut *= sub_aut
        children.sort()
        run = 0
        for i, child in enumerate(children):
            if i and child == children[i - 1]:
                run += 1
                aut *= run + 1
            else:
                run = 0
        marked = 1 if g.marking == v else 0
        return (g.labels[v], marked, tuple(children)), aut

    return rec(root, -1)


def canonical_form(g: DecoratedGraph) -> tuple[tuple, int]:
    """Isomorphism-class key and |Aut| of a decorated graph.

    The tree is rooted at its center; for an edge center the endpoint
    with the smaller rooted encoding wins.  No automorphism can swap the
    two candidate roots since every edge joins distinctly labeled cones,
    so the rooted automorphism count is the full one.
    """
    if g.nvertices == 1:
        key = (g.labels[0], 1 if g.marking == 0 else 0, ())
        return key, 1
    adj = _adjacency(g)
    best = min(_encode_rooted(g, adj, c) for c in _tree_centers(adj))
    return best


def aut_order(g: DecoratedGraph) -> int:
    """Order of the label, degree, and marking preserving automorphism group."""
    return canonical_form(g)[1]


def validate_graph(fan: Fan, g: DecoratedGraph, target) -> None:
    """Assert every decorated-graph invariant; used by the test suite."""
    n = g.nvertices
    assert len(g.edges) == n - 1, "not a tree (edge count)"
    adj = _adjacency(g)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w, _ in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    assert len(seen) == n, "not connected"
    total = [0] * fan.nrays
    for a, b, wall, deg in g.edges:
        assert deg >= 1
        w = fanmod.wall_by_rays(fan, frozenset(wall))
        assert w.compact, "edge wall must be compact"
        assert {g.labels[a], g.labels[b]} == set(w.cones), "flag condition"
        cls = fanmod.wall_relation(fan, w.rays)
        total = [t + deg * c for t, c in zip(total, cls)]
    assert tuple(total) == tuple(target), "class condition"
    if g.marking is not None:
        assert 0 <= g.marking < n


def _partitions(n: int):
    """Partitions of n as non-increasing tuples."""
    if n == 0:
        yield ()
        return

    def rec(rest, largest):
        if rest == 0:
            yield ()
            return
        for part in range(min(rest, largest), 0, -1):
            for tail in rec(rest - part, part):
                yield (part,) + tail

    yield from rec(n, n)


def decompose_class(fan: Fan, target, kappa=None) -> list[tuple[EdgeItem, ...]]:
    """All edge multisets of compact walls summing to the target class.

    Finiteness comes from the positivity certificate: every admissible
    total degree vector lies in the box it bounds.  Multisets are sorted
    tuples of (wall, degree) items, complete and duplicate-free.
    """
    target = tuple(target)
    if kappa is None:
        try:
            kappa = fanmod.kahler_certificate(fan)
        except NoPositiveFunctional as exc:
            raise NoCertificate(str(exc)) from exc
    cws = fanmod.compact_walls(fan)
    classes = [fanmod.wall_relation(fan, w.rays) for w in cws]
    values = [sum((k * c for k, c in zip(kappa, cls)), start=0) for cls in classes]
    if any(v <= 0 for v in values):
        raise NoCertificate("certificate not positive on a compact wall class")
    if not any(target):
        return [()]
    budget = sum(k * c for k, c in zip(kappa, target))
    if budget <= 0:
        return []

    vectors: list[tuple[int, ...]] = []

    def rec(idx: int, remaining, acc: list[int]):
        if idx == len(cws):
            if all(sum(acc[w] * classes[w][i] for w in range(len(cws))) == target[i]
                   for i in range(fan.nrays)):
                vectors.append(tuple(acc))
            return
        top = int(remaining / values[idx])
        for m in range(top + 1):
            rec(idx + 1, remaining - m * values[idx], acc + [m])

    rec(0, budget, [])

    out: list[tuple[EdgeItem, ...]] = []
    for vec in vectors:
        per_wall = [list(_partitions(m)) for m in vec]

        def expand(idx: int, items: list[EdgeItem]):
            if idx == len(cws):
                out.append(tuple(sorted(items)))
                return
            wall_key = tuple(sorted(cws[idx].rays))
            for parts in per_wall[idx]:
                expand(idx + 1, items + [(wall_key, d) for d in parts])

        expand(0, [])
    return sorted(set(out))


def _grow_trees(items: tuple[EdgeItem, ...], cone_pair) -> list[DecoratedGraph]:
    """All isomorphism classes of trees using exactly the given edge items.

    Trees are grown one leaf at a time; partial shapes are deduplicated by
    canonical form at every level, which keeps the search polynomial in the
    number of distinct shapes rather than build orders.
    """
    if not items:
        return []
    first: dict[tuple, tuple[DecoratedGraph, tuple[EdgeItem, ...]]] = {}
    for i, item in enumerate(items):
        if i and item == items[i - 1]:
            continue
        ca, cb = cone_pair(item[0])
        g = DecoratedGraph((ca, cb), ((0, 1, item[0], item[1]),))
        rest = items[:i] + items[i + 1:]
        first[(canonical_form(g)[0], rest)] = (g, rest)
    level = first
    while True:
        done = all(not rest for _, rest in level.values())
        if done:
            break
        nxt: dict[tuple, tuple[DecoratedGraph, tuple[EdgeItem, ...]]] = {}
        for g, rest in level.values():
            for i, item in enumerate(rest):
                if i and item == rest[i - 1]:
                    continue
                ca, cb = cone_pair(item[0])
                new_rest = rest[:i] + rest[i + 1:]
                for v in range(g.nvertices):
                    if g.labels[v] == ca:
                        leaf_label = cb
                    elif g.labels[v] == cb:
                        leaf_label = ca
                    else:
                        continue
                    g2 = DecoratedGraph(g.labels + (leaf_label,),
                                        g.edges + ((v, g.nvertices, item[0], item[1]),))
                    nxt[(canonical_form(g2)[0], new_rest)] = (g2, new_rest)
        level = nxt
    return [g for g, _ in level.values()]


def enumerate_graphs(fan: Fan, target, marking_cone: int | None = None,
                     kappa=None) -> list[tuple[DecoratedGraph, int]]:
    """Complete list of decorated-graph isomorphism classes for a class.

    With a marking cone, graphs come 1-pointed with the marked point at a
    vertex labeled by that cone (trees without such a vertex are dropped);
    the zero class then yields the single marked-vertex graph.  Output is
    deterministic: sorted by canonical form.
    """
    target = tuple(target)
    wall_cones = {tuple(sorted(w.rays)): w.cones for w in fanmod.compact_walls(fan)}

    def cone_pair(wall_key):
        return wall_cones[wall_key]

    found: dict[tuple, DecoratedGraph] = {}
    for multiset in decompose_class(fan, target, kappa):
        if not multiset:
            if marking_cone is not None:
                g = DecoratedGraph((marking_cone,), (), marking=0)
                found[canonical_form(g)[0]] = g
            continue
        for g in _grow_trees(multiset, cone_pair):
            if marking_cone is None:
                found[canonical_form(g)[0]] = g
            else:
                for v in range(g.nvertices):
                    if g.labels[v] == marking_cone:
                        marked = DecoratedGraph(g.labels, g.edges, marking=v)
                        found[canonical_form(marked)[0]] = marked
    return [(g, aut_order(g)) for _, g in sorted(found.items(), key=lambda kv: kv[0])]
