"""Finite coarse spaces and their partial-translation monoids.

A space is a point count plus a symmetric reflexive generator relation.
The largest entourage it generates is, at finite scale, the connectivity
equivalence relation of the generator graph; the partial translations are
the partial bijections whose graphs sit inside that closure.  Their germ
groupoid is checked against the equivalence-relation groupoid of the
closure, which is the finite-scale form of the coarse groupoid.  With
finitely many points, uniform local finiteness holds for free and the
character space of the idempotents is the point set itself.
"""

import numpy as np

from germkit.inverse_core import (
    DEFAULT_ELEMENT_CAP,
    FiniteInverseMonoid,
    InputError,
    SizeCapError,
    StructureError,
    all_partial_bijections,
)
from germkit.germ import (
    build_germ_groupoid,
    equivalence_relation_groupoid,
    groupoid_isomorphic,
)
from germkit.reports import VerificationReport
from germkit.stone import BooleanAlgebraView


class CoarseSpace:
    """Points 0..n-1 with a symmetric reflexive generator relation."""

    def __init__(self, n_points, edges=()):
        if n_points < 1:
            raise ValueError("need at least one point")
        self.n_points = int(n_points)
        relation = {(p, p) for p in range(self.n_points)}
        for i, j in edges:
            i, j = int(i), int(j)
            if not (0 <= i < self.n_points and 0 <= j < self.n_points):
                raise ValueError(f"edge ({i}, {j}) out of range")
            relation.add((i, j))
            relation.add((j, i))
        self.relation = frozenset(relation)

    @classmethod
    def from_metric(cls, dist, radius):
        dist = np.asarray(dist, dtype=float)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise ValueError("distance table must be square")
        if not np.allclose(dist, dist.T):
            raise ValueError("distance table must be symmetric")
        n = dist.shape[0]
        edges = [
            (i, j) for i in range(n) for j in range(n) if dist[i, j] <= radius
        ]
        return cls(n, edges)

    def components(self):
        """Connected components of the generator graph, each sorted."""
        seen = set()
        out = []
        adj = {p: set() for p in range(self.n_points)}
        for i, j in self.relation:
            adj[i].add(j)
        for start in range(self.n_points):
            if start in seen:
                continue
            block = []
            stack = [start]
            while stack:
                p = stack.pop()
                if p in seen:
                    continue
                seen.add(p)
                block.append(p)
                stack.extend(q for q in adj[p] if q not in seen)
            out.append(sorted(block))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, CoarseSpace)
            and self.n_points == other.n_points
            and self.relation == other.relation
        )

    def __hash__(self):
        return hash((self.n_points, self.relation))

    def __repr__(self):
        proper = sorted((i, j) for i, j in self.relation if i < j)
        return f"CoarseSpace({self.n_points}, {proper})"


def closure_entourage(space):
    """Largest entourage generated by the relation: the connectivity closure.

    Composing the generator with itself only merges walks inside connected
    components, so the union of all iterated compositions is exactly
    same-component membership.
    """
    out = set()
    for block in space.components():
        out.update((i, j) for i in block for j in block)
    return frozenset(out)


def partial_translations(space, element_cap=DEFAULT_ELEMENT_CAP):
    """All partial bijections whose graph lies in the closure entourage.

    Packaged as a validated monoid with the concrete maps attached; closed
    under composition and inverse because the closure is an equivalence
    relation, and contains the empty map and the full identity.
    """
    if element_cap is not None and (1 << space.n_points) > element_cap:
        raise SizeCapError(
            f"{space.n_points} points gives at least {1 << space.n_points}"
            f" translations, over the element cap of {element_cap}"
        )
    closure = closure_entourage(space)
    elements = [
        f for f in all_partial_bijections(space.n_points)
        if all(pair in closure for pair in f.pairs)
    ]
    if element_cap is not None and len(elements) > element_cap:
        raise SizeCapError(
            f"{len(elements)} translations exceeds the element cap"
            f" of {element_cap}"
        )
    index = {f.pairs: i for i, f in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    for i, f in enumerate(elements):
        for j, g in enumerate(elements):
            table[i, j] = index[f.compose(g).pairs]
    return FiniteInverseMonoid.from_table(
        [f.name() for f in elements],
        table,
        zero=index[()],
        one=index[tuple((p, p) for p in range(space.n_points))],
        concrete=elements,
        element_cap=element_cap,
    )


def coarse_groupoid(space, element_cap=DEFAULT_ELEMENT_CAP):
    """Germ groupoid of the translations, checked against the closure.

    Builds G of partial_translations(space) and requires it isomorphic to
    the equivalence-relation groupoid whose arrows are the closure pairs.
    """
    monoid = partial_translations(space, element_cap=element_cap)
    G = build_germ_groupoid(monoid)
    model = equivalence_relation_groupoid(
        space.n_points, closure_entourage(space)
    )
    if not groupoid_isomorphic(G, model):
        raise StructureError(
            "germ groupoid of the translations does not match the"
            " equivalence-relation groupoid of the closure"
        )
    return G


def verify_translation_idempotents(space, element_cap=DEFAULT_ELEMENT_CAP):
    """Report: idempotents are the identity restrictions, characters the points."""
    rep = VerificationReport("partial translation idempotent structure")
    monoid = partial_translations(space, element_cap=element_cap)
    n_pts = space.n_points

    sub_identities = {
        tuple((p, p) for p in sorted(block))
        for block in _all_subsets(range(n_pts))
    }
    idem_graphs = {monoid.concrete[p].pairs for p in monoid.idempotents}
    rep.add(
        "idempotents are exactly the identity restrictions",
        idem_graphs == sub_identities,
        f"{len(idem_graphs)} idempotents",
    )
    rep.add(
        "idempotent count is 2^points",
        len(monoid.idempotents) == (1 << n_pts),
        f"{len(monoid.idempotents)} == 2^{n_pts}",
    )
    algebra = BooleanAlgebraView(monoid)
    rep.add(
        "character count equals point count",
        len(algebra.characters()) == n_pts,
        f"{len(algebra.atoms)} characters, {n_pts} points",
    )
    return rep


def _all_subsets(points):
    points = list(points)
    for mask in range(1 << len(points)):
        yield [p for k, p in enumerate(points) if (mask >> k) & 1]


def load_coarse_space(data):
    """Coarse space from a mapping: either edges or a metric with radius."""
    if not isinstance(data, dict):
        raise InputError("coarse space document must be a JSON object")
    if "points" not in data or not isinstance(data["points"], int):
        raise InputError("missing integer key: points")
    n = data["points"]
    if n < 1:
        raise InputError("points must be positive")
    if "dist" in data or "radius" in data:
        if "dist" not in data or "radius" not in data:
            raise InputError("metric form needs both dist and radius")
        dist = data["dist"]
        if (
            not isinstance(dist, list)
            or len(dist) != n
            or not all(
                isinstance(row, list)
                and len(row) == n
                and all(isinstance(x, (int, float)) for x in row)
                for row in dist
            )
        ):
            raise InputError("dist must be an n x n number table")
        if not isinstance(data["radius"], (int, float)):
            raise InputError("radius must be a number")
        try:
            return CoarseSpace.from_metric(dist, data["radius"])
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    edges = data.get("edges", [])
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2
        and all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        for e in edges
    ):
        raise InputError("edges must be a list of [i, j] pairs")
    try:
        return CoarseSpace(n, edges)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
