"""Germ groupoids, character transport, bisections, and the round-trip."""

import pytest

import germkit as gk
from germkit.germ import Germ
from germkit.stone import BooleanAlgebraView, Character

from conftest import by_name, concrete_index


# ---------------------------------------------------------------------------
# character support and transport


def test_char_support_examples(i2, g2):
    alg = g2.algebra
    atoms = set(alg.atoms)
    assert gk.char_support(alg, i2.one) == atoms
    assert gk.char_support(alg, i2.zero) == frozenset()
    assert gk.char_support(alg, by_name(i2, "(0>1)")) == {by_name(i2, "(0>0)")}
    assert gk.char_support(alg, by_name(i2, "(1>0)")) == {by_name(i2, "(1>1)")}


def test_char_support_is_the_domain_open(i3, g3):
    alg = g3.algebra
    for phi in range(i3.size):
        dom = i3.compose(i3.inverse_of(phi), phi)
        assert gk.char_support(alg, phi) == alg.basic_open(dom)


def test_alpha_moves_atoms_along_the_map(i2, g2):
    alg = g2.algebra
    a0 = by_name(i2, "(0>0)")
    a1 = by_name(i2, "(1>1)")
    half = by_name(i2, "(0>1)")
    moved = gk.alpha(alg, half, Character(alg, a0))
    assert moved.atom == a1
    # the identity and any idempotent fix supported characters
    assert gk.alpha(alg, i2.one, Character(alg, a1)).atom == a1
    assert gk.alpha(alg, a0, Character(alg, a0)).atom == a0


def test_alpha_requires_support(i2, g2):
    alg = g2.algebra
    half = by_name(i2, "(0>1)")
    with pytest.raises(ValueError, match="does not accept"):
        gk.alpha(alg, half, Character(alg, by_name(i2, "(1>1)")))
    with pytest.raises(ValueError, match="does not accept"):
        gk.alpha(alg, i2.zero, Character(alg, by_name(i2, "(0>0)")))


def test_alpha_round_trips_along_inverses(i3, g3):
    alg = g3.algebra
    for phi in range(i3.size):
        inv = i3.inverse_of(phi)
        for a in gk.char_support(alg, phi):
            there = gk.alpha(alg, phi, Character(alg, a))
            back = gk.alpha(alg, inv, there)
            assert back.atom == a


def test_alpha_accepts_raw_atom_indices(i2, g2):
    alg = g2.algebra
    a0 = by_name(i2, "(0>0)")
    assert gk.alpha(alg, i2.one, a0).atom == a0


# ---------------------------------------------------------------------------
# germ equivalence


def test_germ_equivalence_examples(i3, g3):
    alg = g3.algebra
    a0 = by_name(i3, "(0>0)")
    a1 = by_name(i3, "(1>1)")
    short = by_name(i3, "(0>1)")
    long = by_name(i3, "(0>1,2>2)")
    assert gk.germ_equivalent(alg, (short, a0), (short, a0))
    assert gk.germ_equivalent(alg, (short, a0), (long, a0))
    assert gk.germ_equivalent(alg, (long, a0), (short, a0))
    # same element at different atoms is a different germ
    assert not gk.germ_equivalent(alg, (long, a0), (long, by_name(i3, "(2>2)")))
    # elements that disagree on the atom are inequivalent
    assert not gk.germ_equivalent(alg, (short, a0), (by_name(i3, "(0>2)"), a0))
    assert not gk.germ_equivalent(alg, (a0, a0), (i3.one, a1))
    with pytest.raises(ValueError, match="does not accept"):
        gk.germ_equivalent(alg, (short, a1), (short, a1))


def test_germ_equivalence_matches_product_key(i2, g2):
    alg = g2.algebra
    pairs = [
        (phi, a) for phi in range(i2.size)
        for a in gk.char_support(alg, phi)
    ]
    for pa in pairs:
        for pb in pairs:
            by_key = (
                pa[1] == pb[1]
                and i2.compose(pa[0], pa[1]) == i2.compose(pb[0], pb[1])
            )
            assert gk.germ_equivalent(alg, pa, pb) == by_key


# ---------------------------------------------------------------------------
# groupoid construction


def test_groupoid_shapes(i2, i3, g2, g3, trivial_monoid, z2_zero):
    assert (g2.n_units, g2.n_arrows) == (2, 4)
    assert (g3.n_units, g3.n_arrows) == (3, 9)
    g1 = gk.build_germ_groupoid(trivial_monoid)
    assert (g1.n_units, g1.n_arrows) == (1, 1)
    gz = gk.build_germ_groupoid(z2_zero)
    assert (gz.n_units, gz.n_arrows) == (1, 2)


def test_groupoid_unit_and_arrow_labels(i2, g2):
    assert g2.unit_labels == ("(0>0)", "(1>1)")
    assert sorted(g2.arrow_labels) == ["(0>0)", "(0>1)", "(1>0)", "(1>1)"]
    # units are the germs of atoms at themselves
    for u, a in enumerate(g2.algebra.atoms):
        assert g2.germs[g2.unit_arrow[u]] == Germ(a, a)


def test_germ_keys_are_sorted_and_indexed(g3):
    assert list(g3.germs) == sorted(g3.germs)
    assert all(g3.germs[k] == g for g, k in g3.germ_index.items())


def test_source_and_range_follow_the_products(i3, g3):
    atoms = g3.algebra.atoms
    for k, g in enumerate(g3.germs):
        assert i3.compose(i3.inverse_of(g.product), g.product) == g.atom
        assert atoms[g3.source[k]] == g.atom
        assert atoms[g3.range_[k]] == i3.compose(g.product, i3.inverse_of(g.product))


def test_groupoid_axiom_report(g3):
    rep = g3.verify()
    assert rep.ok
    assert [c.name for c in rep.checks] == [
        "source, range, inverse and unit maps well formed",
        "products defined exactly on matching source and range",
        "product source and range come from the factors",
        "unit arrows act neutrally",
        "inverses cancel to units",
        "associativity on composable triples",
    ]
    assert rep.checks[-1].note == "81 triples"


def test_verify_catches_broken_unit_arrows(g2):
    broken = gk.FiniteGroupoid(
        unit_labels=g2.unit_labels,
        arrow_labels=g2.arrow_labels,
        source=g2.source,
        range_=g2.range_,
        inverse=g2.inverse,
        unit_arrow=tuple(reversed(g2.unit_arrow)),
        compose_map=g2._compose,
    )
    rep = broken.verify()
    assert not rep.ok
    assert rep.first_failure.name == "source, range, inverse and unit maps well formed"


# ---------------------------------------------------------------------------
# germ arithmetic


def germ_of(monoid, groupoid, pairs, atom_name):
    return Germ(by_name(monoid, atom_name), concrete_index(monoid, pairs))


def test_compose_germs_example(i3, g3):
    # the arrow 0 -> 1 after the arrow 2 -> 0 is the arrow 2 -> 1
    g = Germ(by_name(i3, "(0>0)"), by_name(i3, "(0>1)"))
    h = Germ(by_name(i3, "(2>2)"), by_name(i3, "(2>0)"))
    assert gk.compose_germs(g3, g, h) == Germ(
        by_name(i3, "(2>2)"), by_name(i3, "(2>1)")
    )
    with pytest.raises(gk.CompositionError, match="not composable"):
        gk.compose_germs(g3, h, g)


def test_compose_germs_rejects_foreign_keys(i3, g3):
    with pytest.raises(ValueError, match="does not belong"):
        gk.compose_germs(g3, Germ(0, 0), g3.germs[0])


def test_units_are_neutral_for_germ_products(i3, g3):
    atoms = g3.algebra.atoms
    for g in g3.germs:
        src_unit = Germ(g.atom, g.atom)
        range_atom = i3.compose(g.product, i3.inverse_of(g.product))
        rng_unit = Germ(range_atom, range_atom)
        assert gk.compose_germs(g3, g, src_unit) == g
        assert gk.compose_germs(g3, rng_unit, g) == g
    assert set(atoms) == {g3.germs[k].atom for k in g3.unit_arrow}


def test_inverse_germ(i3, g3):
    flip = gk.inverse_germ(
        g3, Germ(by_name(i3, "(0>0)"), by_name(i3, "(0>1)"))
    )
    assert flip == Germ(by_name(i3, "(1>1)"), by_name(i3, "(1>0)"))
    for g in g3.germs:
        assert gk.inverse_germ(g3, gk.inverse_germ(g3, g)) == g
        left = gk.compose_germs(g3, gk.inverse_germ(g3, g), g)
        assert left == Germ(g.atom, g.atom)
    with pytest.raises(ValueError, match="does not belong"):
        gk.inverse_germ(g3, Germ(0, 0))


# ---------------------------------------------------------------------------
# bisections


def test_basic_bisection_examples(i2, g2):
    swap = by_name(i2, "(0>1,1>0)")
    cross = gk.basic_bisection(g2, swap)
    labels = {g2.arrow_labels[k] for k in cross}
    assert labels == {"(0>1)", "(1>0)"}
    assert gk.basic_bisection(g2, i2.one) == gk.unit_bisection(g2)
    assert gk.basic_bisection(g2, i2.zero) == frozenset()
    assert all(gk.is_bisection(g2, gk.basic_bisection(g2, phi))
               for phi in range(i2.size))


def test_is_bisection_rejects_fiber_collisions(i2, g2):
    a0 = by_name(i2, "(0>0)")
    same_source = {
        g2.germ_index[Germ(a0, a0)],
        g2.germ_index[Germ(a0, by_name(i2, "(0>1)"))],
    }
    assert not gk.is_bisection(g2, same_source)
    assert gk.is_bisection(g2, frozenset())


def test_bisection_algebra_mirrors_the_monoid(i2, g2):
    eps = gk.epsilon(i2, g2)
    for x in range(i2.size):
        assert gk.bisection_inverse(g2, eps[x]) == eps[i2.inverse_of(x)]
        for y in range(i2.size):
            assert gk.bisection_product(g2, eps[x], eps[y]) == eps[i2.compose(x, y)]


def test_all_bisections_counts(g2, g3, trivial_monoid):
    assert len(gk.all_bisections(g2)) == 7
    assert len(gk.all_bisections(g3)) == 34
    g1 = gk.build_germ_groupoid(trivial_monoid)
    assert gk.all_bisections(g1) == [frozenset(), frozenset(g1.unit_arrow)]


def test_all_bisections_deterministic_and_capped(g3):
    first = gk.all_bisections(g3)
    second = gk.all_bisections(g3)
    assert first == second
    assert all(gk.is_bisection(g3, A) for A in first)
    with pytest.raises(gk.SizeCapError, match="unit cap"):
        gk.all_bisections(g3, unit_cap=2)


def test_bisection_names(g2, i2):
    assert gk.bisection_name(g2, frozenset()) == "{}"
    swap = gk.basic_bisection(g2, by_name(i2, "(0>1,1>0)"))
    assert gk.bisection_name(g2, swap) == "{(0>1),(1>0)}"


def test_bisection_monoid_round_trip(i2, g2):
    monoid, bis = gk.bisection_monoid(g2)
    assert monoid.size == 7 == len(bis)
    assert gk.verify_boolean_inverse_monoid(monoid).ok
    assert monoid.names[monoid.zero] == "{}"
    assert bis[monoid.one] == gk.unit_bisection(g2)
    rep = gk.verify_bisection_monoid(i2, g2)
    assert rep.ok
    assert rep.checks[0].name == "bisection monoid constructed"
    assert rep.checks[0].note == "7 bisections"


def test_bisection_monoid_of_group_with_zero(z2_zero):
    G = gk.build_germ_groupoid(z2_zero)
    monoid, bis = gk.bisection_monoid(G)
    assert monoid.size == 3
    assert gk.groupoid_isomorphic(G, gk.build_germ_groupoid(monoid))


def test_bisection_monoid_respects_caps(g3):
    with pytest.raises(gk.SizeCapError, match="element cap"):
        gk.bisection_monoid(g3, element_cap=5)


# ---------------------------------------------------------------------------
# the verification reports


def test_epsilon_isomorphism_reports(i2, i3, g2, g3):
    rep2 = gk.verify_epsilon_isomorphism(i2, g2)
    assert rep2.ok
    notes = {c.name: c.note for c in rep2.checks}
    assert notes["surjective onto all bisections"] == "7 elements, 7 bisections"
    assert notes["orthogonalized unions land on basic bisections"] == (
        "31 coverable pairs"
    )
    rep3 = gk.verify_epsilon_isomorphism(i3)  # builds the groupoid itself
    assert rep3.ok
    notes = {c.name: c.note for c in rep3.checks}
    assert notes["products map to bisection products"] == "1156 pairs"
    assert notes["surjective onto all bisections"] == "34 elements, 34 bisections"
    assert notes["orthogonalized unions land on basic bisections"] == (
        "352 coverable pairs"
    )


def test_intersection_lemma_reports(i3, g3):
    rep = gk.verify_intersection_lemma(i3, g3)
    assert rep.ok
    notes = {c.name: c.note for c in rep.checks}
    assert notes == {
        "order gives containment": "1156 pairs",
        "intersections are meets, both forms": "1156 pairs",
        "orthogonal pairs give disjoint unions on joins": "139 orthogonal pairs",
        "differences are relative complements": "1156 pairs",
        "restriction identity for idempotent multiples": "272 pairs",
    }


def test_ample_structure_reports(i2, i3, g2, g3):
    assert gk.verify_ample_structure(i2, g2).ok
    rep = gk.verify_ample_structure(i3, g3)
    assert rep.ok
    notes = {c.name: c.note for c in rep.checks}
    assert notes["basic bisections cover the arrows"] == "34 sets over 9 arrows"
    assert notes[
        "every singleton is basic, so every arrow set is a union of basic sets"
    ] == "9 singletons"


def test_germ_coherence_reports(i2, i3, g2, g3):
    assert gk.verify_germ_coherence(i2, g2).ok
    rep = gk.verify_germ_coherence(i3, g3)
    assert rep.ok
    notes = {c.name: c.note for c in rep.checks}
    assert notes["literal equivalence matches canonical keys"] == "1323 pairs"
    assert notes["products independent of representatives"] == (
        "1323 representative pairs"
    )
    assert notes["transport inverts along the inverse element"] == "34 elements"


# ---------------------------------------------------------------------------
# model groupoids and isomorphism


def test_equivalence_relation_groupoid_validation():
    full = [(i, j) for i in range(2) for j in range(2)]
    G = gk.equivalence_relation_groupoid(2, full)
    assert (G.n_units, G.n_arrows) == (2, 4)
    with pytest.raises(ValueError, match="symmetric"):
        gk.equivalence_relation_groupoid(2, [(0, 0), (1, 1), (0, 1)])
    with pytest.raises(ValueError, match="reflexive"):
        gk.equivalence_relation_groupoid(2, [(0, 0), (0, 1), (1, 0)])
    with pytest.raises(ValueError, match="transitive"):
        gk.equivalence_relation_groupoid(
            3,
            [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)],
        )
    with pytest.raises(ValueError, match="out of range"):
        gk.equivalence_relation_groupoid(2, [(0, 0), (1, 1), (2, 2)])


def test_pair_groupoid_composition_convention():
    G = gk.pair_groupoid(3)
    assert (G.n_units, G.n_arrows) == (3, 9)
    idx = {lab: k for k, lab in enumerate(G.arrow_labels)}
    # (0>1) after (2>0) lands on (2>1)
    assert G.compose(idx["0>1"], idx["2>0"]) == idx["2>1"]
    with pytest.raises(gk.CompositionError):
        G.compose(idx["2>0"], idx["0>1"])
    assert G.verify().ok


def test_germ_groupoid_is_the_pair_groupoid(g2, g3):
    assert gk.groupoid_isomorphic(g2, gk.pair_groupoid(2))
    assert gk.groupoid_isomorphic(g3, gk.pair_groupoid(3))
    assert gk.groupoid_isomorphic(g3, g3)


def test_isomorphism_rejects_count_mismatch(g2):
    assert not gk.groupoid_isomorphic(g2, gk.pair_groupoid(3))
    diagonal = gk.equivalence_relation_groupoid(2, [(0, 0), (1, 1)])
    assert not gk.groupoid_isomorphic(g2, diagonal)


def group_as_groupoid(n, op):
    return gk.FiniteGroupoid(
        unit_labels=["*"],
        arrow_labels=[str(i) for i in range(n)],
        source=[0] * n,
        range_=[0] * n,
        inverse=[next(j for j in range(n) if op(i, j) == 0) for i in range(n)],
        unit_arrow=[0],
        compose_map={(i, j): op(i, j) for i in range(n) for j in range(n)},
    )


def test_isomorphism_needs_matching_composition():
    z4 = group_as_groupoid(4, lambda i, j: (i + j) % 4)
    klein = group_as_groupoid(4, lambda i, j: i ^ j)
    assert z4.verify().ok and klein.verify().ok
    assert not gk.groupoid_isomorphic(z4, klein)
    assert gk.groupoid_isomorphic(z4, z4)
    assert gk.groupoid_isomorphic(klein, klein)


def test_isomorphism_search_cap():
    with pytest.raises(gk.SizeCapError, match="cap"):
        gk.groupoid_isomorphic(gk.pair_groupoid(9), gk.pair_groupoid(9))


# ---------------------------------------------------------------------------
# exports


def test_dot_export(g2, trivial_monoid):
    dot = gk.groupoid_to_dot(g2)
    lines = dot.strip().splitlines()
    assert lines[0] == "digraph groupoid {"
    assert lines[-1] == "}"
    nodes = [l for l in lines if "[label=" in l and "->" not in l]
    edges = [l for l in lines if "->" in l]
    assert len(nodes) == 2 and len(edges) == 4
    assert '  u0 [label="(0>0)"];' in nodes
    assert '  u0 -> u1 [label="(0>1)"];' in edges
    g1 = gk.build_germ_groupoid(trivial_monoid)
    mini = gk.groupoid_to_dot(g1).strip().splitlines()
    assert len(mini) == 4  # header, one node, one loop, closer


def test_json_export(g3):
    doc = gk.groupoid_to_json(g3)
    assert set(doc) == {"units", "arrows", "composition"}
    assert len(doc["units"]) == 3
    assert len(doc["arrows"]) == 9
    assert all(set(a) == {"src", "dst", "label"} for a in doc["arrows"])
    triples = doc["composition"]
    assert triples == sorted(triples)
    for g, h, k in triples:
        assert doc["arrows"][g]["src"] == doc["arrows"][h]["dst"]
        assert doc["arrows"][k]["src"] == doc["arrows"][h]["src"]
        assert doc["arrows"][k]["dst"] == doc["arrows"][g]["dst"]
