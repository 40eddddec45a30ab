"""Germs of monoid elements at characters, and the finite groupoid they form.

A germ is the class of a pair (element phi, character x) where x accepts
the domain idempotent of phi; two pairs (phi, x) and (psi, x) are identified
when some idempotent p accepted by x has phi*p == psi*p.  Classes are keyed
canonically by (atom of x, phi*atom): if x accepts p with phi*p == psi*p
then the atom a sits below p, forcing phi*a == psi*a; conversely p = a
witnesses the identification.  That derivation is re-verified literally by
``verify_germ_coherence`` rather than assumed.

Orientation convention: the germ of phi at x runs FROM the unit of x TO the
unit of the transported character, so a pair (g, h) composes exactly when
source(g) == range(h) -- the right factor acts first, as when composing
partial maps.  The convention is forced by the unit computation (inverse of
g) * g = unit at the source of g, and is stated here once because both
orders appear in the groupoid literature.

Everything is finite, so the topology is discrete: every arrow set is open
and compact, and statements about compact open bisections become plain set
identities.
"""

from collections import defaultdict
from dataclasses import dataclass
from itertools import permutations

from germkit.inverse_core import (
    DEFAULT_ELEMENT_CAP,
    DEFAULT_UNIT_CAP,
    CompositionError,
    FiniteInverseMonoid,
    SizeCapError,
    StructureError,
    verify_boolean_inverse_monoid,
)
from germkit.reports import VerificationReport
from germkit.stone import BooleanAlgebraView, Character


@dataclass(frozen=True, order=True)
class Germ:
    """Canonical key of a germ class: (source atom, element * atom)."""

    atom: int
    product: int


class FiniteGroupoid:
    """Explicit finite groupoid: indexed arrows over indexed units."""

    def __init__(self, unit_labels, arrow_labels, source, range_, inverse,
                 unit_arrow, compose_map):
        self.unit_labels = tuple(str(x) for x in unit_labels)
        self.arrow_labels = tuple(str(x) for x in arrow_labels)
        self.source = tuple(int(x) for x in source)
        self.range_ = tuple(int(x) for x in range_)
        self.inverse = tuple(int(x) for x in inverse)
        self.unit_arrow = tuple(int(x) for x in unit_arrow)
        self._compose = dict(compose_map)

    @property
    def n_units(self):
        return len(self.unit_labels)

    @property
    def n_arrows(self):
        return len(self.arrow_labels)

    def composable(self, g, h):
        return self.source[g] == self.range_[h]

    def compose(self, g, h):
        k = self._compose.get((g, h))
        if k is None:
            raise CompositionError(
                f"arrows {self.arrow_labels[g]} and {self.arrow_labels[h]}"
                " are not composable"
            )
        return k

    def composition_triples(self):
        return sorted((g, h, k) for (g, h), k in self._compose.items())

    def verify(self):
        """Groupoid axiom report: units, inverses, associativity."""
        rep = VerificationReport("groupoid axioms")
        n_u, n_a = self.n_units, self.n_arrows

        shape_ok = (
            len(self.source) == n_a
            and len(self.range_) == n_a
            and len(self.inverse) == n_a
            and len(self.unit_arrow) == n_u
            and all(0 <= u < n_u for u in self.source + self.range_)
            and all(0 <= g < n_a for g in self.inverse + self.unit_arrow)
            and all(
                self.source[self.unit_arrow[u]] == u
                and self.range_[self.unit_arrow[u]] == u
                for u in range(n_u)
            )
        )
        rep.add("source, range, inverse and unit maps well formed", shape_ok)

        dom_bad = next(
            (
                (g, h) for g in range(n_a) for h in range(n_a)
                if ((g, h) in self._compose) != self.composable(g, h)
            ),
            None,
        )
        rep.add(
            "products defined exactly on matching source and range",
            dom_bad is None,
            None if dom_bad is None else
            f"at ({self.arrow_labels[dom_bad[0]]}, {self.arrow_labels[dom_bad[1]]})",
        )
        if dom_bad is not None:
            return rep

        sr_bad = next(
            (
                (g, h) for (g, h), k in self._compose.items()
                if self.source[k] != self.source[h] or self.range_[k] != self.range_[g]
            ),
            None,
        )
        rep.add(
            "product source and range come from the factors", sr_bad is None,
            None if sr_bad is None else
            f"at ({self.arrow_labels[sr_bad[0]]}, {self.arrow_labels[sr_bad[1]]})",
        )

        # a missing product below is itself a failure, never a crash
        prod = self._compose.get
        unit_bad = next(
            (
                g for g in range(n_a)
                if prod((self.unit_arrow[self.range_[g]], g)) != g
                or prod((g, self.unit_arrow[self.source[g]])) != g
            ),
            None,
        )
        rep.add(
            "unit arrows act neutrally", unit_bad is None,
            None if unit_bad is None else f"at {self.arrow_labels[unit_bad]}",
        )

        inv_bad = next(
            (
                g for g in range(n_a)
                if self.inverse[self.inverse[g]] != g
                or self.source[self.inverse[g]] != self.range_[g]
                or prod((self.inverse[g], g)) != self.unit_arrow[self.source[g]]
                or prod((g, self.inverse[g])) != self.unit_arrow[self.range_[g]]
            ),
            None,
        )
        rep.add(
            "inverses cancel to units", inv_bad is None,
            None if inv_bad is None else f"at {self.arrow_labels[inv_bad]}",
        )

        assoc_bad = None
        triples = 0
        for (g, h), gh in self._compose.items():
            for k in range(n_a):
                if self.composable(h, k):
                    triples += 1
                    hk = prod((h, k))
                    if hk is None or prod((gh, k)) != prod((g, hk)):
                        assoc_bad = (g, h, k)
                        break
            if assoc_bad:
                break
        rep.add(
            "associativity on composable triples", assoc_bad is None,
            f"{triples} triples" if assoc_bad is None else
            "at (" + ", ".join(self.arrow_labels[x] for x in assoc_bad) + ")",
        )
        return rep


class GermGroupoid(FiniteGroupoid):
    """Germ groupoid of a Boolean inverse monoid, units indexed by atoms."""

    def __init__(self, monoid, algebra, germs, **kwargs):
        super().__init__(**kwargs)
        self.monoid = monoid
        self.algebra = algebra
        self.germs = tuple(germs)
        self.germ_index = {g: k for k, g in enumerate(self.germs)}


def char_support(algebra, phi):
    """Atoms whose characters accept the domain idempotent of phi."""
    s = algebra.monoid
    return algebra.basic_open(s.compose(s.inverse_of(phi), phi))


def alpha(algebra, phi, x):
    """Transport the character x along phi: the result maps p to x(phi' p phi).

    Returns the unique atom character realizing the rule, verified against
    the full value table, and lands in the support of the inverse element.
    """
    s = algebra.monoid
    a = x.atom if isinstance(x, Character) else int(x)
    support = char_support(algebra, phi)
    if a not in support:
        raise ValueError(
            f"character at {s.names[a]} does not accept the domain of {s.names[phi]}"
        )
    inv_phi = s.inverse_of(phi)
    b = s.compose(s.compose(phi, a), inv_phi)
    if b not in set(algebra.atoms):
        raise StructureError(
            f"transport of {s.names[a]} along {s.names[phi]} is not an atom"
        )
    source = Character(algebra, a)
    target = Character(algebra, b)
    for p in algebra.carrier:
        conj = s.compose(s.compose(inv_phi, p), phi)
        if target.evaluate(p) != source.evaluate(conj):
            raise StructureError(
                f"transport along {s.names[phi]} fails the value rule at"
                f" {s.names[p]}"
            )
    if b not in char_support(algebra, inv_phi):
        raise StructureError(
            f"transport along {s.names[phi]} lands outside the inverse support"
        )
    return target


def germ_equivalent(algebra, pair_a, pair_b):
    """Literal germ equivalence: same character and agreement on an accepted idempotent.

    Searches every idempotent p with x(p) = 1 for phi*p == psi*p.  The
    canonical-key shortcut (phi*a == psi*a) must agree with this on every
    pair; verify_germ_coherence sweeps that comparison.
    """
    s = algebra.monoid
    phi, a = pair_a
    psi, b = pair_b
    for elt, atom in (pair_a, pair_b):
        if atom not in char_support(algebra, elt):
            raise ValueError(
                f"character at {s.names[atom]} does not accept the domain of"
                f" {s.names[elt]}"
            )
    if a != b:
        return False
    return any(
        s.compose(a, p) == a and s.compose(phi, p) == s.compose(psi, p)
        for p in algebra.carrier
    )


def build_germ_groupoid(s, algebra=None, check=True):
    """Assemble the germ groupoid of a verified Boolean inverse monoid.

    Arrows are deduplicated germ keys over all (element, supported atom)
    pairs, sorted by key; units are the germs of atoms at themselves.  The
    construction cross-checks the key identities (source atom is the domain
    of the product, range is again an atom, products stay inside the key
    set) and, unless check=False, insists the full axiom report passes.
    """
    if algebra is None:
        algebra = BooleanAlgebraView(s)
    atoms = algebra.atoms
    unit_of_atom = {a: i for i, a in enumerate(atoms)}

    keys = set()
    for phi in range(s.size):
        for a in char_support(algebra, phi):
            keys.add(Germ(a, s.compose(phi, a)))
    germs = tuple(sorted(keys))
    index = {g: k for k, g in enumerate(germs)}

    source = []
    range_ = []
    for g in germs:
        if s.compose(s.inverse_of(g.product), g.product) != g.atom:
            raise StructureError(
                f"germ key ({s.names[g.atom]}, {s.names[g.product]}) fails"
                " the source identity"
            )
        r = s.compose(g.product, s.inverse_of(g.product))
        if r not in unit_of_atom:
            raise StructureError(
                f"range of germ {s.names[g.product]} is not an atom"
            )
        source.append(unit_of_atom[g.atom])
        range_.append(unit_of_atom[r])

    inverse = []
    for k, g in enumerate(germs):
        r_atom = atoms[range_[k]]
        inverse.append(index[Germ(r_atom, s.inverse_of(g.product))])

    unit_arrow = [index[Germ(a, a)] for a in atoms]

    compose_map = {}
    for gi, g in enumerate(germs):
        for hi, h in enumerate(germs):
            if source[gi] == range_[hi]:
                prod = Germ(h.atom, s.compose(g.product, h.product))
                k = index.get(prod)
                if k is None:
                    raise StructureError(
                        f"product of germs {s.names[g.product]} and"
                        f" {s.names[h.product]} left the key set"
                    )
                compose_map[(gi, hi)] = k

    G = GermGroupoid(
        monoid=s,
        algebra=algebra,
        germs=germs,
        unit_labels=[s.names[a] for a in atoms],
        arrow_labels=[s.names[g.product] for g in germs],
        source=source,
        range_=range_,
        inverse=inverse,
        unit_arrow=unit_arrow,
        compose_map=compose_map,
    )
    if check:
        rep = G.verify()
        if not rep.ok:
            bad = rep.first_failure
            note = f" ({bad.note})" if bad.note else ""
            raise StructureError(f"groupoid axioms fail: {bad.name}{note}")
    return G


def compose_germs(G, g, h):
    """Product of germ classes: (a, m) after (b, k) is (b, m*k)."""
    gi = G.germ_index.get(g)
    hi = G.germ_index.get(h)
    if gi is None or hi is None:
        raise ValueError("germ does not belong to this groupoid")
    if not G.composable(gi, hi):
        raise CompositionError(
            f"germs {G.arrow_labels[gi]} and {G.arrow_labels[hi]}"
            " are not composable"
        )
    return G.germs[G.compose(gi, hi)]


def inverse_germ(G, g):
    gi = G.germ_index.get(g)
    if gi is None:
        raise ValueError("germ does not belong to this groupoid")
    return G.germs[G.inverse[gi]]


def basic_bisection(G, phi):
    """Arrow indices of the germs of phi over its character support."""
    s = G.monoid
    return frozenset(
        G.germ_index[Germ(a, s.compose(phi, a))]
        for a in char_support(G.algebra, phi)
    )


def is_bisection(G, arrow_set):
    arrows = list(arrow_set)
    return (
        len({G.source[g] for g in arrows}) == len(arrows)
        and len({G.range_[g] for g in arrows}) == len(arrows)
    )


def bisection_product(G, A, B):
    return frozenset(
        G.compose(g, h) for g in A for h in B if G.composable(g, h)
    )


def bisection_inverse(G, A):
    return frozenset(G.inverse[g] for g in A)


def unit_bisection(G):
    return frozenset(G.unit_arrow)


def all_bisections(G, unit_cap=DEFAULT_UNIT_CAP):
    """Every bisection, by backtracking over source fibers.

    Each unit contributes at most one arrow from its source fiber, pruning
    on range collisions; this stays exact while dodging the 2^arrows
    powerset.  Output order is deterministic (sorted arrow-index tuples).
    """
    if unit_cap is not None and G.n_units > unit_cap:
        raise SizeCapError(
            f"{G.n_units} units exceeds the unit cap of {unit_cap}"
        )
    by_source = [[] for _ in range(G.n_units)]
    for g in range(G.n_arrows):
        by_source[G.source[g]].append(g)

    found = []
    chosen = []
    used_ranges = set()

    def extend(u):
        if u == G.n_units:
            found.append(frozenset(chosen))
            return
        extend(u + 1)
        for g in by_source[u]:
            r = G.range_[g]
            if r not in used_ranges:
                chosen.append(g)
                used_ranges.add(r)
                extend(u + 1)
                chosen.pop()
                used_ranges.remove(r)

    extend(0)
    return sorted(found, key=lambda A: tuple(sorted(A)))


def bisection_name(G, A):
    if not A:
        return "{}"
    return "{" + ",".join(G.arrow_labels[g] for g in sorted(A)) + "}"


def bisection_monoid(G, unit_cap=DEFAULT_UNIT_CAP, element_cap=DEFAULT_ELEMENT_CAP):
    """Package all bisections as a monoid under setwise product.

    Returns (monoid, bisections) with bisections[i] the arrow set named by
    monoid.names[i].  The table is validated from scratch, and abstract
    inverses are cross-checked against setwise arrow inversion.
    """
    bis = all_bisections(G, unit_cap=unit_cap)
    if element_cap is not None and len(bis) > element_cap:
        raise SizeCapError(
            f"{len(bis)} bisections exceeds the element cap of {element_cap}"
        )
    index = {A: i for i, A in enumerate(bis)}
    table = []
    for A in bis:
        row = []
        for B in bis:
            P = bisection_product(G, A, B)
            k = index.get(P)
            if k is None:
                raise StructureError(
                    f"product of bisections {bisection_name(G, A)} and"
                    f" {bisection_name(G, B)} is not a bisection"
                )
            row.append(k)
        table.append(row)
    monoid = FiniteInverseMonoid.from_table(
        [bisection_name(G, A) for A in bis],
        table,
        zero=index[frozenset()],
        one=index[unit_bisection(G)],
        element_cap=element_cap,
    )
    for i, A in enumerate(bis):
        if monoid.inv[i] != index[bisection_inverse(G, A)]:
            raise StructureError(
                f"abstract inverse of {bisection_name(G, A)} disagrees with"
                " arrowwise inversion"
            )
    return monoid, tuple(bis)


def epsilon(s, G):
    """The candidate isomorphism: element index -> its basic bisection."""
    return tuple(basic_bisection(G, phi) for phi in range(s.size))


def _pair(s, a, b):
    return f"({s.names[a]}, {s.names[b]})"


def verify_epsilon_isomorphism(s, G=None):
    """Report that phi -> U_phi is an isomorphism onto all bisections.

    Checks products, inverses, zero and one, injectivity, surjectivity
    against the backtracking enumeration, and exercises the
    orthogonalization step: whenever U_phi1 and U_phi2 sit inside a common
    bisection (their union is one), chi := phi2 minus (phi2 meet phi1) is
    orthogonal to phi1 and U_phi1 with U_phi2 union to U of the orthogonal
    join.  Pairs whose union is not a bisection cannot arise in that
    decomposition and are skipped.
    """
    if G is None:
        G = build_germ_groupoid(s)
    rep = VerificationReport("bisection round-trip")
    eps = epsilon(s, G)
    n = s.size

    rep.add(
        "zero and one map to the empty and unit bisections",
        eps[s.zero] == frozenset() and eps[s.one] == unit_bisection(G),
    )

    hom_bad = next(
        (
            (phi, psi) for phi in range(n) for psi in range(n)
            if bisection_product(G, eps[phi], eps[psi]) != eps[s.compose(phi, psi)]
        ),
        None,
    )
    rep.add(
        "products map to bisection products", hom_bad is None,
        f"{n * n} pairs" if hom_bad is None else f"at {_pair(s, *hom_bad)}",
    )

    inv_bad = next(
        (
            phi for phi in range(n)
            if eps[s.inverse_of(phi)] != bisection_inverse(G, eps[phi])
        ),
        None,
    )
    rep.add(
        "inverses map to bisection inverses", inv_bad is None,
        None if inv_bad is None else f"at {s.names[inv_bad]}",
    )

    rep.add("injective", len(set(eps)) == n, f"{n} elements")

    bis = all_bisections(G)
    rep.add(
        "surjective onto all bisections", set(eps) == set(bis),
        f"{n} elements, {len(bis)} bisections",
    )

    swept = 0
    orth_bad = None
    for phi1 in range(n):
        for phi2 in range(n):
            union = eps[phi1] | eps[phi2]
            if not is_bisection(G, union):
                continue
            chi = s.relative_complement(phi2, s.meet(phi2, phi1))
            if not s.is_orthogonal(phi1, chi):
                orth_bad = f"split of {_pair(s, phi1, phi2)} is not orthogonal"
                break
            join = s.orthogonal_join(phi1, chi)
            if union != eps[join]:
                orth_bad = (
                    f"union for {_pair(s, phi1, phi2)} differs from"
                    f" U at {s.names[join]}"
                )
                break
            swept += 1
        if orth_bad:
            break
    rep.add(
        "orthogonalized unions land on basic bisections", orth_bad is None,
        f"{swept} coverable pairs" if orth_bad is None else orth_bad,
    )
    return rep


def verify_intersection_lemma(s, G):
    """Set identities tying the order of S to its basic bisections.

    Sweeps all ordered element pairs: containment along the order,
    intersections as meets (also in the union-over-idempotents form),
    orthogonal pairs giving disjoint unions that land on joins, differences
    as relative complements, and the restriction identity U_{phi*p} =
    germs of phi over the support of (domain of phi)*p.
    """
    rep = VerificationReport("basic bisection identities")
    eps = epsilon(s, G)
    n = s.size
    E = s.idempotents

    contain_bad = None
    pairs = 0
    for phi in range(n):
        for psi in range(n):
            pairs += 1
            if s.leq[psi, phi] and not eps[psi] <= eps[phi]:
                contain_bad = _pair(s, psi, phi)
                break
        if contain_bad:
            break
    rep.add(
        "order gives containment", contain_bad is None,
        f"{pairs} pairs" if contain_bad is None else f"at {contain_bad}",
    )

    meet_bad = None
    for phi in range(n):
        for psi in range(n):
            want = eps[s.meet(phi, psi)]
            if eps[phi] & eps[psi] != want:
                meet_bad = _pair(s, phi, psi)
                break
            pieces = frozenset().union(
                *(
                    eps[s.compose(phi, q)] for q in E
                    if s.compose(phi, q) == s.compose(psi, q)
                )
            )
            if pieces != want:
                meet_bad = _pair(s, phi, psi) + " (union form)"
                break
        if meet_bad:
            break
    rep.add(
        "intersections are meets, both forms", meet_bad is None,
        f"{n * n} pairs" if meet_bad is None else f"at {meet_bad}",
    )

    orth_bad = None
    orth_pairs = 0
    for phi in range(n):
        for psi in range(n):
            if not s.is_orthogonal(phi, psi):
                continue
            orth_pairs += 1
            if eps[phi] & eps[psi]:
                orth_bad = f"overlap at {_pair(s, phi, psi)}"
                break
            if eps[phi] | eps[psi] != eps[s.orthogonal_join(phi, psi)]:
                orth_bad = f"union misses the join at {_pair(s, phi, psi)}"
                break
        if orth_bad:
            break
    rep.add(
        "orthogonal pairs give disjoint unions on joins", orth_bad is None,
        f"{orth_pairs} orthogonal pairs" if orth_bad is None else orth_bad,
    )

    diff_bad = next(
        (
            _pair(s, phi, psi)
            for phi in range(n)
            for psi in range(n)
            if eps[phi] - eps[psi]
            != eps[s.relative_complement(phi, s.meet(phi, psi))]
        ),
        None,
    )
    rep.add(
        "differences are relative complements", diff_bad is None,
        f"{n * n} pairs" if diff_bad is None else f"at {diff_bad}",
    )

    restrict_bad = None
    for phi in range(n):
        dom = s.compose(s.inverse_of(phi), phi)
        for p in E:
            lhs = eps[s.compose(phi, p)]
            rhs = frozenset(
                G.germ_index[Germ(a, s.compose(phi, a))]
                for a in G.algebra.basic_open(s.compose(dom, p))
            )
            if lhs != rhs:
                restrict_bad = _pair(s, phi, p)
                break
        if restrict_bad:
            break
    rep.add(
        "restriction identity for idempotent multiples", restrict_bad is None,
        f"{n * len(E)} pairs" if restrict_bad is None else f"at {restrict_bad}",
    )
    return rep


def verify_ample_structure(s, G):
    """Report that the basic bisections exhibit the groupoid as ample.

    At finite scale: every U_phi is a bisection, the family covers the
    arrows, each U_phi is in atomwise bijection with the support of its
    domain idempotent (with sources reproducing the characters), every
    singleton arrow set is itself basic (hence every arrow set is a union
    of basic ones), and the unit space is exactly U at the identity.
    """
    rep = VerificationReport("ample structure of the basic bisections")
    eps = epsilon(s, G)
    n = s.size

    bis_bad = next(
        (phi for phi in range(n) if not is_bisection(G, eps[phi])), None,
    )
    rep.add(
        "every basic arrow set is a bisection", bis_bad is None,
        f"{n} sets" if bis_bad is None else f"at {s.names[bis_bad]}",
    )

    covered = frozenset().union(*eps)
    rep.add(
        "basic bisections cover the arrows",
        covered == frozenset(range(G.n_arrows)),
        f"{n} sets over {G.n_arrows} arrows",
    )

    theta_bad = None
    for phi in range(n):
        support = char_support(G.algebra, phi)
        atoms_hit = {G.germs[g].atom for g in eps[phi]}
        if len(eps[phi]) != len(support) or atoms_hit != set(support):
            theta_bad = f"support mismatch at {s.names[phi]}"
            break
        for g in eps[phi]:
            a = G.germs[g].atom
            if G.unit_arrow[G.source[g]] != G.germ_index[Germ(a, a)]:
                theta_bad = f"source unit mismatch at {s.names[phi]}"
                break
        if theta_bad:
            break
    rep.add(
        "each basic bisection is in bijection with its support",
        theta_bad is None,
        None if theta_bad is None else theta_bad,
    )

    single_bad = next(
        (
            g for g in range(G.n_arrows)
            if basic_bisection(G, G.germs[g].product) != frozenset({g})
        ),
        None,
    )
    rep.add(
        "every singleton is basic, so every arrow set is a union of basic sets",
        single_bad is None,
        f"{G.n_arrows} singletons" if single_bad is None else
        f"at {G.arrow_labels[single_bad]}",
    )

    units_ok = (
        unit_bisection(G) == eps[s.one]
        and unit_bisection(G)
        == frozenset(G.germ_index[Germ(a, a)] for a in G.algebra.atoms)
    )
    rep.add("unit space is the basic bisection of the identity", units_ok)
    return rep


def verify_germ_coherence(s, G):
    """Report that the canonical germ keys carry the class structure.

    Literal equivalence (search over accepted idempotents) must match key
    equality and be an equivalence relation; products must not depend on
    representatives; transport along an element must invert along its
    inverse and match arrowwise inversion of basic bisections.
    """
    rep = VerificationReport("germ class coherence")
    algebra = G.algebra
    n = s.size

    members = {a: [] for a in algebra.atoms}
    for phi in range(n):
        for a in char_support(algebra, phi):
            members[a].append(phi)

    lit_bad = None
    compared = 0
    literal = {}
    for a, elems in members.items():
        for phi in elems:
            for psi in elems:
                lit = germ_equivalent(algebra, (phi, a), (psi, a))
                literal[(a, phi, psi)] = lit
                canon = s.compose(phi, a) == s.compose(psi, a)
                compared += 1
                if lit != canon:
                    lit_bad = f"at {_pair(s, phi, psi)} over {s.names[a]}"
                    break
            if lit_bad:
                break
        if lit_bad:
            break
    rep.add(
        "literal equivalence matches canonical keys", lit_bad is None,
        f"{compared} pairs" if lit_bad is None else lit_bad,
    )

    eq_bad = None
    if lit_bad is None:
        for a, elems in members.items():
            if any(not literal[(a, phi, phi)] for phi in elems):
                eq_bad = f"reflexivity over {s.names[a]}"
                break
            if any(
                literal[(a, phi, psi)] != literal[(a, psi, phi)]
                for phi in elems for psi in elems
            ):
                eq_bad = f"symmetry over {s.names[a]}"
                break
            if any(
                literal[(a, phi, psi)] and literal[(a, psi, chi)]
                and not literal[(a, phi, chi)]
                for phi in elems for psi in elems for chi in elems
            ):
                eq_bad = f"transitivity over {s.names[a]}"
                break
        rep.add("literal equivalence is an equivalence relation",
                eq_bad is None, eq_bad)
    else:
        rep.add("literal equivalence is an equivalence relation", False,
                "skipped: key mismatch")

    reps_of = defaultdict(list)
    for a, elems in members.items():
        for phi in elems:
            reps_of[Germ(a, s.compose(phi, a))].append(phi)

    prod_bad = None
    rederived = 0
    for (gi, hi), ki in G._compose.items():
        g, h, k = G.germs[gi], G.germs[hi], G.germs[ki]
        for phi in reps_of[g]:
            for psi in reps_of[h]:
                both = s.compose(phi, psi)
                if Germ(h.atom, s.compose(both, h.atom)) != k:
                    prod_bad = (
                        f"representatives {_pair(s, phi, psi)} break the"
                        f" product at ({G.arrow_labels[gi]}, {G.arrow_labels[hi]})"
                    )
                    break
                rederived += 1
            if prod_bad:
                break
        if prod_bad:
            break
    rep.add(
        "products independent of representatives", prod_bad is None,
        f"{rederived} representative pairs" if prod_bad is None else prod_bad,
    )

    alpha_bad = None
    for phi in range(n):
        inv_phi = s.inverse_of(phi)
        images = set()
        for a in char_support(algebra, phi):
            y = alpha(algebra, phi, Character(algebra, a))
            images.add(y.atom)
            back = alpha(algebra, inv_phi, y)
            if back.atom != a:
                alpha_bad = f"round trip moves {s.names[a]} under {s.names[phi]}"
                break
        if alpha_bad:
            break
        if images != set(char_support(algebra, inv_phi)):
            alpha_bad = f"transport along {s.names[phi]} is not onto"
            break
    rep.add(
        "transport inverts along the inverse element", alpha_bad is None,
        f"{n} elements" if alpha_bad is None else alpha_bad,
    )

    dual_bad = next(
        (
            phi for phi in range(n)
            if basic_bisection(G, s.inverse_of(phi))
            != bisection_inverse(G, basic_bisection(G, phi))
        ),
        None,
    )
    rep.add(
        "inverse elements give arrowwise-inverted bisections", dual_bad is None,
        f"{n} elements" if dual_bad is None else f"at {s.names[dual_bad]}",
    )
    return rep


def verify_bisection_monoid(s, G=None):
    """Boolean axiom report for the monoid assembled from all bisections."""
    if G is None:
        G = build_germ_groupoid(s)
    monoid, _ = bisection_monoid(G)
    rep = VerificationReport("bisection monoid axioms")
    rep.add(
        "bisection monoid constructed",
        True,
        f"{monoid.size} bisections",
    )
    rep.extend(verify_boolean_inverse_monoid(monoid))
    return rep


def equivalence_relation_groupoid(n_points, relation):
    """Groupoid of an equivalence relation: arrows (i, j) run i to j.

    Composition follows the right-factor-first convention: (i, j) after
    (k, l) with l == i gives (k, j).
    """
    pairs = sorted({(int(i), int(j)) for i, j in relation})
    present = set(pairs)
    for i, j in pairs:
        if not (0 <= i < n_points and 0 <= j < n_points):
            raise ValueError("relation pair out of range")
        if (j, i) not in present:
            raise ValueError("relation is not symmetric")
    for p in range(n_points):
        if (p, p) not in present:
            raise ValueError("relation is not reflexive")
    for i, j in pairs:
        for k, l in pairs:
            if l == i and (k, j) not in present:
                raise ValueError("relation is not transitive")

    index = {p: k for k, p in enumerate(pairs)}
    compose_map = {
        (index[(i, j)], index[(k, l)]): index[(k, j)]
        for (i, j) in pairs for (k, l) in pairs if l == i
    }
    return FiniteGroupoid(
        unit_labels=[str(p) for p in range(n_points)],
        arrow_labels=[f"{i}>{j}" for i, j in pairs],
        source=[i for i, _ in pairs],
        range_=[j for _, j in pairs],
        inverse=[index[(j, i)] for i, j in pairs],
        unit_arrow=[index[(p, p)] for p in range(n_points)],
        compose_map=compose_map,
    )


def pair_groupoid(n_points):
    return equivalence_relation_groupoid(
        n_points,
        [(i, j) for i in range(n_points) for j in range(n_points)],
    )


def _unit_signature(cells, n_units, u):
    loops = len(cells.get((u, u), ()))
    profile = sorted(
        (len(cells.get((u, v), ())), len(cells.get((v, u), ())))
        for v in range(n_units) if v != u
    )
    return (loops, tuple(profile))


def groupoid_isomorphic(G1, G2, arrow_cap=64):
    """Brute-force isomorphism test: unit bijection plus arrow bijection.

    Backtracks over unit images pruned by arrow-count signatures, then over
    per-cell arrow bijections, accepting only maps preserving composition
    (inverses and units follow, but are checked anyway).
    """
    if G1.n_units != G2.n_units or G1.n_arrows != G2.n_arrows:
        return False
    if max(G1.n_arrows, G2.n_arrows) > arrow_cap:
        raise SizeCapError(
            f"{max(G1.n_arrows, G2.n_arrows)} arrows exceeds the"
            f" isomorphism search cap of {arrow_cap}"
        )
    n_u = G1.n_units

    def cells_of(G):
        cells = defaultdict(list)
        for g in range(G.n_arrows):
            cells[(G.source[g], G.range_[g])].append(g)
        return cells

    cells1 = cells_of(G1)
    cells2 = cells_of(G2)
    sig1 = [_unit_signature(cells1, n_u, u) for u in range(n_u)]
    sig2 = [_unit_signature(cells2, n_u, u) for u in range(n_u)]
    if sorted(sig1) != sorted(sig2):
        return False

    def arrow_stage(unit_map):
        cell_keys = sorted(cells1)
        target = [
            cells2.get((unit_map[u], unit_map[v]), [])
            for (u, v) in cell_keys
        ]
        if any(
            len(cells1[key]) != len(tgt)
            for key, tgt in zip(cell_keys, target)
        ):
            return False

        def fill(idx, amap):
            if idx == len(cell_keys):
                for (g, h), k in G1._compose.items():
                    if G2._compose.get((amap[g], amap[h])) != amap[k]:
                        return False
                for g in range(G1.n_arrows):
                    if amap[G1.inverse[g]] != G2.inverse[amap[g]]:
                        return False
                for u in range(n_u):
                    if amap[G1.unit_arrow[u]] != G2.unit_arrow[unit_map[u]]:
                        return False
                return True
            src = cells1[cell_keys[idx]]
            for image in permutations(target[idx]):
                for g, mg in zip(src, image):
                    amap[g] = mg
                if fill(idx + 1, amap):
                    return True
            return False

        return fill(0, {})

    def unit_stage(u, unit_map, used):
        if u == n_u:
            return arrow_stage(unit_map)
        for v in range(n_u):
            if v in used or sig1[u] != sig2[v]:
                continue
            ok = all(
                len(cells1.get((u, w), ())) == len(cells2.get((v, unit_map[w]), ()))
                and len(cells1.get((w, u), ())) == len(cells2.get((unit_map[w], v), ()))
                for w in range(u)
            ) and len(cells1.get((u, u), ())) == len(cells2.get((v, v), ()))
            if not ok:
                continue
            unit_map[u] = v
            used.add(v)
            if unit_stage(u + 1, unit_map, used):
                return True
            used.remove(v)
            del unit_map[u]
        return False

    return unit_stage(0, {}, set())


def groupoid_to_dot(G):
    """DOT text: units as nodes labeled by atom, arrows as labeled edges."""
    lines = ["digraph groupoid {"]
    for u, label in enumerate(G.unit_labels):
        lines.append(f'  u{u} [label="{label}"];')
    for g in range(G.n_arrows):
        lines.append(
            f'  u{G.source[g]} -> u{G.range_[g]} [label="{G.arrow_labels[g]}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def groupoid_to_json(G):
    return {
        "units": list(G.unit_labels),
        "arrows": [
            {"src": G.source[g], "dst": G.range_[g], "label": G.arrow_labels[g]}
            for g in range(G.n_arrows)
        ],
        "composition": [list(t) for t in G.composition_triples()],
    }
