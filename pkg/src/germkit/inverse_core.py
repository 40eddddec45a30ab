"""Finite inverse monoids as fully validated multiplication tables.

An element is just an index into a square table.  Construction via
``FiniteInverseMonoid.from_table`` checks the inverse-monoid laws outright
(associativity, identity, absorbing zero, a unique generalized inverse per
element), so downstream code can rely on them.  The Boolean layer is never
assumed: meets, joins and orthogonality are found by exhaustive search over
the canonical order a <= b iff a == b * inv(a) * a, and
``verify_boolean_inverse_monoid`` reports every axiom with the first
counterexample on failure.

Symmetric inverse monoids come with their concrete partial bijections
attached; those serve as an independent route to the same answers and as
readable element names.
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb, factorial

import numpy as np

from germkit import kernels
from germkit.reports import VerificationReport

DEFAULT_ELEMENT_CAP = 2000
DEFAULT_UNIT_CAP = 6


class StructureError(ValueError):
    """The data fails a structural law it was required to satisfy."""


class SizeCapError(ValueError):
    """The requested object exceeds a configured size cap."""


class InputError(ValueError):
    """A file or mapping does not match the expected schema."""


class CompositionError(ValueError):
    """A partial operation was applied outside its domain."""


class PartialBijection:
    """Injective partial map on points 0..size-1, stored as sorted (src, dst) pairs."""

    __slots__ = ("size", "pairs")

    def __init__(self, size, pairs):
        pairs = tuple(sorted((int(s), int(t)) for s, t in pairs))
        sources = [s for s, _ in pairs]
        targets = [t for _, t in pairs]
        if len(set(sources)) != len(sources):
            raise ValueError("duplicate source point")
        if len(set(targets)) != len(targets):
            raise ValueError("map is not injective")
        for s, t in pairs:
            if not (0 <= s < size and 0 <= t < size):
                raise ValueError(f"point out of range 0..{size - 1}")
        self.size = size
        self.pairs = pairs

    @classmethod
    def identity(cls, size):
        return cls(size, [(p, p) for p in range(size)])

    @classmethod
    def empty(cls, size):
        return cls(size, [])

    def domain(self):
        return frozenset(s for s, _ in self.pairs)

    def image(self):
        return frozenset(t for _, t in self.pairs)

    def as_dict(self):
        return dict(self.pairs)

    def compose(self, other):
        """self after other: defined where other lands in the domain of self."""
        if self.size != other.size:
            raise ValueError("ambient point sets differ")
        mine = self.as_dict()
        return PartialBijection(
            self.size,
            [(s, mine[t]) for s, t in other.pairs if t in mine],
        )

    def inverse(self):
        return PartialBijection(self.size, [(t, s) for s, t in self.pairs])

    def restriction_to_agreement(self, other):
        """Largest common restriction: the pairs on which both maps agree."""
        common = set(self.pairs) & set(other.pairs)
        return PartialBijection(self.size, common)

    def graph_union(self, other):
        """Union of the two graphs if it is again a partial bijection, else None."""
        merged = set(self.pairs) | set(other.pairs)
        sources = [s for s, _ in merged]
        targets = [t for _, t in merged]
        if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
            return None
        return PartialBijection(self.size, merged)

    def is_restriction_of(self, other):
        return set(self.pairs) <= set(other.pairs)

    def key(self):
        """Canonical sort key: (domain bitmask, image tuple in source order)."""
        mask = 0
        for s, _ in self.pairs:
            mask |= 1 << s
        return (mask, tuple(t for _, t in self.pairs))

    def name(self):
        if not self.pairs:
            return "()"
        return "(" + ",".join(f"{s}>{t}" for s, t in self.pairs) + ")"

    def __eq__(self, other):
        return (
            isinstance(other, PartialBijection)
            and self.size == other.size
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return hash((self.size, self.pairs))

    def __repr__(self):
        return f"PartialBijection({self.size}, {self.name()})"


def all_partial_bijections(n_points):
    """Every partial bijection on n_points points, in canonical key order."""
    out = []
    points = range(n_points)
    for mask in range(1 << n_points):
        dom = [p for p in points if (mask >> p) & 1]
        for img in itertools.permutations(points, len(dom)):
            out.append(PartialBijection(n_points, zip(dom, img)))
    return out


def _find_identity(table):
    n = table.shape[0]
    idx = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            return e
    return None


def _find_zero(table):
    n = table.shape[0]
    for z in range(n):
        if (table[z] == z).all() and (table[:, z] == z).all():
            return z
    return None


@dataclass
class FiniteInverseMonoid:
    """Validated inverse monoid with zero; build with from_table."""

    names: tuple
    table: np.ndarray
    zero: int
    one: int
    inv: np.ndarray
    inverse_counts: np.ndarray = field(repr=False)
    concrete: tuple | None = field(default=None, repr=False)

    @classmethod
    def from_table(cls, names, table, zero=None, one=None, concrete=None,
                   element_cap=DEFAULT_ELEMENT_CAP):
        names = tuple(str(x) for x in names)
        n = len(names)
        if element_cap is not None and n > element_cap:
            raise SizeCapError(
                f"{n} elements exceeds the element cap of {element_cap}"
            )
        if len(set(names)) != n:
            raise InputError("element names are not unique")
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if table.shape != (n, n):
            raise InputError(f"table shape {table.shape} does not match {n} names")
        if n == 0:
            raise InputError("empty table")
        if table.min() < 0 or table.max() >= n:
            raise InputError("table entry out of range")

        w = kernels.associativity_witness(table)
        if w >= 0:
            a, rest = divmod(w, n * n)
            b, c = divmod(rest, n)
            raise StructureError(
                f"not associative at ({names[a]}, {names[b]}, {names[c]})"
            )

        found_one = _find_identity(table)
        if found_one is None:
            raise StructureError("no identity element")
        if one is not None and int(one) != found_one:
            raise StructureError("declared identity is not the identity")
        one = found_one

        found_zero = _find_zero(table)
        if found_zero is None:
            raise StructureError("no absorbing zero element")
        if zero is not None and int(zero) != found_zero:
            raise StructureError("declared zero is not absorbing")
        zero = found_zero

        if zero == one:
            raise StructureError(
                "zero equals the identity; the degenerate one-element case is rejected"
            )

        inv, counts = kernels.inverse_scan(table)
        bad = np.nonzero(counts != 1)[0]
        if bad.size:
            a = int(bad[0])
            raise StructureError(
                f"element {names[a]} has {int(counts[a])} generalized inverses"
                " (exactly one required)"
            )

        if concrete is not None:
            concrete = tuple(concrete)
            if len(concrete) != n:
                raise InputError("concrete element list length mismatch")

        return cls(names, table, int(zero), int(one), inv, counts, concrete)

    @property
    def size(self):
        return len(self.names)

    def name(self, a):
        return self.names[a]

    def compose(self, a, b):
        return int(self.table[a, b])

    def inverse_of(self, a):
        return int(self.inv[a])

    def is_idempotent(self, a):
        return int(self.table[a, a]) == int(a)

    @cached_property
    def idempotents(self):
        n = self.size
        return tuple(int(p) for p in range(n) if self.table[p, p] == p)

    @cached_property
    def leq(self):
        return kernels.leq_matrix(self.table, self.inv)

    @cached_property
    def orth(self):
        return kernels.orthogonality_matrix(self.table, self.inv, self.zero)

    @cached_property
    def meets(self):
        return kernels.meet_table(self.leq)

    @cached_property
    def joins(self):
        return kernels.join_table(self.leq)

    def natural_leq(self, a, b):
        return bool(self.leq[a, b])

    def is_orthogonal(self, a, b):
        return bool(self.orth[a, b])

    def meet(self, a, b):
        m = int(self.meets[a, b])
        if m < 0:
            raise StructureError(
                f"no greatest lower bound for ({self.names[a]}, {self.names[b]})"
            )
        return m

    def orthogonal_join(self, a, b):
        if not self.is_orthogonal(a, b):
            raise ValueError(
                f"({self.names[a]}, {self.names[b]}) is not an orthogonal pair"
            )
        j = int(self.joins[a, b])
        if j < 0:
            raise StructureError(
                f"orthogonal pair ({self.names[a]}, {self.names[b]})"
                " has no least upper bound"
            )
        return j

    def relative_complement(self, a, c):
        """The unique d with d orthogonal to c and d v c == a, given c <= a."""
        if not self.natural_leq(c, a):
            raise ValueError(
                f"{self.names[c]} is not below {self.names[a]}"
            )
        cand = np.nonzero(
            (self.orth[:, c] != 0) & (self.joins[:, c] == a)
        )[0]
        if cand.size != 1:
            raise StructureError(
                f"complement of {self.names[c]} inside {self.names[a]}"
                f" has {cand.size} candidates (exactly one required)"
            )
        return int(cand[0])

    def to_json(self):
        return {
            "elements": list(self.names),
            "table": self.table.tolist(),
            "zero": self.zero,
            "one": self.one,
        }

    @classmethod
    def from_json(cls, data, element_cap=DEFAULT_ELEMENT_CAP):
        if not isinstance(data, dict):
            raise InputError("monoid document must be a JSON object")
        missing = {"elements", "table", "zero", "one"} - set(data)
        if missing:
            raise InputError(f"missing keys: {sorted(missing)}")
        names = data["elements"]
        table = data["table"]
        if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
            raise InputError("elements must be a list of strings")
        n = len(names)
        if (
            not isinstance(table, list)
            or len(table) != n
            or not all(
                isinstance(row, list)
                and len(row) == n
                and all(isinstance(x, int) and not isinstance(x, bool) for x in row)
                for row in table
            )
        ):
            raise InputError("table must be an n x n list of integer indices")
        if not isinstance(data["zero"], int) or not isinstance(data["one"], int):
            raise InputError("zero and one must be element indices")
        if not (0 <= data["zero"] < n and 0 <= data["one"] < n):
            raise InputError("zero or one index out of range")
        return cls.from_table(
            names, table, zero=data["zero"], one=data["one"],
            element_cap=element_cap,
        )


def symmetric_inverse_count(n_points):
    """Number of partial bijections on n_points points."""
    return sum(comb(n_points, k) ** 2 * factorial(k) for k in range(n_points + 1))


def symmetric_inverse_monoid(n_points, element_cap=DEFAULT_ELEMENT_CAP):
    """The monoid of all partial bijections on n_points points.

    The default element cap of 2000 admits up to 5 points (1546 elements).
    The table is built from concrete composition and then revalidated
    abstractly; abstract inverses are cross-checked against graph reversal.
    """
    if n_points < 1:
        raise ValueError("need at least one point")
    if element_cap is not None and symmetric_inverse_count(n_points) > element_cap:
        raise SizeCapError(
            f"{n_points} points gives {symmetric_inverse_count(n_points)} elements,"
            f" over the element cap of {element_cap}"
        )
    elements = all_partial_bijections(n_points)
    index = {f.pairs: i for i, f in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    for i, f in enumerate(elements):
        for j, g in enumerate(elements):
            table[i, j] = index[f.compose(g).pairs]
    monoid = FiniteInverseMonoid.from_table(
        [f.name() for f in elements],
        table,
        zero=index[()],
        one=index[PartialBijection.identity(n_points).pairs],
        concrete=elements,
        element_cap=element_cap,
    )
    for i, f in enumerate(elements):
        if monoid.inv[i] != index[f.inverse().pairs]:
            raise StructureError(
                f"abstract inverse of {f.name()} disagrees with graph reversal"
            )
    return monoid


def _pair_name(s, a, b):
    return f"({s.names[a]}, {s.names[b]})"


def verify_boolean_inverse_monoid(s):
    """Full Boolean inverse monoid axiom report for a validated monoid.

    Re-runs the construction-level laws for completeness, then probes the
    order structure: all binary meets, least upper bounds for orthogonal
    pairs, two-sided distributivity of multiplication over orthogonal
    joins, and the idempotent lattice being bounded, distributive and
    complemented, with relative complements unique below every element.
    """
    rep = VerificationReport("boolean inverse monoid axioms")
    table = s.table
    n = s.size

    w = kernels.associativity_witness(table)
    if w >= 0:
        a, rest = divmod(w, n * n)
        b, c = divmod(rest, n)
        rep.add("associativity", False,
                f"fails at ({s.names[a]}, {s.names[b]}, {s.names[c]})")
    else:
        rep.add("associativity", True)

    idx = np.arange(n)
    one_ok = np.array_equal(table[s.one], idx) and np.array_equal(table[:, s.one], idx)
    rep.add("identity element", one_ok,
            None if one_ok else f"{s.names[s.one]} is not an identity")
    zero_ok = (table[s.zero] == s.zero).all() and (table[:, s.zero] == s.zero).all()
    zero_ok = bool(zero_ok) and s.zero != s.one
    rep.add("absorbing zero distinct from one", zero_ok,
            None if zero_ok else f"{s.names[s.zero]} fails")

    bad = np.nonzero(s.inverse_counts != 1)[0]
    if bad.size:
        a = int(bad[0])
        rep.add("unique generalized inverses", False,
                f"{s.names[a]} has {int(s.inverse_counts[a])}")
    else:
        rep.add("unique generalized inverses", True)

    E = np.array(s.idempotents, dtype=np.intp)
    sub = table[np.ix_(E, E)]
    comm_bad = np.argwhere(sub != sub.T)
    if comm_bad.size:
        p, q = (int(E[i]) for i in comm_bad[0])
        rep.add("idempotents commute", False, f"at {_pair_name(s, p, q)}")
    else:
        rep.add("idempotents commute", True)

    leq = s.leq.astype(bool)
    refl = bool(leq.diagonal().all())
    antisym = not np.any(leq & leq.T & ~np.eye(n, dtype=bool))
    reach = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
    trans = not np.any(reach & ~leq)
    order_ok = refl and antisym and trans
    rep.add("canonical order is a partial order", order_ok,
            None if order_ok else
            "reflexivity" if not refl else
            "antisymmetry" if not antisym else "transitivity")

    missing = np.argwhere(s.meets < 0)
    if missing.size:
        a, b = (int(x) for x in missing[0])
        rep.add("binary meets exist", False,
                f"no greatest lower bound for {_pair_name(s, a, b)}")
    else:
        rep.add("binary meets exist", True, f"{n * n} pairs")

    orth = s.orth != 0
    joins_missing = np.argwhere(orth & (s.joins < 0))
    if joins_missing.size:
        a, b = (int(x) for x in joins_missing[0])
        rep.add("orthogonal joins exist", False,
                f"no least upper bound for orthogonal {_pair_name(s, a, b)}")
    else:
        rep.add("orthogonal joins exist", True,
                f"{int(orth.sum())} orthogonal pairs")

    w = kernels.additivity_witness(table, s.orth, s.joins)
    if w >= 0:
        w, side = divmod(w, 2)
        ab, chi = divmod(w, n)
        a, b = divmod(ab, n)
        what = ("left" if side == 0 else "right") + " multiplication"
        rep.add("multiplication distributes over orthogonal joins", False,
                f"{what} by {s.names[chi]} fails on {_pair_name(s, a, b)}")
    else:
        rep.add("multiplication distributes over orthogonal joins", True)

    lattice_ok = True
    jE = s.joins[np.ix_(E, E)]
    is_idem = np.zeros(n + 1, dtype=bool)
    is_idem[E] = True
    closed_bad = np.argwhere((jE < 0) | ~is_idem[jE])
    if closed_bad.size:
        p, q = (int(E[i]) for i in closed_bad[0])
        rep.add("idempotent lattice closed under joins", False,
                f"at {_pair_name(s, p, q)}")
        lattice_ok = False
    else:
        rep.add("idempotent lattice closed under joins", True,
                f"{len(E)} idempotents")

    if lattice_ok:
        dist_note = None
        for pi, p in enumerate(E):
            meets_pE = table[p, E]
            lhs = table[p, jE]
            rhs = s.joins[np.ix_(meets_pE, meets_pE)]
            bad2 = np.argwhere(lhs != rhs)
            if bad2.size:
                q, r = (int(E[i]) for i in bad2[0])
                dist_note = (f"{s.names[int(p)]} ^ ({s.names[q]} v {s.names[r]})"
                             " differs from the join of meets")
                break
        rep.add("idempotent lattice distributive", dist_note is None, dist_note)
    else:
        rep.add("idempotent lattice distributive", False,
                "skipped: joins missing")

    comp_note = None
    for p in (int(x) for x in E):
        cand = [
            d for d in s.idempotents
            if table[p, d] == s.zero and s.joins[p, d] == s.one
        ]
        if len(cand) != 1:
            comp_note = f"{s.names[p]} has {len(cand)} complements"
            break
    rep.add("idempotent lattice complemented", comp_note is None, comp_note)

    rc_note = None
    pairs = 0
    for c in range(n):
        below = np.nonzero(s.leq[c] != 0)[0]  # all a with c <= a
        pairs += below.size
        orth_c = np.nonzero(s.orth[:, c] != 0)[0]
        targets = s.joins[orth_c, c]
        valid = targets >= 0
        counts = np.bincount(targets[valid], minlength=n)
        bad_a = np.nonzero(counts[below] != 1)[0]
        if bad_a.size:
            a = int(below[bad_a[0]])
            rc_note = (f"{s.names[c]} inside {s.names[a]}:"
                       f" {int(counts[a])} candidates")
            break
    rep.add("relative complements unique", rc_note is None,
            rc_note if rc_note is not None else f"{pairs} comparable pairs")

    return rep
