"""The idempotent Boolean algebra of a monoid and its finite dual space.

``BooleanAlgebraView`` wraps the idempotents of a validated monoid and
checks on construction that they really form a complemented distributive
bounded lattice (meet is the product, join is recovered from orthogonal
joins by splitting off the overlap).  At finite scale the dual space is
concrete: each atom a gives one character p -> [a*p == a], and those are
all of them, which ``characters`` confirms against a brute-force sweep of
every {0,1}-map whenever the algebra is small enough.
"""

import numpy as np

from germkit.inverse_core import StructureError
from germkit.reports import VerificationReport

CHARACTER_ORACLE_LIMIT = 16


class Character:
    """A lattice homomorphism onto {0, 1}, keyed by the atom carrying it."""

    __slots__ = ("algebra", "atom")

    def __init__(self, algebra, atom):
        self.algebra = algebra
        self.atom = int(atom)

    def evaluate(self, p):
        s = self.algebra.monoid
        if not s.is_idempotent(p):
            raise ValueError(f"{s.names[p]} is not an idempotent")
        return 1 if s.table[self.atom, p] == self.atom else 0

    @property
    def name(self):
        return self.algebra.monoid.names[self.atom]

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.algebra is other.algebra
            and self.atom == other.atom
        )

    def __hash__(self):
        return hash((id(self.algebra), self.atom))

    def __repr__(self):
        return f"Character({self.name})"


class BooleanAlgebraView:
    """The idempotents of a monoid viewed as a Boolean algebra."""

    def __init__(self, monoid):
        self.monoid = monoid
        self.carrier = monoid.idempotents
        self.bottom = monoid.zero
        self.top = monoid.one
        self._position = {p: i for i, p in enumerate(self.carrier)}
        self._validate()
        self._atoms = self._find_atoms()

    # meet of idempotents is their product
    def meet(self, p, q):
        self._require(p)
        self._require(q)
        return self.monoid.compose(p, q)

    def join(self, p, q):
        """p v q, computed as p joined with the part of q outside p."""
        self._require(p)
        self._require(q)
        overlap = self.meet(p, q)
        rest = self.monoid.relative_complement(q, overlap)
        return self.monoid.orthogonal_join(p, rest)

    def complement(self, p):
        self._require(p)
        return self.monoid.relative_complement(self.top, p)

    def _require(self, p):
        if p not in self._position:
            raise ValueError(f"{self.monoid.names[p]} is not an idempotent")

    def _validate(self):
        s = self.monoid
        for p in self.carrier:
            for q in self.carrier:
                pq = s.compose(p, q)
                if not s.is_idempotent(pq):
                    raise StructureError(
                        f"idempotents not closed under product at"
                        f" ({s.names[p]}, {s.names[q]})"
                    )
                if pq != s.compose(q, p):
                    raise StructureError(
                        f"idempotents do not commute at ({s.names[p]}, {s.names[q]})"
                    )
                if s.meets[p, q] != pq:
                    raise StructureError(
                        f"product of ({s.names[p]}, {s.names[q]}) is not their"
                        " greatest lower bound"
                    )
                j = self.join(p, q)
                if s.joins[p, q] != j:
                    raise StructureError(
                        f"split join of ({s.names[p]}, {s.names[q]}) is not the"
                        " least upper bound"
                    )
        for p in self.carrier:
            c = self.complement(p)
            if c not in self._position:
                raise StructureError(
                    f"complement of {s.names[p]} is not an idempotent"
                )
            if s.compose(p, c) != self.bottom or self.join(p, c) != self.top:
                raise StructureError(
                    f"complement laws fail for {s.names[p]}"
                )
        # the pairwise sweep above pinned self.join to the lub table, so
        # distributivity can run vectorised on the tables
        E = np.array(self.carrier, dtype=np.intp)
        jE = s.joins[np.ix_(E, E)]
        for p in self.carrier:
            lhs = s.table[p, jE]
            meets_pE = s.table[p, E]
            rhs = s.joins[np.ix_(meets_pE, meets_pE)]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                q, r = (int(E[i]) for i in bad[0])
                raise StructureError(
                    f"distributivity fails at ({s.names[p]},"
                    f" {s.names[q]}, {s.names[r]})"
                )

    def _find_atoms(self):
        s = self.monoid
        nonzero = [p for p in self.carrier if p != self.bottom]
        atoms = tuple(
            p for p in nonzero
            if not any(q != p and s.leq[q, p] for q in nonzero)
        )
        acc = self.bottom
        for a in atoms:
            acc = s.orthogonal_join(acc, a)
        if acc != self.top:
            raise StructureError("atoms do not join up to the identity")
        return atoms

    @property
    def atoms(self):
        return self._atoms

    def basic_open(self, e):
        """Atoms whose character maps the idempotent e to 1."""
        self._require(e)
        s = self.monoid
        return frozenset(a for a in self._atoms if s.table[a, e] == a)

    def characters(self, oracle_limit=CHARACTER_ORACLE_LIMIT):
        """One character per atom, cross-checked by brute force when small.

        The sweep enumerates every {0,1}-valued map on the carrier and keeps
        those satisfying x(0)=0, x(1)=1, x(pq)=x(p)x(q) and x(p')=1-x(p);
        the survivors must be exactly the atom characters.
        """
        chars = [Character(self, a) for a in self._atoms]
        if len(self.carrier) <= oracle_limit:
            expected = self._all_binary_homomorphisms()
            got = {
                tuple(x.evaluate(p) for p in self.carrier) for x in chars
            }
            if expected != got:
                raise StructureError(
                    f"character sweep found {len(expected)} maps,"
                    f" atoms give {len(got)}"
                )
        return chars

    def _all_binary_homomorphisms(self):
        s = self.monoid
        E = self.carrier
        m = len(E)
        pos = self._position
        span = np.arange(1 << m, dtype=np.uint32)[:, None]
        vals = ((span >> np.arange(m, dtype=np.uint32)) & 1).astype(np.uint8)
        ok = (vals[:, pos[self.bottom]] == 0) & (vals[:, pos[self.top]] == 1)
        for i, p in enumerate(E):
            ok &= vals[:, pos[self.complement(p)]] == 1 - vals[:, i]
            for k, q in enumerate(E):
                prod = pos[s.compose(p, q)]
                ok &= vals[:, prod] == (vals[:, i] & vals[:, k])
        return {tuple(int(v) for v in row) for row in vals[ok]}

    def to_json(self):
        return {
            "atoms": [self.monoid.names[a] for a in self._atoms],
            "characters": len(self._atoms),
        }


def verify_stone_embedding(algebra):
    """Report on the finite Stone dual of the idempotent algebra.

    Checks |E| == 2^atoms, that basic opens embed the order (p <= q exactly
    when basic_open(p) is contained in basic_open(q)), and that distinct
    idempotents are separated by some character.
    """
    s = algebra.monoid
    rep = VerificationReport("stone dual of the idempotent algebra")
    E = algebra.carrier
    k = len(algebra.atoms)
    rep.add("idempotent count is 2^atoms", len(E) == (1 << k),
            f"{len(E)} idempotents, {k} atoms")
    opens = {p: algebra.basic_open(p) for p in E}
    embed_bad = next(
        (
            (p, q) for p in E for q in E
            if bool(s.leq[p, q]) != (opens[p] <= opens[q])
        ),
        None,
    )
    rep.add(
        "basic opens embed the order", embed_bad is None,
        None if embed_bad is None else
        f"at ({s.names[embed_bad[0]]}, {s.names[embed_bad[1]]})",
    )
    sep_bad = next(
        (
            (p, q) for p in E for q in E
            if p != q and opens[p] == opens[q]
        ),
        None,
    )
    rep.add(
        "characters separate idempotents", sep_bad is None,
        None if sep_bad is None else
        f"({s.names[sep_bad[0]]}, {s.names[sep_bad[1]]}) not separated",
    )
    return rep
