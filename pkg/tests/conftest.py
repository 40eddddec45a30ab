import numpy as np
import pytest

import germkit as gk


@pytest.fixture(scope="session")
def i2():
    return gk.symmetric_inverse_monoid(2)


@pytest.fixture(scope="session")
def i3():
    return gk.symmetric_inverse_monoid(3)


@pytest.fixture(scope="session")
def g2(i2):
    return gk.build_germ_groupoid(i2)


@pytest.fixture(scope="session")
def g3(i3):
    return gk.build_germ_groupoid(i3)


# three idempotents forming the chain 0 < e < 1; a valid inverse monoid
# whose middle idempotent has no complement, so the Boolean suite must
# reject it
CHAIN_DOC = {
    "elements": ["0", "e", "1"],
    "table": [[0, 0, 0], [0, 1, 1], [0, 1, 2]],
    "zero": 0,
    "one": 2,
}

# the two-element group with an adjoined zero: Boolean, and its germ
# groupoid has a two-arrow cell over a single unit
Z2_ZERO_DOC = {
    "elements": ["0", "1", "g"],
    "table": [[0, 0, 0], [0, 1, 2], [0, 2, 1]],
    "zero": 0,
    "one": 1,
}

# the two-element Boolean algebra as a monoid
TRIVIAL_DOC = {
    "elements": ["0", "1"],
    "table": [[0, 0], [0, 1]],
    "zero": 0,
    "one": 1,
}


@pytest.fixture(scope="session")
def chain_monoid():
    return gk.FiniteInverseMonoid.from_json(CHAIN_DOC)


@pytest.fixture(scope="session")
def z2_zero():
    return gk.FiniteInverseMonoid.from_json(Z2_ZERO_DOC)


@pytest.fixture(scope="session")
def trivial_monoid():
    return gk.FiniteInverseMonoid.from_json(TRIVIAL_DOC)


def by_name(monoid, name):
    return monoid.names.index(name)


def concrete_index(monoid, pairs):
    """Element index of the partial bijection with the given graph."""
    target = tuple(sorted(pairs))
    for i, f in enumerate(monoid.concrete):
        if f.pairs == target:
            return i
    raise AssertionError(f"no element with graph {target}")


def brute_force_glb(monoid, a, b):
    """Independent glb search using only the order predicate."""
    lowers = [
        c for c in range(monoid.size)
        if monoid.natural_leq(c, a) and monoid.natural_leq(c, b)
    ]
    tops = [
        m for m in lowers
        if all(monoid.natural_leq(c, m) for c in lowers)
    ]
    assert len(tops) <= 1
    return tops[0] if tops else None


def brute_force_lub(monoid, a, b):
    uppers = [
        c for c in range(monoid.size)
        if monoid.natural_leq(a, c) and monoid.natural_leq(b, c)
    ]
    bottoms = [
        m for m in uppers
        if all(monoid.natural_leq(m, c) for c in uppers)
    ]
    assert len(bottoms) <= 1
    return bottoms[0] if bottoms else None
