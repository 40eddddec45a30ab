"""Pure-Python verification kernels over multiplication tables.

Fallback backend used when the compiled extension is unavailable.  Every
function here mirrors one in the compiled module bit for bit: identical
signatures, identical scan order, so witnesses and results agree across
backends.  Tables are square C-contiguous int32 arrays of element indices;
order data is passed as uint8 matrices.  Heavy sweeps are vectorised with
numpy; the order searches pack down-sets and up-sets into Python integers
used as bitsets.
"""

import numpy as np


def associativity_witness(table):
    """First triple with (a*b)*c != a*(b*c), encoded a*n*n + b*n + c, else -1."""
    n = table.shape[0]
    for a in range(n):
        left = table[table[a]]        # [b, c] -> (a*b)*c
        right = table[a][table]       # [b, c] -> a*(b*c)
        if not np.array_equal(left, right):
            bad = np.nonzero(left != right)
            b = int(bad[0][0])
            c = int(bad[1][0])
            return a * n * n + b * n + c
    return -1


def inverse_scan(table):
    """Per element: first generalized inverse (-1 if none) and how many exist.

    b is a generalized inverse of a when a*b*a == a and b*a*b == b.
    """
    n = table.shape[0]
    idx = np.arange(n)
    inv = np.full(n, -1, dtype=np.int32)
    counts = np.zeros(n, dtype=np.int32)
    for a in range(n):
        aba = table[table[a], a]      # [b] -> a*b*a
        bab = table[table[:, a], idx]  # [b] -> b*a*b
        good = (aba == a) & (bab == idx)
        counts[a] = np.count_nonzero(good)
        if counts[a]:
            inv[a] = int(np.nonzero(good)[0][0])
    return inv, counts


def leq_matrix(table, inv):
    """leq[a, b] == 1 iff a == b * inv(a) * a (the canonical order)."""
    n = table.shape[0]
    idx = np.arange(n)
    leq = np.zeros((n, n), dtype=np.uint8)
    for b in range(n):
        r = table[table[b, inv], idx]  # [a] -> b * inv(a) * a
        leq[:, b] = r == idx
    return leq


def _column_masks(mat):
    return [
        int.from_bytes(np.packbits(mat[:, j], bitorder="little").tobytes(), "little")
        for j in range(mat.shape[1])
    ]


def _row_masks(mat):
    return [
        int.from_bytes(np.packbits(mat[i], bitorder="little").tobytes(), "little")
        for i in range(mat.shape[0])
    ]


def _extreme_table(bound_masks, n, out):
    # Shared glb/lub search: bound_masks[a] is the bitset of elements
    # below (resp. above) a.  The glb of {a, b}, when it exists, is the
    # unique common lower bound dominating all others; scanning candidates
    # in ascending index keeps the pick deterministic even on junk input.
    for a in range(n):
        da = bound_masks[a]
        for b in range(a, n):
            common = da & bound_masks[b]
            found = -1
            bits = common
            while bits:
                low = bits & -bits
                c = low.bit_length() - 1
                if common & ~bound_masks[c] == 0:
                    found = c
                    break
                bits ^= low
            out[a, b] = found
            out[b, a] = found
    return out


def meet_table(leq):
    """Greatest lower bound of every pair under leq; -1 where none exists."""
    n = leq.shape[0]
    out = np.full((n, n), -1, dtype=np.int32)
    return _extreme_table(_column_masks(leq), n, out)


def join_table(leq):
    """Least upper bound of every pair under leq; -1 where none exists."""
    n = leq.shape[0]
    out = np.full((n, n), -1, dtype=np.int32)
    return _extreme_table(_row_masks(leq), n, out)


def orthogonality_matrix(table, inv, zero):
    """orth[a, b] == 1 iff a * inv(b) == zero == inv(a) * b."""
    n = table.shape[0]
    orth = np.zeros((n, n), dtype=np.uint8)
    for a in range(n):
        orth[a] = (table[a, inv] == zero) & (table[inv[a]] == zero)
    return orth


def additivity_witness(table, orth, join):
    """First failure of two-sided distributivity over orthogonal joins.

    For orthogonal a, b with j = join[a, b] >= 0, every chi must satisfy
    chi*j == (chi*a) v (chi*b) and j*chi == (a*chi) v (b*chi), with the
    right-hand joins existing.  Encoded ((a*n + b)*n + chi)*2 + side with
    side 0 for left multiplication, 1 for right; -1 when all pass.
    Missing joins of orthogonal pairs are someone else's check and are
    skipped here.
    """
    n = table.shape[0]
    for a, b in np.argwhere(orth != 0):
        j = join[a, b]
        if j < 0:
            continue
        sub = join[table[:, a], table[:, b]]
        bad = sub != table[:, j]
        if bad.any():
            chi = int(np.nonzero(bad)[0][0])
            return ((int(a) * n + int(b)) * n + chi) * 2
        sub = join[table[a], table[b]]
        bad = sub != table[j]
        if bad.any():
            chi = int(np.nonzero(bad)[0][0])
            return ((int(a) * n + int(b)) * n + chi) * 2 + 1
    return -1
