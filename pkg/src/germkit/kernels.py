"""Kernel backend selection.

The exhaustive table sweeps (associativity, inverse scans, order searches,
distributivity) dominate runtime on monoids with a few hundred elements, so
they live in a compiled extension with a pure-Python twin.  Import picks the
extension when present; set GERMKIT_KERNELS=python to force the fallback,
GERMKIT_KERNELS=cython to insist on the extension.
"""

import os

from germkit import _kernels_py

_choice = os.environ.get("GERMKIT_KERNELS", "").strip().lower()

if _choice == "python":
    _impl = _kernels_py
    BACKEND = "python"
elif _choice == "cython":
    from germkit import _kernels as _impl

    BACKEND = "cython"
else:
    try:
        from germkit import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

associativity_witness = _impl.associativity_witness
inverse_scan = _impl.inverse_scan
leq_matrix = _impl.leq_matrix
meet_table = _impl.meet_table
join_table = _impl.join_table
orthogonality_matrix = _impl.orthogonality_matrix
additivity_witness = _impl.additivity_witness
