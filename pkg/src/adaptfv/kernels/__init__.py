"""Backend selection for the numeric kernels.

The jit-compiled backend is used when numba imports cleanly; setting the
environment variable ``ADAPTFV_DISABLE_NUMBA`` to ``1``/``true``/``yes``/``on``
before import forces the pure-numpy fallback.  ``BACKEND`` records which one
is active.  Both backends are importable directly (``kernels.numpy_impl``,
``kernels.numba_impl``) for parity tests and benchmarks.
"""

import os

_flag = os.environ.get("ADAPTFV_DISABLE_NUMBA", "").strip().lower()

if _flag in {"1", "true", "yes", "on"}:
    from . import numpy_impl as _impl
    BACKEND = "numpy"
else:
    try:
        from . import numba_impl as _impl
        BACKEND = "numba"
    except ImportError:
        from . import numpy_impl as _impl
        BACKEND = "numpy"

SCHEME_ECONS = _impl.SCHEME_ECONS
SCHEME_RUSANOV = _impl.SCHEME_RUSANOV
SCHEME_FIXED_D = _impl.SCHEME_FIXED_D
DEGENERATE_REL_EPS = _impl.DEGENERATE_REL_EPS

monitor_weights = _impl.monitor_weights
smooth_weights = _impl.smooth_weights
equidistribute = _impl.equidistribute
cap_displacements = _impl.cap_displacements
remap_field = _impl.remap_field
h_terms = _impl.h_terms
interface_coeffs = _impl.interface_coeffs
nonuniform_update = _impl.nonuniform_update
combined_update = _impl.combined_update
movement_bound_terms = _impl.movement_bound_terms
