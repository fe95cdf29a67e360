"""Kernel backend selection.

The compiled Cython kernels are used when available; setting the environment
variable ``TAU_FORGE_PURE=1`` forces the pure-Python fallback.  Both backends
expose the same functions and produce identical results, so everything above
this layer is backend-agnostic.
"""

import os

if os.environ.get("TAU_FORGE_PURE"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
ipoly_trim = _impl.ipoly_trim
ipoly_add = _impl.ipoly_add
ipoly_lin = _impl.ipoly_lin
ipoly_scale = _impl.ipoly_scale
ipoly_shift = _impl.ipoly_shift
ipoly_mul = _impl.ipoly_mul
ipoly_content = _impl.ipoly_content
ipoly_divexact = _impl.ipoly_divexact
ipoly_gcd = _impl.ipoly_gcd
ipoly_prem = _impl.ipoly_prem
tup_add = _impl.tup_add
