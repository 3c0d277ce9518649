"""Kernel selection: the compiled module when built, NumPy otherwise.

Set DEFECT_FORGE_PURE=1 to force the NumPy path.
"""

from __future__ import annotations

import os

from . import _kernels_py as pure

BACKEND = "python"
impl = pure
if os.environ.get("DEFECT_FORGE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled  # type: ignore[attr-defined]
    except ImportError:
        compiled = None
    if compiled is not None:
        impl = compiled
        BACKEND = "cython"
else:
    compiled = None

eval_expsum = impl.eval_expsum
# the phase kernels are single vectorized NumPy calls already; the compiled
# loops measured slower (benchmarks/bench_kernels.py), so they stay on NumPy
winding = pure.winding
arg_steps = pure.arg_steps
log_abs = pure.log_abs
