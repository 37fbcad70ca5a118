"""Kernel backend selection.

The compiled extension is preferred when importable; JETVAR_KERNEL=py forces
the pure-Python fallback, JETVAR_KERNEL=c insists on the extension.
"""

import os

_forced = os.environ.get("JETVAR_KERNEL", "").strip().lower()

if _forced in ("py", "python"):
    from . import _kernel_py as kernel
elif _forced in ("c", "cython"):
    from . import _kernel as kernel  # type: ignore[no-redef]
else:
    try:
        from . import _kernel as kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as kernel  # type: ignore[no-redef]

BACKEND = kernel.BACKEND
mono_mul = kernel.mono_mul
add_dicts = kernel.add_dicts
mul_dicts = kernel.mul_dicts
