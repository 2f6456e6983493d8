"""Kernel backend selection: compiled extension when available, NumPy fallback
otherwise.

Set ``MCM_FORCE_PYTHON_KERNELS=1`` to skip the compiled extension; the
benchmark and the backend-parity tests use this. Both backends are contracted
to produce bit-identical outputs.
"""

import os

if os.environ.get("MCM_FORCE_PYTHON_KERNELS"):
    from . import _kernels_py as impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as impl  # type: ignore[no-redef]

        BACKEND = "python"
