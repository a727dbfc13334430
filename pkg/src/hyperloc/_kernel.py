"""Backend selection: compiled evaluator if importable, else pure Python.

Set HYPERLOC_PURE_PYTHON=1 to force the fallback (used by the benchmark and
by tests that exercise both paths).
"""

import os

if os.environ.get("HYPERLOC_PURE_PYTHON"):
    from . import _expr_kernel_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _expr_kernel as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _expr_kernel_py as _impl

        BACKEND = "python"

eval_programs = _impl.eval_programs
eval_programs_grid = _impl.eval_programs_grid
