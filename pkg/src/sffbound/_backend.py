"""Select the compiled kernels when importable, else the numpy fallback."""
import os

from . import _kernels_py

if os.environ.get("SFFBOUND_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

thermal_sums = _impl.thermal_sums
laguerre_table = _impl.laguerre_table
