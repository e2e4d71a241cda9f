"""Backend selection for the hot array-field kernel.

The compiled extension is preferred; the NumPy module is used when the
extension was not built. ``BACKEND`` names the active one.
"""

from __future__ import annotations

from . import _kernels_py
from ._kernels_py import ISOTROPIC, ISOTROPIC_GROUNDED, PATCH

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKEND = "cython" if _compiled is not None else "numpy"

array_field = _compiled.array_field if _compiled is not None else _kernels_py.array_field
array_field_py = _kernels_py.array_field
array_field_compiled = _compiled.array_field if _compiled is not None else None

__all__ = [
    "BACKEND",
    "ISOTROPIC",
    "ISOTROPIC_GROUNDED",
    "PATCH",
    "array_field",
    "array_field_compiled",
    "array_field_py",
]
