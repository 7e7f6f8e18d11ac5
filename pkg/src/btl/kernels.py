"""Backend selection for the hot hypercube loops.

The compiled extension is used when it was built; otherwise the numpy
fallback is imported.  Set ``BTL_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

NAMES = (
    "wht_inplace",
    "first_violation",
    "violation_counts",
    "upper_envelope",
    "lower_envelope",
    "violated_pairs",
    "count_violated_pairs",
    "selector_values",
    "mono_gadget_values",
)

_compiled = None
if not os.environ.get("BTL_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _pykernels


def backends():
    """Map backend name to module for every backend available here."""
    found = {"python": _pykernels}
    if _compiled is not None:
        found["cython"] = _compiled
    return found


wht_inplace = _impl.wht_inplace
first_violation = _impl.first_violation
violation_counts = _impl.violation_counts
upper_envelope = _impl.upper_envelope
lower_envelope = _impl.lower_envelope
violated_pairs = _impl.violated_pairs
count_violated_pairs = _impl.count_violated_pairs
selector_values = _impl.selector_values
mono_gadget_values = _impl.mono_gadget_values
