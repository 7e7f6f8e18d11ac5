"""Hard-instance constructions for property-testing lower bounds, with exact checks."""

__version__ = "0.1.0"

from .core import BFunc, PointIndex  # noqa: E402
from .kernels import BACKEND  # noqa: E402

__all__ = ["BACKEND", "BFunc", "PointIndex", "__version__"]
