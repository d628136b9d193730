"""Certified trapezoid-defect bounds for geometrically convex derivatives.

Thin wrapper over the compiled ``_hhcert`` extension. Installed wheels
carry the extension inside this package; when running against a build
tree the extension sits on ``sys.path`` as a top-level module instead,
so fall back to that.
"""

try:
    from . import _hhcert as _impl
    from ._hhcert import *  # noqa: F401,F403
except ImportError:  # build-tree layout
    import _hhcert as _impl
    from _hhcert import *  # noqa: F401,F403

__version__ = "0.1.0"
__all__ = [name for name in dir(_impl) if not name.startswith("_")]
