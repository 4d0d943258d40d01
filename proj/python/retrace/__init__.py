"""Derivatives of regular expressions over independence alphabets.

Thin re-export of the compiled module.  Installed wheels place ``_retrace``
inside this package; in-tree builds put it on ``PYTHONPATH`` instead.
"""

try:
    from ._retrace import *  # noqa: F401,F403
    from ._retrace import __doc__  # noqa: F401
except ImportError:
    from _retrace import *  # noqa: F401,F403
    from _retrace import __doc__  # noqa: F401
