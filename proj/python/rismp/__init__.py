"""Multiport-network RIS uplink simulator and CSI-free optimizer."""

try:
    from ._rismp import *  # noqa: F401,F403
    from ._rismp import __doc__ as _doc
except ImportError:  # build-tree layout: extension next to the package
    from _rismp import *  # noqa: F401,F403
    from _rismp import __doc__ as _doc

__doc__ = _doc
