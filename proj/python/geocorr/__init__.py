"""Geometric correlation on Cl(3,0): detection of outer rotational
misalignment between 3D vector fields (and color images treated as
fields over the pixel grid)."""

from ._geocorr import *  # noqa: F401,F403
from ._geocorr import __doc__ as _core_doc  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
