"""Completely positive maps, completely semi-phi maps on concrete Hilbert
C*-modules, and their extensions."""

from ._semiphi import *  # noqa: F401,F403
from ._semiphi import __doc__  # noqa: F401
