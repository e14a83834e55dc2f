"""Finite A-infinity categories, functors, bar/cobar constructions and rectification."""

from .scalars import QQ, GF, Field
from .category import AInftyCategory, Mor, check_catrel, cohomology

__all__ = ["QQ", "GF", "Field", "AInftyCategory", "Mor", "check_catrel", "cohomology"]
