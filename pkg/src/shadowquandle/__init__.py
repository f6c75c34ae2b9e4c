"""Shadow quandle colorings and cocycle invariants of knotoids and multi-linkoids."""

from .algebra import (
    AbelianGroup,
    Cocycle,
    GroupRingElement,
    Quandle,
    ValidationError,
    XSet,
    enumerate_quandles,
    format_group_ring,
    make_cocycle,
    make_quandle,
    make_xset,
)

__all__ = [
    "AbelianGroup",
    "Cocycle",
    "GroupRingElement",
    "Quandle",
    "ValidationError",
    "XSet",
    "enumerate_quandles",
    "format_group_ring",
    "make_cocycle",
    "make_quandle",
    "make_xset",
]

__version__ = "0.1.0"
