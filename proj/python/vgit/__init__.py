"""Exact GIT chambers and wall crossings for torus actions on projective space.

Numbers go in as ints, Fractions or "a/b" strings and come back as Fractions.
"""

from ._core import (
    DomainError,
    InputError,
    __version__,
    ample_cone,
    cells,
    chambers,
    classify,
    classify_via_pluecker,
    config_stability,
    config_walls,
    cross_wall,
    git_class,
    gm_check,
    nonempty_ss,
    plot_svg,
    stratify,
    walls,
)

__all__ = [
    "DomainError",
    "InputError",
    "__version__",
    "ample_cone",
    "cells",
    "chambers",
    "classify",
    "classify_via_pluecker",
    "config_stability",
    "config_walls",
    "cross_wall",
    "git_class",
    "gm_check",
    "nonempty_ss",
    "plot_svg",
    "stratify",
    "walls",
]
