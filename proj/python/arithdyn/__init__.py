"""Exact heights, D-ratios, joint regularity and preperiodic-point search."""

try:
    from ._arithdyn import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _arithdyn import *  # noqa: F401,F403  (build-tree layout)
