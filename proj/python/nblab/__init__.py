"""Nyman-Beurling / Baez-Duarte numerical laboratory (pybind11 core)."""

try:
    from ._nblab import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _nblab import *  # noqa: F401,F403  (build-tree layout via PYTHONPATH)
