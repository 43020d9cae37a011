"""Kernel backend selection.

The compiled extension (ftspan._core) is preferred; the pure-Python
implementation is a drop-in replacement selected automatically when the
extension is missing.  ``load_backend`` gives tests and benchmarks explicit
access to either one.
"""

from __future__ import annotations

try:
    from ftspan import _core as _backend
except ImportError:  # extension not built; the pure fallback is fully featured
    from ftspan import _pure as _backend

BACKEND = _backend.BACKEND
HopMatrix = _backend.HopMatrix
count_far_pairs = _backend.count_far_pairs
insert_pairs = _backend.insert_pairs
count_far_unit = _backend.count_far_unit


def load_backend(name: str | None = None):
    """Return the kernel module for ``name`` ('compiled', 'pure', or None
    for the default selection)."""
    if name is None:
        return _backend
    if name == "pure":
        from ftspan import _pure

        return _pure
    if name == "compiled":
        from ftspan import _core

        return _core
    raise ValueError(f"unknown kernel backend {name!r}")
