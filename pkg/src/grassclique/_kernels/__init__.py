"""Kernel backend selection.

The hot loops (cyclic-shift overlap scans, clique branch-and-bound) exist
twice: a compiled Cython core and a pure-Python twin with identical
semantics.  The compiled one is preferred when importable; set
GRASSCLIQUE_PURE=1 to force the fallback (the benchmark and the parity
tests rely on this).
"""

import os

if os.environ.get("GRASSCLIQUE_PURE"):
    from . import pure as backend
else:
    try:
        from . import _speed as backend  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as backend

BACKEND_NAME = backend.NAME

max_autocorrelation = backend.max_autocorrelation
max_crosscorrelation = backend.max_crosscorrelation
compat_rows = backend.compat_rows
solve_max_weight_clique = backend.solve_max_weight_clique


def get_backend(name: str):
    """Fetch a specific backend module ("pure" or "speed"); None if absent."""
    if name == "pure":
        from . import pure

        return pure
    if name == "speed":
        try:
            from . import _speed

            return _speed
        except ImportError:
            return None
    raise ValueError(f"unknown backend {name!r}")
