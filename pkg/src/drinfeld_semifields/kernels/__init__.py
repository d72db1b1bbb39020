"""Hot loops: the compiled extension when it was built, else the numpy version."""

from __future__ import annotations

import os

from . import _gray_py

try:
    from . import _gray as _compiled
except ImportError:  # extension not built
    _compiled = None

_FORCE = os.environ.get("DRINFELD_SEMIFIELDS_BACKEND", "").lower()

if _compiled is not None and _FORCE != "python":
    BACKEND = "compiled"
    gray_scan = _compiled.gray_scan
    rank_mod_p = _compiled.rank_mod_p
else:
    BACKEND = "python"
    gray_scan = _gray_py.gray_scan
    rank_mod_p = _gray_py.rank_mod_p


def backends() -> dict:
    """Available implementations by name."""
    out = {"python": _gray_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


__all__ = ["BACKEND", "backends", "gray_scan", "rank_mod_p"]
