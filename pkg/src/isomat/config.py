"""Desk-scale caps.

Defaults can be overridden with the ``ISOMAT_CAP`` environment variable, either
as a bare integer (the orbit-size cap) or as ``name=value`` pairs separated by
commas, e.g. ``ISOMAT_CAP="orbit=5000,n=8"``.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

DEFAULTS = {
    "orbit": 10**6,   # representatives per orbit search
    "n": 10,          # vertices for orbit searches
    "canon": 14,      # vertices for canonical forms
    "nullity": 22,    # cycle-space dimension for circuit enumeration
    "scan": 8,        # vertices for 3^n / 6^n transversal scans
    "ground": 24,     # ground-set size for multimatroid enumerations
}


def _overrides() -> dict:
    raw = os.environ.get("ISOMAT_CAP", "").strip()
    if not raw:
        return {}
    if raw.isdigit():
        return {"orbit": int(raw)}
    out = {}
    for part in raw.split(","):
        name, _, value = part.partition("=")
        name = name.strip()
        if name in DEFAULTS and value.strip().isdigit():
            out[name] = int(value)
    return out


_LOCAL: dict = {}


def get_cap(name: str) -> int:
    if name in _LOCAL:
        return _LOCAL[name]
    return _overrides().get(name, DEFAULTS[name])


@contextmanager
def caps(**values):
    """Temporarily override caps in this process; takes precedence over ISOMAT_CAP."""
    saved = dict(_LOCAL)
    _LOCAL.update({k: v for k, v in values.items() if v is not None})
    try:
        yield
    finally:
        _LOCAL.clear()
        _LOCAL.update(saved)
