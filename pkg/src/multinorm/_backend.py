"""Select the ascent-kernel backend: compiled extension or numpy fallback.

The compiled module is an optional speed-up with identical semantics; it is
chosen automatically when the build produced it.  set_backend("python")
forces the numpy path, which the backend-agreement tests rely on.
"""

from __future__ import annotations

from . import _kernels_py

_BACKENDS = {"python": _kernels_py}

try:  # built by setup.py when Cython and a C compiler are present
    from . import _kernels as _compiled

    _BACKENDS["compiled"] = _compiled
except Exception:  # pragma: no cover - depends on the build environment
    _compiled = None

_active = _BACKENDS.get("compiled", _kernels_py)


def kernels():
    """The module providing power_ascent and pq_ascent."""
    return _active


def current_backend() -> str:
    for name, mod in _BACKENDS.items():
        if mod is _active:
            return name
    return "python"


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def set_backend(name: str) -> str:
    """Switch kernel implementations; returns the previously active name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_BACKENDS)}")
    prev = current_backend()
    _active = _BACKENDS[name]
    return prev
