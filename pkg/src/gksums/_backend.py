"""Kernel selection: the Cython extension when it imports, numpy otherwise."""

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _fallback}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

_active = "compiled" if _compiled is not None else "python"


def available() -> list[str]:
    return sorted(_BACKENDS)


def active() -> str:
    return _active


def use(name: str) -> str:
    """Switch the process-wide backend; returns the previous name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; choose from {available()}")
    prev, _active = _active, name
    return prev


def kernels(name: str | None = None):
    return _BACKENDS[name or _active]
