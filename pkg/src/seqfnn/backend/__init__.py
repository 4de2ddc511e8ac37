"""Kernel backend selection.

``impl`` points at the active kernel module: the compiled Cython extension
when it built, else the NumPy reference in ``pure``. Set the environment
variable ``SEQFNN_BACKEND=python`` (or ``compiled``) before import to force
one, or call :func:`use` at runtime (benchmarks and equivalence tests do).

Structure learning deliberately does not route through ``impl``: its
coverage decisions always use the NumPy kernels so that the learned
structure is independent of which backend is installed.
"""

from __future__ import annotations

import os

from . import pure

try:
    from . import _speedups  # type: ignore[attr-defined]
except ImportError:
    _speedups = None

_BACKENDS = {"python": pure}
if _speedups is not None:
    _BACKENDS["compiled"] = _speedups

impl = pure
name = "python"


def available() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def use(backend: str):
    """Select the active kernel set; returns the chosen module."""
    global impl, name
    if backend not in _BACKENDS:
        raise ValueError(f"backend {backend!r} not available (have {available()})")
    impl = _BACKENDS[backend]
    name = backend
    return impl


_requested = os.environ.get("SEQFNN_BACKEND")
if _requested:
    use(_requested)
elif _speedups is not None:
    use("compiled")
