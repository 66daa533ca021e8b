"""Kernel backend selection.

The simulator's inner loops (uniform -> normal transform, per-sample
summary extraction) run either through the compiled extension
``fivenum._fast`` or through the pure NumPy fallback.  Selection happens
once at import:

* ``FIVENUM_BACKEND=pure``      force the NumPy kernels
* ``FIVENUM_BACKEND=compiled``  require the extension (ImportError if absent)
* unset / ``auto``              use the extension when importable

``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

from . import pure

_choice = os.environ.get("FIVENUM_BACKEND", "auto").lower()

if _choice not in {"auto", "pure", "compiled"}:
    raise ValueError(f"FIVENUM_BACKEND must be auto, pure or compiled, "
                     f"got {_choice!r}")

if _choice == "pure":
    _impl = pure
else:
    try:
        from .. import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = pure

quantile_transform = _impl.quantile_transform
block_summaries = _impl.block_summaries


def backend_name() -> str:
    """Active backend: ``"compiled"`` or ``"pure"``."""
    return _impl.BACKEND


def available_backends() -> list[str]:
    names = ["pure"]
    try:
        from .. import _fast  # noqa: F401
        names.insert(0, "compiled")
    except ImportError:
        pass
    return names
