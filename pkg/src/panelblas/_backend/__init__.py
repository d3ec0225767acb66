"""Backend selection: compiled core if available, pure Python otherwise.

Set PANELBLAS_BACKEND=py (or =c) to force a choice; the default "auto"
prefers the compiled extension.  Both twins expose the same function
surface and produce bit-identical results.
"""

import os

from . import pycore

_choice = os.environ.get("PANELBLAS_BACKEND", "auto").lower()

if _choice not in ("auto", "c", "py"):
    raise ValueError(f"PANELBLAS_BACKEND must be auto, c or py, got {_choice!r}")

core = None
if _choice in ("auto", "c"):
    try:
        from . import ccore as core
    except ImportError:
        if _choice == "c":
            raise
        core = None
if core is None:
    core = pycore

BACKEND = "c" if core is not pycore else "py"


def backend_name():
    return BACKEND


def get_core(name=None):
    """Return a backend module by name ('c' or 'py'); default the active one."""
    if name is None:
        return core
    if name == "py":
        return pycore
    if name == "c":
        from . import ccore
        return ccore
    raise ValueError(f"unknown backend {name!r}")
