"""Kernel backend selection.

The straightening/rank kernel exists twice: a compiled Cython extension
(_kernel_c) and a pure-Python twin (_kernel_py) with identical interfaces.
By default the compiled one is used when importable.  Set

    AFFINE_BASIS_KERNEL=python   force the pure-Python kernel
    AFFINE_BASIS_KERNEL=c        require the compiled kernel (ImportError if
                                 it was not built)

to override.  `BACKEND` reports which one is active.
"""

import os

_choice = os.environ.get("AFFINE_BASIS_KERNEL", "").strip().lower()

if _choice in ("py", "python"):
    from . import _kernel_py as _impl
elif _choice == "c":
    from . import _kernel_c as _impl  # type: ignore[attr-defined]
elif _choice in ("", "auto"):
    try:
        from . import _kernel_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl
else:
    raise ImportError(
        "unknown AFFINE_BASIS_KERNEL value %r (use 'c' or 'python')" % _choice
    )

BACKEND = _impl.BACKEND
VermaKernel = _impl.VermaKernel
UKernel = _impl.UKernel
rank_int = _impl.rank_int


def available_backends():
    names = ["python"]
    try:
        from . import _kernel_c  # noqa: F401

        names.insert(0, "c")
    except ImportError:
        pass
    return names
