"""Kernel backend selection.

The compiled extension is used when importable; ``WREATHWALK_PURE=1`` forces
the pure-Python twin.  Both expose ``TreeWalk``, ``held_karp`` and ``LAMP_OP``.
"""

import os

if os.environ.get("WREATHWALK_PURE"):
    from ._pykernel import LAMP_OP, TreeWalk, held_karp

    BACKEND = "python"
else:
    try:
        from ._ckernel import LAMP_OP, TreeWalk, held_karp

        BACKEND = "cython"
    except ImportError:
        from ._pykernel import LAMP_OP, TreeWalk, held_karp

        BACKEND = "python"

__all__ = ["BACKEND", "LAMP_OP", "TreeWalk", "held_karp"]
