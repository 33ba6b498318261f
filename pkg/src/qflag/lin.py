"""Kernel selection for exact span/elimination.

Fixed-q scalars (Fractions) get the integer-row kernel, compiled if the
extension built, pure otherwise; symbolic scalars always use the generic
field kernel.  Set QFLAG_PURE=1 to force the pure twin (used by the
benchmark and the equivalence tests).
"""

from __future__ import annotations

import os

from qflag._pure import FieldSpanBasis
from qflag._pure import FractionSpanBasis as _PureFractionSpanBasis

_COMPILED = None
if not os.environ.get("QFLAG_PURE"):
    try:
        from qflag._speedups import FractionSpanBasis as _COMPILED  # type: ignore
    except ImportError:
        _COMPILED = None


def kernel_name() -> str:
    return "compiled" if _COMPILED is not None else "pure"


def span_basis(field):
    """A fresh SpanBasis suited to the field's element type."""
    if getattr(field, "fraction_elements", False):
        return (_COMPILED or _PureFractionSpanBasis)()
    return FieldSpanBasis()


class KeyIndexer:
    """Deterministic packing of hashable keys into dense ints, in first-seen
    order (elimination pivots then depend only on insertion order)."""

    def __init__(self):
        self._idx = {}
        self._keys = []

    def index(self, key) -> int:
        i = self._idx.get(key)
        if i is None:
            i = len(self._keys)
            self._idx[key] = i
            self._keys.append(key)
        return i

    def key(self, i):
        return self._keys[i]

    def __len__(self):
        return len(self._keys)
