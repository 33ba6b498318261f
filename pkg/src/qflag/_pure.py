"""Pure-Python span/elimination kernels.

Two implementations of the same incremental-echelon interface:

* FieldSpanBasis -- generic over any exact field element supporting
  +, -, *, /, bool (symbolic Laurent fractions use this one);
* FractionSpanBasis -- Fraction vectors re-encoded as integer rows with a
  common denominator, eliminated by cross-multiplication with gcd stripping.
  This is the reference twin of the compiled kernel in _speedups.pyx and must
  stay behaviorally identical to it.

A stored row is pivot-normalized (value 1 at its pivot, the row's largest
key), so one descending elimination pass terminates: eliminating the largest
pivot key only introduces smaller keys.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class FieldSpanBasis:
    """Incremental echelon span of sparse vectors {key: field element}."""

    def __init__(self):
        self._rows = {}  # pivot key -> row dict, row[pivot] == 1

    @property
    def dim(self):
        return len(self._rows)

    def reduce(self, vec):
        v = {k: c for k, c in vec.items() if c}
        rows = self._rows
        while v:
            k = max((j for j in v if j in rows), default=None)
            if k is None:
                break
            c = v.pop(k)
            for j, rv in rows[k].items():
                if j == k:
                    continue
                cur = v.get(j)
                nv = -c * rv if cur is None else cur - c * rv
                if nv:
                    v[j] = nv
                else:
                    v.pop(j, None)
        return v

    def insert(self, vec):
        """Add vec to the span; returns the stored reduced row if the span
        grew, else None."""
        r = self.reduce(vec)
        if not r:
            return None
        k = max(r)
        pk = r[k]
        row = {j: c / pk for j, c in r.items()}
        self._rows[k] = row
        return row

    def rows(self):
        return [dict(r) for r in self._rows.values()]


class FractionSpanBasis:
    """Same interface, Fraction-only, integer-row internals."""

    def __init__(self):
        self._rows = {}  # pivot key -> (den, {key: int num}), num[pivot] == den

    @property
    def dim(self):
        return len(self._rows)

    @staticmethod
    def _to_int(vec):
        den = 1
        for f in vec.values():
            d = f.denominator
            den = den // gcd(den, d) * d
        num = {}
        for k, f in vec.items():
            n = f.numerator * (den // f.denominator)
            if n:
                num[k] = n
        return den, num

    def _reduce_int(self, dv, nv):
        rows = self._rows
        while nv:
            k = max((j for j in nv if j in rows), default=None)
            if k is None:
                break
            dr, nr = rows[k]
            c = nv.pop(k)
            if dr != 1:
                for j in nv:
                    nv[j] *= dr
            for j, rv in nr.items():
                if j == k:
                    continue
                n = nv.get(j, 0) - c * rv
                if n:
                    nv[j] = n
                else:
                    nv.pop(j, None)
            dv *= dr
            g = dv
            for n in nv.values():
                g = gcd(g, n)
                if g == 1:
                    break
            if g > 1:
                dv //= g
                for j in nv:
                    nv[j] //= g
        return dv, nv

    def reduce(self, vec):
        dv, nv = self._reduce_int(*self._to_int(vec))
        return {k: Fraction(n, dv) for k, n in nv.items()}

    def insert(self, vec):
        dv, nv = self._reduce_int(*self._to_int(vec))
        if not nv:
            return None
        k = max(nv)
        den = nv[k]
        g = abs(den)
        for n in nv.values():
            g = gcd(g, n)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g != 1:
            den //= g
            nv = {j: n // g for j, n in nv.items()}
        self._rows[k] = (den, nv)
        return {j: Fraction(n, den) for j, n in nv.items()}

    def rows(self):
        return [{j: Fraction(n, den) for j, n in nv.items()}
                for den, nv in self._rows.values()]
