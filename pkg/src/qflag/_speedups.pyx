# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of qflag._pure.FractionSpanBasis.

Same integer-row elimination, with the dict loops compiled.  Values stay
arbitrary-precision Python ints (exactness is the whole point); the speedup
comes from loop dispatch, not from narrowing the arithmetic.
"""

from fractions import Fraction
from math import gcd


cdef class FractionSpanBasis:
    cdef dict _rows  # pivot key -> (den, {key: int num}), num[pivot] == den

    def __cinit__(self):
        self._rows = {}

    @property
    def dim(self):
        return len(self._rows)

    @staticmethod
    def _to_int(dict vec):
        cdef object den = 1
        cdef object f, k, n
        for f in vec.values():
            d = f.denominator
            den = den // gcd(den, d) * d
        cdef dict num = {}
        for k, f in vec.items():
            n = f.numerator * (den // f.denominator)
            if n:
                num[k] = n
        return den, num

    cdef tuple _reduce_int(self, object dv, dict nv):
        cdef dict rows = self._rows
        cdef dict nr
        cdef object k, j, rv, c, n, g, dr, best
        while nv:
            best = None
            for j in nv:
                if j in rows and (best is None or j > best):
                    best = j
            if best is None:
                break
            k = best
            dr, nr = rows[k]
            c = nv.pop(k)
            if dr != 1:
                for j in nv:
                    nv[j] = nv[j] * dr
            for j, rv in nr.items():
                if j == k:
                    continue
                n = nv.get(j, 0) - c * rv
                if n:
                    nv[j] = n
                else:
                    nv.pop(j, None)
            dv = dv * dr
            g = dv
            for n in nv.values():
                g = gcd(g, n)
                if g == 1:
                    break
            if g > 1:
                dv = dv // g
                for j in nv:
                    nv[j] = nv[j] // g
        return dv, nv

    def reduce(self, vec):
        den, num = FractionSpanBasis._to_int(dict(vec))
        dv, nv = self._reduce_int(den, num)
        return {k: Fraction(n, dv) for k, n in nv.items()}

    def insert(self, vec):
        cdef object dv, k, n, g, den
        cdef dict nv
        den, num = FractionSpanBasis._to_int(dict(vec))
        dv, nv = self._reduce_int(den, num)
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
            nv = {j: m // g for j, m in nv.items()}
        self._rows[k] = (den, nv)
        return {j: Fraction(m, den) for j, m in nv.items()}

    def rows(self):
        return [{j: Fraction(n, den) for j, n in nv.items()}
                for den, nv in self._rows.values()]
