"""Quantized coordinate algebra elements as exact functionals.

An element is a sum of primitive terms (word, fun, vec):

* word -- a tensor word of registered module slots, each slot a pair
  (module id, conjugated?),
* vec  -- a sparse vector in the word's tensor space (dict key -> scalar,
  keys are index tuples, one index per slot),
* fun  -- a sparse functional on the same space.

The term is the function X |-> fun(pi(X) vec) on the quantized enveloping
algebra; products concatenate words (matrix coefficients multiply through the
coproduct), the unit is the empty word.  Conjugated slots act through the bar
transport E -> -F, F -> -E, K -> K^(-1) on the same basis indices, so the
star of a term is purely syntactic: reverse the word (flipping conjugation
flags) and reverse every key; coefficients are untouched because scalars are
real.

Zero testing never materializes the full dual: an element (or a two-leg
tensor of elements) vanishes on the whole enveloping algebra iff its
aggregated functionals are orthogonal to the generator closure of the stacked
vector legs -- an exact cyclic-module computation done per weight block (the
homogeneous split is sound for symbolic q and for rational 0 < q < 1, where
distinct integer weight pairings give distinct powers of q; it is unsound at
q = 1, so zero tests refuse classical scalars).  The closure dimension is the
reported certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from qflag import cartan
from qflag.lin import KeyIndexer, span_basis
from qflag.repn import CapExceeded, HWModule

DEFAULT_CAP = 6000


@dataclass
class ZeroCertificate:
    zero: bool
    closure_dims: tuple[int, ...]
    groups: int
    witness: str | None = None

    def __bool__(self):
        return self.zero


class _SlotData:
    """Action data for one (module, conjugated) slot."""

    def __init__(self, m: HWModule, barred: bool, rs):
        rank = rs.rank
        sgn = -1 if barred else 1
        self.dim = m.dim
        if barred:
            self.weights = [tuple(-x for x in w) for w in m.weights]
        else:
            self.weights = list(m.weights)
        two_rho = cartan.two_rho_root(rs)
        self.r2exp = [cartan.form_rw(rs, two_rho, w) for w in self.weights]
        self.kexp = {}
        self.e_cols = {}
        self.f_cols = {}
        for i in range(1, rank + 1):
            self.kexp[i] = [sgn * m.k_exp(i, k) for k in range(m.dim)]
            if barred:
                ec = [tuple((l, -c) for l, c in m.f_col(i, k))
                      for k in range(m.dim)]
                fc = [tuple((l, -c) for l, c in m.e_col(i, k))
                      for k in range(m.dim)]
            else:
                ec = [m.e_col(i, k) for k in range(m.dim)]
                fc = [m.f_col(i, k) for k in range(m.dim)]
            self.e_cols[i] = ec
            self.f_cols[i] = fc
        self.e_rows = {i: _transpose(self.e_cols[i], m.dim)
                       for i in range(1, rank + 1)}
        self.f_rows = {i: _transpose(self.f_cols[i], m.dim)
                       for i in range(1, rank + 1)}


def _transpose(cols, dim):
    rows = [[] for _ in range(dim)]
    for src, col in enumerate(cols):
        for l, c in col:
            rows[l].append((src, c))
    return [tuple(r) for r in rows]


class CoordAlgebra:
    """Registry of module slots plus the caches that make repeated identity
    checks cheap (closures are shared across checks with the same legs)."""

    def __init__(self, rs, field):
        self.rs = rs
        self.field = field
        self.modules: list[HWModule] = []
        self._slots = {}
        self._closure_cache = {}
        self._haar_cache = {}

    def register(self, m: HWModule) -> int:
        if m.rs is not self.rs and m.rs != self.rs:
            raise ValueError("module belongs to a different root system")
        if m.field is not self.field:
            raise ValueError("module built over a different scalar field")
        self.modules.append(m)
        return len(self.modules) - 1

    def slot(self, mid, barred) -> _SlotData:
        key = (mid, bool(barred))
        out = self._slots.get(key)
        if out is None:
            out = _SlotData(self.modules[mid], barred, self.rs)
            self._slots[key] = out
        return out

    # -- elements -------------------------------------------------------------

    def unit(self):
        one = self.field.one
        return CoordElem(self, (((), {(): one}, {(): one}),))

    def zero(self):
        return CoordElem(self, ())

    def mc(self, mid, i, j, barred=False):
        """The matrix coefficient sending X to (pi(X))_ij on the (possibly
        conjugated) module mid; basis indices are 0-based."""
        one = self.field.one
        word = ((mid, bool(barred)),)
        return CoordElem(self, ((word, {(i,): one}, {(j,): one}),))

    # -- generator action on keys ----------------------------------------------

    def _gen_on_key(self, word, gen, key):
        """pi(gen) applied to the basis vector `key` of the tensor word;
        returns [(new_key, coeff)].  gen: ("E", i) | ("F", i) | ("K", i, e)
        | ("Kvec", root_coords)."""
        field = self.field
        kind = gen[0]
        out = []
        if kind == "E":
            i = gen[1]
            for j in range(len(word)):
                col = self.slot(*word[j]).e_cols[i][key[j]]
                if not col:
                    continue
                exp = 0
                for mslot in range(j + 1, len(word)):
                    exp += self.slot(*word[mslot]).kexp[i][key[mslot]]
                f = field.q_power(exp)
                for l, c in col:
                    out.append((key[:j] + (l,) + key[j + 1:], c * f))
        elif kind == "F":
            i = gen[1]
            for j in range(len(word)):
                col = self.slot(*word[j]).f_cols[i][key[j]]
                if not col:
                    continue
                exp = 0
                for mslot in range(j):
                    exp -= self.slot(*word[mslot]).kexp[i][key[mslot]]
                f = field.q_power(exp)
                for l, c in col:
                    out.append((key[:j] + (l,) + key[j + 1:], c * f))
        elif kind == "K":
            i, e = gen[1], gen[2]
            exp = e * sum(self.slot(*word[j]).kexp[i][key[j]]
                          for j in range(len(word)))
            out.append((key, field.q_power(exp)))
        elif kind == "Kvec":
            coeffs = gen[1]
            exp = 0
            for j in range(len(word)):
                sd = self.slot(*word[j])
                for a, ca in enumerate(coeffs, start=1):
                    if ca:
                        exp += ca * sd.kexp[a][key[j]]
            out.append((key, field.q_power(exp)))
        else:
            raise ValueError(f"unknown generator {gen}")
        return out

    def _gen_on_key_dual(self, word, gen, key):
        """fun -> fun o pi(gen) on a functional key: the transposed action."""
        field = self.field
        kind = gen[0]
        out = []
        if kind == "E":
            i = gen[1]
            for j in range(len(word)):
                row = self.slot(*word[j]).e_rows[i][key[j]]
                if not row:
                    continue
                exp = 0
                for mslot in range(j + 1, len(word)):
                    exp += self.slot(*word[mslot]).kexp[i][key[mslot]]
                f = field.q_power(exp)
                for src, c in row:
                    out.append((key[:j] + (src,) + key[j + 1:], c * f))
        elif kind == "F":
            i = gen[1]
            for j in range(len(word)):
                row = self.slot(*word[j]).f_rows[i][key[j]]
                if not row:
                    continue
                exp = 0
                for mslot in range(j):
                    exp -= self.slot(*word[mslot]).kexp[i][key[mslot]]
                f = field.q_power(exp)
                for src, c in row:
                    out.append((key[:j] + (src,) + key[j + 1:], c * f))
        else:  # K / Kvec are diagonal, transpose is itself
            return self._gen_on_key(word, gen, key)
        return out

    def _apply_gen_vec(self, word, gen, vec, dual=False):
        act = self._gen_on_key_dual if dual else self._gen_on_key
        zero = self.field.zero
        out = {}
        for key, c in vec.items():
            for nk, f in act(word, gen, key):
                nv = out.get(nk, zero) + c * f
                if nv:
                    out[nk] = nv
                else:
                    out.pop(nk, None)
        return out

    def key_weight(self, word, key):
        wt = [0] * self.rs.rank
        for j, slot in enumerate(word):
            for a, x in enumerate(self.slot(*slot).weights[key[j]]):
                wt[a] += x
        return tuple(wt)

    # -- invariant integral -----------------------------------------------------

    def _haar_data(self, word):
        """Columns spanning the zero-weight block as invariants + generator
        images; cached per word."""
        data = self._haar_cache.get(word)
        if data is not None:
            return data
        rank = self.rs.rank
        field = self.field
        zero_wt = (0,) * rank
        keys0 = sorted(self._keys_of_weight(word, zero_wt))
        pack = {k: n for n, k in enumerate(keys0)}

        # invariants: joint kernel of the raising generators on the block
        # (tag trick: a residual supported on the negative tag keys alone is
        # a dependency among the images, i.e. a kernel vector)
        ker_basis = span_basis(field)
        aux = KeyIndexer()
        inv_cols = []
        for n, key in enumerate(keys0):
            img = {}
            for i in range(1, rank + 1):
                for nk, c in self._gen_on_key(word, ("E", i), key):
                    img[(i, nk)] = img.get((i, nk), field.zero) + c
            v = {aux.index(pk): c for pk, c in img.items() if c}
            v[-1 - n] = field.one
            r = ker_basis.insert(v)
            if r is not None and all(k < 0 for k in r):
                inv_cols.append({-1 - t: c for t, c in r.items()})
        # complement: images of E_i and F_i landing in weight zero
        compl_cols = []
        for i in range(1, rank + 1):
            for gen, srcwt in (("E", [-x for x in cartan.root_to_fund(
                    self.rs, cartan.simple_root(self.rs, i))]),
                    ("F", list(cartan.root_to_fund(
                        self.rs, cartan.simple_root(self.rs, i))))):
                for key in sorted(self._keys_of_weight(word, tuple(srcwt))):
                    col = {}
                    for nk, c in self._gen_on_key(word, (gen, i), key):
                        n = pack.get(nk)
                        if n is None:
                            raise AssertionError("image left the zero block")
                        col[n] = col.get(n, field.zero) + c
                    col = {k: c for k, c in col.items() if c}
                    if col:
                        compl_cols.append(col)
        # decomposition basis with tags identifying the invariant part
        dec = span_basis(field)
        ninv = len(inv_cols)
        for t, col in enumerate(inv_cols + compl_cols):
            v = dict(col)
            v[-1 - t] = field.one
            dec.insert(v)
        data = (keys0, pack, ninv, inv_cols, dec)
        self._haar_cache[word] = data
        return data

    def _keys_of_weight(self, word, wt):
        out = []
        slots = [self.slot(*s) for s in word]
        if not word:
            return [()] if wt == (0,) * self.rs.rank else []

        def rec(j, key, acc):
            if j == len(slots):
                if acc == wt:
                    out.append(key)
                return
            for idx in range(slots[j].dim):
                w = slots[j].weights[idx]
                rec(j + 1, key + (idx,),
                    tuple(a + x for a, x in zip(acc, w)))

        rec(0, (), (0,) * self.rs.rank)
        return out

    def haar(self, elem: CoordElem):
        """The invariant integral: project each vector leg onto the trivial
        isotypic component along the span of generator images, then pair."""
        field = self.field
        total = field.zero
        for word, fun, vec in elem.terms:
            if not word:
                total = total + _pair(field, fun, vec)
                continue
            keys0, pack, ninv, inv_cols, dec = self._haar_data(word)
            zero_wt = (0,) * self.rs.rank
            target = {pack[k]: c for k, c in vec.items()
                      if k in pack}
            if not target:
                continue
            r = dec.reduce(target)
            if any(k >= 0 for k in r):
                raise AssertionError("zero-weight block decomposition failed")
            invpart = {}
            for tk, c in r.items():
                t = -1 - tk
                if t < ninv:
                    for n, cc in inv_cols[t].items():
                        nv = invpart.get(n, field.zero) - c * cc
                        if nv:
                            invpart[n] = nv
                        else:
                            invpart.pop(n, None)
            val = field.zero
            for k, c in fun.items():
                n = pack.get(k)
                if n is not None and n in invpart:
                    val = val + c * invpart[n]
            total = total + val
        return total

    # -- zero testing ------------------------------------------------------------

    def tensor_zero_test(self, tensor_terms, cap=DEFAULT_CAP):
        """Exact zero test for sums of tensors of elements (1 or 2 legs).

        tensor_terms: iterable of (coeff, (elem_0, ..., elem_n)).  Returns a
        ZeroCertificate whose closure_dims records the per-leg certificate.
        """
        field = self.field
        if getattr(field, "is_classical", False):
            raise ValueError(
                "zero tests require symbolic q or rational 0 < q < 1 "
                "(weight separation fails at q = 1)")
        nsides = None
        groups = {}
        for coeff, legs in tensor_terms:
            if nsides is None:
                nsides = len(legs)
            elif len(legs) != nsides:
                raise ValueError("mixed tensor degrees in one zero test")
            for combo in _product([e.terms for e in legs]):
                c0 = coeff
                words = tuple(t[0] for t in combo)
                vecs = tuple(_canon_vec(t[2]) for t in combo)
                g = groups.setdefault((words, vecs), {})
                for fkeys, fc in _product_items([t[1] for t in combo]):
                    nv = g.get(fkeys, field.zero) + c0 * fc
                    if nv:
                        g[fkeys] = nv
                    else:
                        g.pop(fkeys, None)
        groups = {k: v for k, v in groups.items() if v}
        if nsides is None or not groups:
            return ZeroCertificate(True, (), 0)
        if nsides > 2:
            raise NotImplementedError(
                "zero tests are implemented for 1- and 2-leg tensors")
        order = sorted(groups, key=_group_sort_key)

        sides = []
        for s in range(nsides):
            sig = tuple((k[0][s], k[1][s]) for k in order)
            sides.append(self._closure(sig, cap))

        if nsides == 1:
            indexer, basis = sides[0]
            G = {}
            for gi, k in enumerate(order):
                for fkeys, c in groups[k].items():
                    G[indexer.index((gi, fkeys[0]))] = c
            for row in basis.rows():
                val = field.zero
                small, big = (G, row) if len(G) <= len(row) else (row, G)
                for pk, c in small.items():
                    gc = big.get(pk)
                    if gc is not None:
                        val = val + gc * c
                if val:
                    return ZeroCertificate(
                        False, (basis.dim,), len(order),
                        witness=f"pairs to {val} on a closure vector")
            return ZeroCertificate(True, (basis.dim,), len(order))

        (ix0, b0), (ix1, b1) = sides
        D = {}
        for gi, k in enumerate(order):
            for (k0, k1), c in groups[k].items():
                p0 = ix0.index((gi, k0))
                p1 = ix1.index((gi, k1))
                D.setdefault(p0, {})[p1] = c
        rows1 = b1.rows()
        rows0 = b0.rows()
        # weight bucketing: a closure row is weight-homogeneous, and a
        # functional key pairs only with vectors carrying the same key
        sets1 = [set(r) for r in rows1]
        for r0 in rows0:
            u = {}
            for p0, c0 in r0.items():
                d = D.get(p0)
                if d:
                    for p1, c in d.items():
                        u[p1] = u.get(p1, field.zero) + c0 * c
            u = {k: v for k, v in u.items() if v}
            if not u:
                continue
            uk = set(u)
            for r1, s1 in zip(rows1, sets1):
                hit = uk & s1
                if not hit:
                    continue
                val = field.zero
                for p1 in hit:
                    val = val + u[p1] * r1[p1]
                if val:
                    return ZeroCertificate(
                        False, (b0.dim, b1.dim), len(order),
                        witness=f"pairs to {val} on a closure pair")
        return ZeroCertificate(True, (b0.dim, b1.dim), len(order))

    def is_zero(self, elem: CoordElem, cap=DEFAULT_CAP) -> ZeroCertificate:
        return self.tensor_zero_test([(self.field.one, (elem,))], cap)

    def _closure(self, sig, cap):
        """Generator closure of the stacked vector legs described by sig:
        a tuple of (word, canonical vec items) blocks.  Cached."""
        cached = self._closure_cache.get(sig)
        if cached is not None:
            return cached
        field = self.field
        indexer = KeyIndexer()
        words = [w for w, _ in sig]
        by_wt = {}
        for gi, (word, vec_items) in enumerate(sig):
            for key, c in vec_items:
                wt = self.key_weight(word, key)
                blk = by_wt.setdefault(wt, {})
                pk = indexer.index((gi, key))
                blk[pk] = blk.get(pk, field.zero) + c
        basis = span_basis(field)
        queue = []
        for wt in sorted(by_wt):
            r = basis.insert(by_wt[wt])
            if r is not None:
                queue.append(r)
        gens = [("E", i) for i in range(1, self.rs.rank + 1)] + \
               [("F", i) for i in range(1, self.rs.rank + 1)]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for gen in gens:
                img = {}
                for pk, c in v.items():
                    gi, key = indexer.key(pk)
                    for nk, f in self._gen_on_key(words[gi], gen, key):
                        np = indexer.index((gi, nk))
                        nv = img.get(np, field.zero) + c * f
                        if nv:
                            img[np] = nv
                        else:
                            img.pop(np, None)
                if not img:
                    continue
                r = basis.insert(img)
                if r is not None:
                    if basis.dim > cap:
                        raise CapExceeded(
                            f"closure dimension exceeded the cap {cap}; "
                            "raise --cap or use an evaluated (fixed-q) run")
                    queue.append(r)
        self._closure_cache[sig] = (indexer, basis)
        return indexer, basis


# ---------------------------------------------------------------------------


def _pair(field, fun, vec):
    tot = field.zero
    if len(fun) > len(vec):
        fun, vec = vec, fun
    for k, c in fun.items():
        v = vec.get(k)
        if v is not None:
            tot = tot + c * v
    return tot


def _canon_vec(vec):
    return tuple(sorted(vec.items(), key=lambda kv: kv[0]))


def _group_sort_key(k):
    words, vecs = k
    return (words, tuple(tuple((kk, str(c)) for kk, c in v) for v in vecs))


def _product(lists):
    if not lists:
        yield ()
        return
    head, tail = lists[0], lists[1:]
    for t in head:
        for rest in _product(tail):
            yield (t,) + rest


def _product_items(funs):
    """Cartesian product over the item lists of several dicts, yielding
    (key_tuple, coeff_product)."""
    if not funs:
        yield (), 1
        return
    head, tail = funs[0], funs[1:]
    for k, c in head.items():
        for ks, cs in _product_items(tail):
            yield (k,) + ks, c * cs


class CoordElem:
    """A finite sum of primitive matrix-coefficient terms."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = tuple(terms)

    # -- ring structure ---------------------------------------------------------

    def _scalar(self, x):
        from fractions import Fraction
        if isinstance(x, (int, Fraction)):
            return self.alg.field.from_fraction(x)
        return x

    def __add__(self, other):
        if isinstance(other, CoordElem):
            if other.alg is not self.alg:
                raise ValueError("elements from different algebras")
            return CoordElem(self.alg, self.terms + other.terms)
        return NotImplemented

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CoordElem(self.alg, tuple(
            (w, {k: -c for k, c in f.items()}, v) for w, f, v in self.terms))

    def __mul__(self, other):
        if isinstance(other, CoordElem):
            if other.alg is not self.alg:
                raise ValueError("elements from different algebras")
            out = []
            for wa, fa, va in self.terms:
                for wb, fb, vb in other.terms:
                    out.append((wa + wb,
                                _outer(fa, fb),
                                _outer(va, vb)))
            return CoordElem(self.alg, out)
        c = self._scalar(other)
        return self.scale(c)

    def __rmul__(self, other):
        return self.scale(self._scalar(other))

    def scale(self, c):
        if not c:
            return self.alg.zero()
        return CoordElem(self.alg, tuple(
            (w, {k: c * x for k, x in f.items()}, v)
            for w, f, v in self.terms))

    def simplify(self):
        """Merge terms sharing (word, vector leg); drop zeros.  Vector legs
        are normalized (leading coefficient 1, the factor moved into the
        functional leg) so proportional legs merge and the result does not
        depend on how scalars were split across the two legs."""
        zero = self.alg.field.zero
        merged = {}
        for w, f, v in self.terms:
            v = {k: c for k, c in v.items() if c}
            f = {k: c for k, c in f.items() if c}
            if not v or not f:
                continue
            lead = v[min(v)]
            if lead != self.alg.field.one:
                v = {k: c / lead for k, c in v.items()}
                f = {k: c * lead for k, c in f.items()}
            key = (w, _canon_vec(v))
            g = merged.setdefault(key, {})
            for k, c in f.items():
                nv = g.get(k, zero) + c
                if nv:
                    g[k] = nv
                else:
                    g.pop(k, None)
        out = []
        for (w, vitems), f in sorted(merged.items(),
                                     key=lambda kv: _term_sort_key(kv[0])):
            if f:
                out.append((w, f, dict(vitems)))
        return CoordElem(self.alg, out)

    def canonical(self):
        """Hashable canonical form (scalars stringified; exact because the
        scalar string form is canonical)."""
        out = []
        for w, f, v in self.simplify().terms:
            out.append((w,
                        tuple(sorted((k, str(c)) for k, c in f.items())),
                        tuple(sorted((k, str(c)) for k, c in v.items()))))
        return tuple(out)

    # -- coalgebra-ish operations -------------------------------------------------

    def counit(self):
        field = self.alg.field
        tot = field.zero
        for _, f, v in self.terms:
            tot = tot + _pair(field, f, v)
        return tot

    def star(self):
        out = []
        for w, f, v in self.terms:
            nw = tuple((mid, not barred) for mid, barred in reversed(w))
            nf = {tuple(reversed(k)): c for k, c in f.items()}
            nv = {tuple(reversed(k)): c for k, c in v.items()}
            out.append((nw, nf, nv))
        return CoordElem(self.alg, out)

    def act_left(self, gen):
        """gen |> elem  (left regular action on the vector legs)."""
        alg = self.alg
        out = []
        for w, f, v in self.terms:
            nv = alg._apply_gen_vec(w, gen, v)
            if nv:
                out.append((w, f, nv))
        return CoordElem(alg, out)

    def act_right(self, gen):
        """elem <| gen  (right regular action, on the functional legs)."""
        alg = self.alg
        out = []
        for w, f, v in self.terms:
            nf = alg._apply_gen_vec(w, gen, f, dual=True)
            if nf:
                out.append((w, nf, v))
        return CoordElem(alg, out)

    def theta(self):
        """The modular twist: conjugation by the 2-rho group-like, computed
        by weights (each key is an eigenvector)."""
        alg = self.alg
        field = alg.field
        out = []
        for w, f, v in self.terms:
            slots = [alg.slot(*s) for s in w]

            def scaled(d):
                nd = {}
                for k, c in d.items():
                    exp = sum(slots[j].r2exp[k[j]] for j in range(len(w)))
                    nd[k] = c * field.q_power(exp)
                return nd

            out.append((w, scaled(f), scaled(v)))
        return CoordElem(alg, out)

    def theta_via_action(self):
        """The same twist through the generic K-vector action machinery;
        kept as an independent cross-check of the exponent bookkeeping."""
        coeffs = cartan.two_rho_root(self.alg.rs)
        return self.act_left(("Kvec", coeffs)).act_right(("Kvec", coeffs))

    def size(self):
        return (len(self.terms),
                sum(len(f) for _, f, _ in self.terms),
                sum(len(v) for _, _, v in self.terms))


def _outer(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            out[ka + kb] = ca * cb
    return out


def _term_sort_key(key):
    w, vitems = key
    return (w, tuple((k, str(c)) for k, c in vitems))
