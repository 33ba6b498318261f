"""Classical-limit differential geometry of the flag projection.

Everything here runs over the classical field (q = 1) and exact rationals.
For each positive root gamma outside the Levi part we build a root vector
e_gamma on the defining module by bracket recursion from the simple raising
operators, take its adjoint f_gamma with respect to the orthogonal-basis
form, and extract the normalization constant c_gamma from the diagonal of
[e_gamma, f_gamma] (which must equal c_gamma (mu_k, gamma) on every weight
mu_k -- both facts are asserted, not assumed).

Two exact identities are then checked:

* norm lemma: (f_gamma v0, f_gamma v0) = c_gamma (rho_S, gamma) for the
  highest vector v0;
* origin form: evaluating the canonical cycle C(P) at q = 1 against the
  first-order jet at the identity coset -- derivation f_alpha on plain slots
  and -e_alpha on conjugated slots against the conjugate-linear counterpart
  (e_beta / -f_beta) -- reproduces exactly twice the Gram matrix
  chat[alpha, beta] = (f_beta v0, f_alpha v0).

chat is diagonal by weights, with chat[alpha, alpha] / c_alpha =
(rho_S, alpha): the positive integers that make up the classical Kaehler
class of the flag manifold.
"""

from __future__ import annotations

from fractions import Fraction

from qflag import cartan
from qflag.flagproj import FlagContext, flag_context
from qflag.hochschild import idempotent_cycle
from qflag.qscalar import classical_field
from qflag.repn import hw_module


def _commutator(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] - B[i][k] * A[k][j] for k in range(n))
             for j in range(n)] for i in range(n)]


def _is_zero_matrix(A):
    return all(not x for row in A for x in row)


class ClassicalKahler:
    """Root vectors, adjoints, and the origin Gram data for one parabolic."""

    def __init__(self, ctx: FlagContext):
        if not getattr(ctx.field, "is_classical", False):
            raise ValueError("classical analysis needs the q = 1 field")
        self.ctx = ctx
        rs = ctx.rs
        m = ctx.m
        dim = m.dim
        self.nil_roots = list(ctx.par.nil_pos)

        # simple raising operators as dense matrices
        def col_matrix(cols):
            A = [[Fraction(0)] * dim for _ in range(dim)]
            for k in range(dim):
                for l, c in cols[k]:
                    A[l][k] = c
            return A

        e = {}
        for i in range(1, rs.rank + 1):
            e[cartan.simple_root(rs, i)] = col_matrix(
                [m.e_col(i, k) for k in range(dim)])
        # bracket recursion in height order (faithful module: a nonzero root
        # vector stays nonzero)
        for gamma in rs.pos_roots:
            if gamma in e:
                continue
            built = None
            for i in range(1, rs.rank + 1):
                alpha = cartan.simple_root(rs, i)
                rest = tuple(g - a for g, a in zip(gamma, alpha))
                if rest in e:
                    built = _commutator(e[alpha], e[rest])
                    if not _is_zero_matrix(built):
                        break
                    built = None
            if built is None:
                raise AssertionError(f"no nonzero bracket reaches {gamma}")
            e[gamma] = built
        self.e = e

        # adjoints with respect to the diagonal form with weights N_k
        N = m.norms
        self.f = {}
        for gamma, A in e.items():
            self.f[gamma] = [[A[j][i] * N[j] / N[i] for j in range(dim)]
                             for i in range(dim)]

        # normalization constants from H = [e, f]
        self.c = {}
        for gamma in rs.pos_roots:
            H = _commutator(e[gamma], self.f[gamma])
            c_val = None
            for k in range(dim):
                for l in range(dim):
                    if l != k and H[l][k]:
                        raise AssertionError(
                            f"[e, f] not diagonal for root {gamma}")
                t = cartan.form_rw(rs, gamma, m.weights[k])
                if t:
                    ratio = H[k][k] / t
                    if c_val is None:
                        c_val = ratio
                    elif c_val != ratio:
                        raise AssertionError(
                            f"inconsistent normalization for root {gamma}")
                elif H[k][k]:
                    raise AssertionError(
                        f"[e, f] acts on a {gamma}-orthogonal weight")
            if c_val is None or c_val <= 0:
                raise AssertionError(f"no positive normalization for {gamma}")
            self.c[gamma] = c_val

    # -- Gram data at the origin ---------------------------------------------

    def f_column(self, gamma):
        """f_gamma applied to the highest vector, as a sparse column."""
        col = {}
        for l in range(self.ctx.dim):
            v = self.f[gamma][l][0]
            if v:
                col[l] = v
        return col

    def gram_entry(self, alpha, beta):
        """(f_beta v0, f_alpha v0) in the orthogonal-basis form."""
        N = self.ctx.m.norms
        a = self.f_column(alpha)
        b = self.f_column(beta)
        tot = Fraction(0)
        for l, va in a.items():
            vb = b.get(l)
            if vb is not None:
                tot += N[l] * va * vb
        return tot

    def kahler_matrix(self):
        """(roots, chat, c): the origin Gram matrix over the non-Levi
        positive roots and the per-root normalizations."""
        roots = self.nil_roots
        chat = [[self.gram_entry(a, b) for b in roots] for a in roots]
        c = [self.c[a] for a in roots]
        return roots, chat, c

    def kahler_diagonal(self):
        """chat[alpha, alpha] / c_alpha, expected (rho_S, alpha)."""
        roots, chat, c = self.kahler_matrix()
        return [chat[i][i] / c[i] for i in range(len(roots))]


def verify_norm_lemma(kk: ClassicalKahler):
    """(f_gamma v0, f_gamma v0) = c_gamma (rho_S, gamma) per non-Levi root.
    Returns {root: (got, want)}."""
    ctx = kk.ctx
    out = {}
    for gamma in kk.nil_roots:
        got = kk.gram_entry(gamma, gamma)
        want = kk.c[gamma] * cartan.form_rw(ctx.rs, gamma, ctx.lam)
        out[gamma] = (got, want)
    return out


def verify_kahler_shape(kk: ClassicalKahler):
    """Off-diagonal zero, diagonal (rho_S, gamma) and positive.  Returns
    (ok, diag, expected_diag)."""
    roots, chat, c = kk.kahler_matrix()
    ok = True
    for i in range(len(roots)):
        for j in range(len(roots)):
            if i != j and chat[i][j]:
                ok = False
    diag = kk.kahler_diagonal()
    expected = [Fraction(cartan.form_rw(kk.ctx.rs, g, kk.ctx.lam))
                for g in roots]
    ok = ok and diag == expected and all(d > 0 for d in diag)
    return ok, diag, expected


# -- the origin evaluation of the canonical cycle -------------------------------


def _leg_derivative(leg, mat_plain, mat_conj):
    """Evaluate a first-order derivation at the identity coset: the slotwise
    matrix action (mat_plain on plain slots, mat_conj on conjugated slots)
    contracted between the functional and vector legs."""
    tot = Fraction(0)
    for word, fun, vec in leg.terms:
        for key, cv in vec.items():
            for j, (mid, barred) in enumerate(word):
                mat = mat_conj if barred else mat_plain
                kj = key[j]
                for l in range(len(mat)):
                    d = mat[l][kj]
                    if d:
                        cf = fun.get(key[:j] + (l,) + key[j + 1:])
                        if cf is not None:
                            tot += cf * d * cv
    return tot


def hkr_matrix(kk: ClassicalKahler):
    """Antisymmetrized first-order evaluation of C(P) at q = 1 over pairs of
    non-Levi roots: entry (alpha, beta) pairs the derivation along f_alpha
    (plain) / -e_alpha (conjugated) with the conjugate derivation along
    e_beta / -f_beta."""
    cyc = idempotent_cycle(kk.ctx)
    roots = kk.nil_roots

    def neg(M):
        return [[-x for x in row] for row in M]

    out = []
    for alpha in roots:
        row = []
        X_plain, X_conj = kk.f[alpha], neg(kk.e[alpha])
        for beta in roots:
            Y_plain, Y_conj = kk.e[beta], neg(kk.f[beta])
            tot = Fraction(0)
            for coeff, (a0, a1, a2) in cyc.terms:
                s = coeff * a0.counit()
                if not s:
                    continue
                v = _leg_derivative(a1, X_plain, X_conj) * \
                    _leg_derivative(a2, Y_plain, Y_conj) - \
                    _leg_derivative(a1, Y_plain, Y_conj) * \
                    _leg_derivative(a2, X_plain, X_conj)
                tot += s * v
            row.append(tot)
        out.append(row)
    return out


def verify_hkr(kk: ClassicalKahler):
    """hkr = 2 chat, exactly.  Returns (ok, hkr, chat)."""
    roots, chat, _ = kk.kahler_matrix()
    got = hkr_matrix(kk)
    want = [[2 * x for x in row] for row in chat]
    return got == want, got, want


# -- q -> 1 consistency -----------------------------------------------------------


def verify_classical_limit(family, rank, lam):
    """The symbolic module evaluated at q = 1 coincides with the module
    built directly over the classical field: weights, norms, and all
    generator matrix entries.  Returns True or raises with the mismatch."""
    from qflag.qscalar import SymbolicField
    rs = cartan.root_system(family, rank)
    ms = hw_module(rs, lam, SymbolicField())
    mc = hw_module(rs, lam, classical_field())
    if list(ms.weights) != list(mc.weights):
        raise AssertionError("weights differ in the classical limit")
    for k in range(ms.dim):
        if ms.norms[k].evaluate(Fraction(1)) != mc.norms[k]:
            raise AssertionError(f"norm {k} differs in the classical limit")
    for i in range(1, rank + 1):
        for k in range(ms.dim):
            for col_s, col_c in ((ms.e_col(i, k), mc.e_col(i, k)),
                                 (ms.f_col(i, k), mc.f_col(i, k))):
                ds = {l: c.evaluate(Fraction(1)) for l, c in col_s}
                dc = dict(col_c)
                if ds != dc:
                    raise AssertionError(
                        f"generator {i} column {k} differs at q = 1")
    return True


def classical_context(family, rank, subset) -> FlagContext:
    return flag_context(family, rank, subset, classical_field())
