"""The defining projection of a quantized flag manifold.

For a parabolic subset S the generating projection lives in a matrix algebra
over the coordinate ring, built from the irreducible module V whose highest
weight is rho_S (the sum of the fundamental weights outside S).  With an
orthogonal weight basis (norms N_i, N_0 = 1) the natural entries carry square
roots of norms, so everything here is phrased in terms of the rational cores

    phat[i,j] = a^i_0 * conj(a^j_0),

where a^i_j is the (i,j) matrix coefficient of V and conj its star.  The
actual projection entries are sqrt(N_i N_j) phat[i,j]; every identity below
is the exact norm-weighted form of the corresponding projection identity and
stays inside the base field:

    idempotent:   sum_k N_k phat[i,k] phat[k,j] = phat[i,j]
    selfadjoint:  phat[i,j]^* = phat[j,i]
    trace:        sum_i q^(2rho, lam_i) N_i phat[i,i] = q^(2rho, rho_S) 1

The same scheme covers the matrix units of the full coefficient block,

    mu[a,b][i,j] = a^i_b * conj(a^j_a),

with phat = mu[0,0].  Columns index the highest-weight line, so the entries
are invariant under the Levi part of the parabolic: the generators named by S
annihilate (or fix, for the group-likes) every entry under the left regular
action.
"""

from __future__ import annotations

from qflag import cartan
from qflag.coord import DEFAULT_CAP, CoordAlgebra, ZeroCertificate
from qflag.repn import hw_module


class FlagContext:
    """Everything needed to state and check the projection identities for
    one (root system, parabolic subset, scalar field) choice."""

    def __init__(self, rs, subset, field):
        self.rs = rs
        self.par = cartan.parabolic(rs, subset)
        self.S = self.par.S
        self.field = field
        self.lam = self.par.rho_S
        self.alg = CoordAlgebra(rs, field)
        self.m = hw_module(rs, self.lam, field)
        self.mid = self.alg.register(self.m)
        self.dim = self.m.dim
        self.norms = self.m.norms
        two_rho = cartan.two_rho_root(rs)
        self.wexp = tuple(cartan.form_rw(rs, two_rho, w)
                          for w in self.m.weights)
        self.trace_exp = cartan.form_rw(rs, two_rho, self.lam)

    # -- generators -------------------------------------------------------------

    def coeff(self, i, j, barred=False):
        return self.alg.mc(self.mid, i, j, barred)

    def phat(self, i, j):
        return self.coeff(i, 0) * self.coeff(j, 0, barred=True)

    def munit(self, a, b, i, j):
        """Core of the (a,b) matrix unit of the coefficient block."""
        return self.coeff(i, b) * self.coeff(j, a, barred=True)

    def qtrace(self):
        """sum_i q^(2rho, lam_i) N_i phat[i,i]."""
        F = self.field
        tot = self.alg.zero()
        for i in range(self.dim):
            tot = tot + (F.q_power(self.wexp[i]) * self.norms[i]) * \
                self.phat(i, i)
        return tot


def flag_context(family, rank, subset, field) -> FlagContext:
    return FlagContext(cartan.root_system(family, rank), subset, field)


# -- verifications --------------------------------------------------------------


def verify_idempotent(ctx: FlagContext, pairs=None, cap=DEFAULT_CAP):
    """Check sum_k N_k phat[i,k] phat[k,j] = phat[i,j] for the given (i,j)
    pairs (all pairs by default).  Returns {(i,j): ZeroCertificate}; the
    expensive closure is shared by every pair."""
    if pairs is None:
        pairs = [(i, j) for i in range(ctx.dim) for j in range(ctx.dim)]
    out = {}
    for i, j in pairs:
        lhs = ctx.alg.zero()
        for k in range(ctx.dim):
            lhs = lhs + ctx.norms[k] * (ctx.phat(i, k) * ctx.phat(k, j))
        out[(i, j)] = ctx.alg.is_zero(lhs - ctx.phat(i, j), cap=cap)
    return out


def verify_selfadjoint(ctx: FlagContext) -> bool:
    """phat[i,j]^* = phat[j,i], exactly and syntactically."""
    for i in range(ctx.dim):
        for j in range(ctx.dim):
            got = ctx.phat(i, j).star().simplify().canonical()
            want = ctx.phat(j, i).simplify().canonical()
            if got != want:
                return False
    return True


def verify_qtrace(ctx: FlagContext, cap=DEFAULT_CAP) -> ZeroCertificate:
    """sum_i q^(2rho, lam_i) N_i phat[i,i] = q^(2rho, rho_S) 1."""
    rhs = ctx.alg.unit() * ctx.field.q_power(ctx.trace_exp)
    return ctx.alg.is_zero(ctx.qtrace() - rhs, cap=cap)


def levi_generators(ctx: FlagContext):
    """Generators of the invariance subalgebra: the full torus (every K_i)
    together with E_a, F_a for the marked simple roots a."""
    out = [("K", i, 1) for i in range(1, ctx.rs.rank + 1)]
    for a in ctx.S:
        out.extend([("E", a), ("F", a)])
    return out


def verify_levi_invariance(ctx: FlagContext):
    """Left action of the Levi generators fixes every entry: E_a and F_a
    (a in S) annihilate, K_a fixes.  Syntactic (the annihilation is exact
    term-by-term because the highest-weight column is a Levi-trivial line).
    Returns {generator: bool over all entries}."""
    out = {}
    for gen in levi_generators(ctx):
        ok = True
        for i in range(ctx.dim):
            for j in range(ctx.dim):
                p = ctx.phat(i, j)
                got = p.act_left(gen).simplify()
                if gen[0] == "K":
                    ok = ok and got.canonical() == p.simplify().canonical()
                else:
                    ok = ok and got.terms == ()
        out[gen] = ok
    return out


def verify_matrix_units(ctx: FlagContext, indices=None, cap=DEFAULT_CAP):
    """The three exact matrix-unit identities over the given index set:

    product:  sum_k N_k mu[a,b][i,k] mu[c,d][k,j]
                  = delta_(a,d) N_a mu[c,b][i,j]
    star:     mu[a,b][j,i]^* = mu[b,a][i,j]           (syntactic)
    trace:    sum_i q^(2rho, lam_i) N_i mu[a,b][i,i]
                  = delta_(a,b) N_a q^(2rho, lam_a) 1

    Returns {"product": {(a,b,c,d,i,j): cert}, "star": bool,
    "trace": {(a,b): cert}}.
    """
    idx = list(indices) if indices is not None else list(range(ctx.dim))
    F = ctx.field
    alg = ctx.alg
    product = {}
    for a in idx:
        for b in idx:
            for c in idx:
                for d in idx:
                    for i in idx:
                        for j in idx:
                            lhs = alg.zero()
                            for k in range(ctx.dim):
                                lhs = lhs + ctx.norms[k] * (
                                    ctx.munit(a, b, i, k) *
                                    ctx.munit(c, d, k, j))
                            if a == d:
                                lhs = lhs - ctx.norms[a] * \
                                    ctx.munit(c, b, i, j)
                            product[(a, b, c, d, i, j)] = \
                                alg.is_zero(lhs, cap=cap)
    star_ok = True
    for a in idx:
        for b in idx:
            for i in idx:
                for j in idx:
                    got = ctx.munit(a, b, j, i).star().simplify().canonical()
                    want = ctx.munit(b, a, i, j).simplify().canonical()
                    star_ok = star_ok and got == want
    trace = {}
    for a in idx:
        for b in idx:
            lhs = alg.zero()
            for i in range(ctx.dim):
                lhs = lhs + (F.q_power(ctx.wexp[i]) * ctx.norms[i]) * \
                    ctx.munit(a, b, i, i)
            if a == b:
                lhs = lhs - (ctx.norms[a] * F.q_power(ctx.wexp[a])) * \
                    alg.unit()
            trace[(a, b)] = alg.is_zero(lhs, cap=cap)
    return {"product": product, "star": star_ok, "trace": trace}
