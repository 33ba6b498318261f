"""Projection-layer identities across the four standard cases.

Hand-derived anchors used as oracles here:

* B2, S={1}: module is the 4-dimensional V(0,1) with weights
  (0,1), (1,-1), (-1,1), (0,-1), norms (1, q, q^3, q^4); with d = (2,1) and
  2rho = (3,4) the trace exponents come out (4, 2, -2, -4) and the total
  trace exponent is 4.
* A2, S={}: V(1,1), dimension 8, trace exponent (2rho, rho) = 4.
* A2, S={2}: V(1,0), dimension 3, trace exponent 2.
"""

from fractions import Fraction as Q

import pytest

from qflag import flagproj as fp
from qflag.qscalar import FixedField, SymbolicField
from qflag.repn import CapExceeded


@pytest.fixture(scope="module")
def a1():
    return fp.flag_context("A", 1, (), SymbolicField())


@pytest.fixture(scope="module")
def a2s2():
    return fp.flag_context("A", 2, (2,), SymbolicField())


@pytest.fixture(scope="module")
def b2s1():
    return fp.flag_context("B", 2, (1,), FixedField(Q(1, 2)))


@pytest.fixture(scope="module")
def a2full():
    return fp.flag_context("A", 2, (), FixedField(Q(1, 2)))


def test_context_shapes(a1, a2s2, b2s1, a2full):
    assert (a1.dim, a2s2.dim, b2s1.dim, a2full.dim) == (2, 3, 4, 8)
    assert a1.trace_exp == 1
    assert a2s2.trace_exp == 2
    assert b2s1.trace_exp == 4
    assert a2full.trace_exp == 4


def test_b2_module_anchors(b2s1):
    m = b2s1.m
    assert list(m.weights) == [(0, 1), (1, -1), (-1, 1), (0, -1)]
    assert m.norms == [Q(1), Q(1, 2), Q(1, 8), Q(1, 16)]
    assert b2s1.wexp == (4, 2, -2, -4)


def test_bad_subset_rejected():
    with pytest.raises(ValueError, match="out of range"):
        fp.flag_context("A", 2, (3,), SymbolicField())


# -- projection laws -----------------------------------------------------------


@pytest.mark.parametrize("ctxname", ["a1", "a2s2", "b2s1", "a2full"])
def test_idempotent(ctxname, request):
    ctx = request.getfixturevalue(ctxname)
    res = fp.verify_idempotent(ctx)
    assert len(res) == ctx.dim ** 2
    assert all(c.zero for c in res.values())
    assert all(c.closure_dims[0] > 0 for c in res.values())


@pytest.mark.parametrize("ctxname", ["a1", "a2s2", "b2s1", "a2full"])
def test_selfadjoint(ctxname, request):
    assert fp.verify_selfadjoint(request.getfixturevalue(ctxname))


@pytest.mark.parametrize("ctxname", ["a1", "a2s2", "b2s1", "a2full"])
def test_qtrace(ctxname, request):
    assert fp.verify_qtrace(request.getfixturevalue(ctxname)).zero


def test_idempotent_negative_control(a1):
    """Perturbing one norm weight must break the idempotent law."""
    lhs = a1.alg.zero()
    wrong = [a1.norms[0], a1.norms[1] + a1.field.one]
    for k in range(2):
        lhs = lhs + wrong[k] * (a1.phat(0, k) * a1.phat(k, 0))
    assert not a1.alg.is_zero(lhs - a1.phat(0, 0)).zero


def test_qtrace_negative_control(a1):
    """Identity-ordered (untwisted) trace weights must fail: the exponents
    are what make the trace central."""
    F = a1.field
    lhs = a1.alg.zero()
    for i in range(2):
        lhs = lhs + a1.norms[i] * a1.phat(i, i)  # missing q^(2rho, lam_i)
    rhs = a1.alg.unit() * F.q_power(a1.trace_exp)
    assert not a1.alg.is_zero(lhs - rhs).zero


# -- Levi invariance -----------------------------------------------------------


def test_levi_invariance_a2s2(a2s2):
    inv = fp.verify_levi_invariance(a2s2)
    assert set(inv) == {("E", 2), ("F", 2), ("K", 1, 1), ("K", 2, 1)}
    assert all(inv.values())


def test_levi_invariance_b2s1(b2s1):
    inv = fp.verify_levi_invariance(b2s1)
    assert set(inv) == {("E", 1), ("F", 1), ("K", 1, 1), ("K", 2, 1)}
    assert all(inv.values())


def test_full_flag_torus_invariance(a1, a2full):
    # with no marked roots the invariance subalgebra is just the torus
    inv = fp.verify_levi_invariance(a1)
    assert set(inv) == {("K", 1, 1)}
    assert all(inv.values())
    inv = fp.verify_levi_invariance(a2full)
    assert set(inv) == {("K", 1, 1), ("K", 2, 1)}
    assert all(inv.values())


def test_non_levi_generator_moves_entries(a2s2):
    """Negative control: E/F generators outside S must not annihilate the
    entries.  (Every K_i fixes them: the vector leg has weight zero.)"""
    for gen in (("F", 1), ("E", 1)):
        moved = a2s2.phat(0, 0).act_left(gen).simplify()
        assert moved.terms != ()
    fixed = a2s2.phat(1, 1).act_left(("K", 1, 1)).simplify()
    assert fixed.canonical() == a2s2.phat(1, 1).simplify().canonical()


# -- matrix units ---------------------------------------------------------------


def test_matrix_units_a1_all_indices(a1):
    res = fp.verify_matrix_units(a1)
    assert len(res["product"]) == 2 ** 6
    assert all(c.zero for c in res["product"].values())
    assert res["star"] is True
    assert all(c.zero for c in res["trace"].values())


def test_matrix_units_a2s2_all_indices(a2s2):
    res = fp.verify_matrix_units(a2s2)
    assert len(res["product"]) == 3 ** 6
    assert all(c.zero for c in res["product"].values())
    assert res["star"] is True
    assert len(res["trace"]) == 9
    assert all(c.zero for c in res["trace"].values())


def test_matrix_units_contain_projection(a1):
    assert a1.munit(0, 0, 0, 1).simplify().canonical() == \
        a1.phat(0, 1).simplify().canonical()


def test_matrix_unit_product_needs_delta(a1):
    """With a = d the bare weighted product must be nonzero (it equals
    N_a mu[c,b][i,j]), so the law is not vacuous."""
    alg = a1.alg
    lhs = alg.zero()
    for k in range(2):
        lhs = lhs + a1.norms[k] * (a1.munit(0, 1, 0, k) *
                                   a1.munit(1, 0, k, 0))
    assert not alg.is_zero(lhs).zero


def test_cap_propagates(a1):
    ctx = fp.flag_context("A", 1, (), SymbolicField())
    with pytest.raises(CapExceeded):
        fp.verify_idempotent(ctx, pairs=[(0, 0)], cap=3)
