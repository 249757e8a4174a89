from fractions import Fraction

import pytest

from dahakit.laurent import LaurentPoly, ProbeBox, build_discriminant, monomial, one
from dahakit.polyrep import ClosureOverflow, PolyRep, relation_suite
from dahakit.rootdata import build_root_datum
from dahakit.scalars import qt_field


def make(label):
    d = build_root_datum(label)
    f = qt_field(d.m)
    return d, f, PolyRep(d, f)


# ---------------------------------------------------------------------------
# frozen examples for the generators

def test_T_on_constant():
    for label in ("A1", "A2", "B2", "G2"):
        d, f, rep = make(label)
        for i in range(d.n + 1):
            assert rep.apply_T(i, one(d, f)) == one(d, f).scale(rep.t_half(i))


def test_T1_on_Xomega_a1():
    d, f, rep = make("A1")
    got = rep.apply_T(1, monomial(d, f, (1,)))
    assert got == monomial(d, f, (-1,), f.t_half(1, -1))


def test_T0_on_Xomega_a1():
    d, f, rep = make("A1")
    got = rep.apply_T(0, monomial(d, f, (1,)))
    expected = monomial(d, f, (-1,), f.t_half(1) * f.q_frac(1)) + \
        monomial(d, f, (1,), f.t_half(1) - f.t_half(1, -1))
    assert got == expected


def test_T_inverse_on_constant():
    d, f, rep = make("A2")
    for i in range(d.n + 1):
        assert rep.apply_T_inv(i, one(d, f)) == one(d, f).scale(rep.t_half(i, -1))


def test_T_inverse_composition():
    d, f, rep = make("A1")
    p = monomial(d, f, (1,))
    assert rep.apply_T_inv(1, rep.apply_T(1, p)) == p


def test_T_inverse_is_T_minus_tdiff():
    d, f, rep = make("B2")
    for i in range(d.n + 1):
        for p in rep.probe_monomials(1):
            lhs = rep.apply_T_inv(i, p)
            rhs = rep.apply_T(i, p) - p.scale(rep.t_diff(i))
            assert (lhs - rhs).is_zero()


def test_Y_omega_on_one_a1():
    d, f, rep = make("A1")
    assert rep.apply_Y((1,), one(d, f)) == one(d, f).scale(f.t_half(1))


def test_Y_eigenvector_minuscule_a1():
    d, f, rep = make("A1")
    got = rep.apply_Y((1,), monomial(d, f, (1,)))
    assert got == monomial(d, f, (1,), f.t_half(1, -1) * f.q_frac(Fraction(-1, 2)))


def test_Y_inverse_pair():
    d, f, rep = make("A2")
    for p in rep.probe_monomials(1):
        q = rep.apply_Y((1, 0), rep.apply_Y((-1, 0), p))
        assert (q - p).is_zero()


def test_Y_product_rule():
    d, f, rep = make("A2")
    p = monomial(d, f, (1, -1))
    lhs = rep.apply_Y((1, 1), p)
    rhs = rep.apply_Y((1, 0), rep.apply_Y((0, 1), p))
    assert (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# invariant subspaces

def test_subspace_seed_zero_a1():
    d, f, rep = make("A1")
    mats = rep.invariant_subspace([rep.y_op((1,))], [(0,)])
    assert len(mats) == 1
    m = mats[0]
    assert m.basis == [(0,)]
    assert m.matrix[0][0] == f.t_half(1)


def test_subspace_seed_omega_a1():
    d, f, rep = make("A1")
    mats = rep.invariant_subspace([rep.y_op((1,))], [(1,)])
    basis = mats[0].basis
    # X_omega is a Y-eigenvector here; the closure certifies invariance
    assert (1,) in basis
    for row in mats[0].matrix:
        for entry in row:
            pass  # entries exist; invariance was asserted in restrict()


def test_subspace_empty_seed():
    d, f, rep = make("A1")
    assert rep.invariant_subspace([rep.y_op((1,))], []) == []


def test_closure_overflow_witness():
    d, f, rep = make("A1")
    with pytest.raises(ClosureOverflow) as exc:
        rep.close_subspace([rep.x_op((1,))], [(0,)], bound=3)
    assert abs(exc.value.weight[0]) > 3


def test_y_triangular_on_dominant_order():
    # support of Y(X_c) stays inside orbits dominated by the orbit of c
    d, f, rep = make("A2")
    for c in ProbeBox(d, 1).weights:
        img = rep.apply_Y((1, 0), monomial(d, f, c))
        dom_c = d.dominant_rep(c)
        for w in img.c:
            dom_w = d.dominant_rep(w)
            diff = tuple(a - b for a, b in zip(dom_c, dom_w))
            # dom_c - dom_w must be a nonnegative rational combination of
            # simple roots: check via the inverse Cartan transpose
            from dahakit.rootdata import _frac_mat_inv, mat_apply
            ct_inv = _frac_mat_inv([[d.cartan[j][i] for j in range(d.n)]
                                    for i in range(d.n)])
            coords = mat_apply(ct_inv, diff)
            assert all(x >= 0 for x in coords)


# ---------------------------------------------------------------------------
# relation suite

@pytest.mark.parametrize("label,deg", [("A1", 3), ("A2", 2)])
def test_relation_suite_passes(label, deg):
    d = build_root_datum(label)
    rep = relation_suite(d, qt_field(d.m), deg)
    assert rep.overall == "pass", [c.name for c in rep.failed()]


def test_discriminant_eigenrelation_a1():
    d, f, rep = make("A1")
    delta = build_discriminant(d, f)
    assert rep.apply_T(1, delta) == delta.scale(-f.t_half(1, -1))


def test_braid_g2_six_factors():
    d, f, rep = make("G2")
    assert d.m_ij[1][2] == 6
    p = monomial(d, f, (1, 0))
    a = b = p
    for step in range(6):
        a = rep.apply_T(1 if step % 2 == 0 else 2, a)
        b = rep.apply_T(2 if step % 2 == 0 else 1, b)
    assert (a - b).is_zero()
