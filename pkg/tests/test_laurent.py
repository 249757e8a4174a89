import random
from fractions import Fraction

import pytest

from dahakit.laurent import (
    LaurentPoly, ProbeBox, build_discriminant, monomial, monomial_action, one,
)
from dahakit.rootdata import build_root_datum, vec_neg
from dahakit.scalars import qt_field


def make(label):
    d = build_root_datum(label)
    return d, qt_field(d.m)


def test_ring_ops():
    d, f = make("A1")
    xb = monomial(d, f, (1,))
    xc = monomial(d, f, (2,))
    assert xb * xc == monomial(d, f, (3,))
    p = xb + xc
    assert p + LaurentPoly(d, f) == p
    assert (p - p).is_zero()


def test_a1_difference_of_squares():
    d, f = make("A1")
    x = monomial(d, f, (1,))
    xi = monomial(d, f, (-1,))
    lhs = (x - xi) * (x + xi)
    # X_omega^2 = X_alpha since alpha = 2*omega
    rhs = monomial(d, f, (2,)) - monomial(d, f, (-2,))
    assert lhs == rhs


def test_s0_action_a1():
    d, f = make("A1")
    s0 = d.simple_elt(0)
    p = monomial_action(s0, monomial(d, f, (1,)))
    # s_0(X_omega) = q X_omega^{-1}
    assert p == monomial(d, f, (-1,), f.q_frac(1))


def test_pi_action_a1():
    d, f = make("A1")
    p = monomial_action(d.pi[1], monomial(d, f, (1,)))
    # pi_1(X_omega) = q^(1/2) X_omega^{-1}
    assert p == monomial(d, f, (-1,), f.q_frac(Fraction(1, 2)))


def test_identity_action():
    d, f = make("B2")
    e = d.weyl_elt(d.id_mat)
    p = monomial(d, f, (1, -1)) + monomial(d, f, (0, 2), f.t_half(1))
    assert monomial_action(e, p) == p


@pytest.mark.parametrize("label", ["A1", "A2", "B2"])
def test_action_is_multiplicative(label):
    d, f = make(label)
    rng = random.Random(2)
    box = ProbeBox(d, 1)
    for _ in range(6):
        r = rng.choice(d.O)
        word = [rng.randrange(d.n + 1) for _ in range(rng.randrange(4))]
        elt = d.evaluate_word(r, word)
        w1, w2 = rng.choice(box.weights), rng.choice(box.weights)
        p, q = monomial(d, f, w1), monomial(d, f, w2)
        assert monomial_action(elt, p * q) == \
            monomial_action(elt, p) * monomial_action(elt, q)


@pytest.mark.parametrize("label", ["A1", "A2", "G2"])
def test_action_respects_group_law(label):
    d, f = make(label)
    rng = random.Random(4)
    box = ProbeBox(d, 1)
    for _ in range(6):
        elts = []
        for _ in range(2):
            r = rng.choice(d.O)
            word = [rng.randrange(d.n + 1) for _ in range(rng.randrange(4))]
            elts.append(d.evaluate_word(r, word))
        v, w = elts
        p = monomial(d, f, rng.choice(box.weights))
        assert monomial_action(v * w, p) == monomial_action(v, monomial_action(w, p))


def test_discriminant_a1():
    d, f = make("A1")
    delta = build_discriminant(d, f)
    expected = monomial(d, f, (1,), f.t_half(1)) - \
        monomial(d, f, (-1,), f.t_half(1, -1))
    assert delta == expected


def test_discriminant_a2_support():
    d, f = make("A2")
    delta = build_discriminant(d, f)
    # monomials lie in rho - {sums of distinct positive roots}
    shifts = []
    import itertools
    for k in range(len(d.pos_roots) + 1):
        for sub in itertools.combinations(d.pos_roots, k):
            s = d.zero_wt
            for r in sub:
                s = tuple(a + b for a, b in zip(s, r))
            shifts.append(tuple(a - b for a, b in zip(d.rho, s)))
    assert delta.support() <= set(shifts)


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_discriminant_top_coefficient(label):
    d, f = make(label)
    delta = build_discriminant(d, f)
    tops = f.one
    for r in d.pos_roots:
        tops = tops * f.t_half(d.nu_of_root[r])
    assert delta.coeff(d.rho) == tops


def test_probe_box_symmetric():
    d, f = make("A2")
    box = ProbeBox(d, 2)
    assert len(box) == 25
    ws = set(box.weights)
    assert {vec_neg(w) for w in ws} == ws
