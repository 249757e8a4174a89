"""Sparse Laurent polynomials with weights of P as exponents.

A LaurentPoly is a finite map {weight tuple: scalar} over a pluggable
scalar backend.  Fractional q-powers produced by the affine Weyl action
fold into the scalar (as powers of the unit u = q^(1/(2m))), so the
exponent lattice never leaves P.
"""

from __future__ import annotations

from fractions import Fraction

from .rootdata import vec_add, vec_neg, weight_box
from .scalars import BackendMismatch


class LaurentPoly:
    __slots__ = ("datum", "field", "c")

    def __init__(self, datum, field, coeffs=None):
        self.datum = datum
        self.field = field
        self.c = {}
        if coeffs:
            for k, v in coeffs.items():
                if not v.is_zero():
                    self.c[k] = v

    def _check(self, other):
        if self.datum is not other.datum or self.field is not other.field:
            raise BackendMismatch("Laurent polynomials over different backends")

    def copy_with(self, coeffs):
        p = LaurentPoly(self.datum, self.field)
        p.c = coeffs
        return p

    def is_zero(self):
        return not self.c

    def add_term(self, w, coeff):
        """In-place accumulation; only used while building a result."""
        cur = self.c.get(w)
        if cur is None:
            if not coeff.is_zero():
                self.c[w] = coeff
        else:
            cur = cur + coeff
            if cur.is_zero():
                del self.c[w]
            else:
                self.c[w] = cur

    def __add__(self, other):
        self._check(other)
        out = self.copy_with(dict(self.c))
        for w, v in other.c.items():
            out.add_term(w, v)
        return out

    def __sub__(self, other):
        self._check(other)
        out = self.copy_with(dict(self.c))
        for w, v in other.c.items():
            out.add_term(w, -v)
        return out

    def __neg__(self):
        return self.copy_with({w: -v for w, v in self.c.items()})

    def __mul__(self, other):
        self._check(other)
        out = LaurentPoly(self.datum, self.field)
        for w1, v1 in self.c.items():
            for w2, v2 in other.c.items():
                out.add_term(vec_add(w1, w2), v1 * v2)
        return out

    def scale(self, scalar):
        if scalar.is_zero():
            return LaurentPoly(self.datum, self.field)
        return self.copy_with({w: v * scalar for w, v in self.c.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        return (self - other).is_zero()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def support(self):
        return set(self.c)

    def coeff(self, w):
        return self.c.get(tuple(w), self.field.zero)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = [f"({v})*X^{w}" for w, v in sorted(self.c.items())]
        return " + ".join(parts)


def monomial(datum, field, w, coeff=None):
    p = LaurentPoly(datum, field)
    p.add_term(tuple(w), coeff if coeff is not None else field.one)
    return p


def one(datum, field):
    return monomial(datum, field, datum.zero_wt)


class ProbeBox:
    """Finite symmetric test basis: weights with |omega-coordinates| <= d."""

    def __init__(self, datum, d):
        self.datum = datum
        self.d = d
        self.weights = weight_box(datum.n, d)

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)

    def monomials(self, field):
        return [monomial(self.datum, field, w) for w in self.weights]


def monomial_action(elt, p):
    """Action of an extended affine Weyl element on the Laurent ring.

    X_{[b, 0]} maps to X_{w(b)} q^{-(b, t)}, the q-power folded into the
    scalar; this extends multiplicatively.
    """
    datum, field = p.datum, p.field
    out = LaurentPoly(datum, field)
    for b, v in p.c.items():
        img, lev = elt.act(b, Fraction(0))
        out.add_term(img, v * field.q_frac(lev))
    return out


def build_discriminant(datum, field):
    """The t-deformed Weyl denominator, expanded as a genuine Laurent polynomial.

    Half-powers of X never appear: the product over positive roots is
    regrouped as X_{-rho} * prod (t_a^(1/2) X_a - t_a^(-1/2)), which stays
    inside P because rho is a weight.
    """
    out = monomial(datum, field, vec_neg(datum.rho))
    for root in datum.pos_roots:
        nu = datum.nu_of_root[root]
        factor = LaurentPoly(datum, field)
        factor.add_term(root, field.t_half(nu, 1))
        factor.add_term(datum.zero_wt, -field.t_half(nu, -1))
        out = out * factor
    return out
