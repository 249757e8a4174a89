"""Exact scalar backends.

Every coefficient in this package is exact.  The available backends:

* ``frac_field(names)`` -- rational functions over Q in named formal units.
  Elements are fractions of sparse Laurent polynomials (dicts mapping
  integer exponent vectors to ``Fraction``).  Equality is decided by
  cross-multiplication; full gcd reduction is lazy and only triggered
  once the term count passes a threshold, because gcds dominate runtime
  while equality testing does not need canonical forms.
* ``qt_field(m)`` -- the Hecke coefficient field with invertible units
  u = q^(1/(2m)), vs = t_sht^(1/2), vl = t_lng^(1/2).
* ``k_field()`` -- rational functions in the degenerate couplings ks, kl.
* ``cyclo_field(N)`` -- the cyclotomic field Q(zeta_N), elements reduced
  modulo the N-th cyclotomic polynomial.
* ``prime_field(p)`` -- Z/p for prime p.
* ``series_field(base, K, name)`` -- truncated formal series over any
  backend, with at most a single order of pole (order -1) allowed.

Values are immutable and carry a reference to their field; mixing
backends raises ``BackendMismatch``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


class BackendMismatch(TypeError):
    """Raised when two scalars from different backends are combined."""


class NotInvertible(ArithmeticError):
    """Raised when inversion would leave the backend (e.g. deep poles)."""


# ---------------------------------------------------------------------------
# sparse Laurent polynomial dictionaries: {exponent tuple: Fraction}

def _dict_add(a, b):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _dict_neg(a):
    return {k: -c for k, c in a.items()}


def _dict_scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def _dict_mul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            s = out.get(k)
            if s is None:
                out[k] = c1 * c2
            else:
                s = s + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out


def _dict_shift(a, shift):
    return {tuple(x + s for x, s in zip(k, shift)): c for k, c in a.items()}


def _min_exps(a, arity):
    mins = [None] * arity
    for k in a:
        for i, e in enumerate(k):
            if mins[i] is None or e < mins[i]:
                mins[i] = e
    return tuple(0 if m is None else m for m in mins)


def _content(a):
    """gcd of the Fraction coefficients (positive)."""
    num = 0
    den = 1
    for c in a.values():
        num = math.gcd(num, abs(c.numerator))
        den = den * c.denominator // math.gcd(den, c.denominator)
    return Fraction(num, den) if num else Fraction(0)


def _lex_lead(a):
    return max(a)


def _divexact(a, b, arity):
    """Exact division of multivariate dicts (nonnegative exponents); None on failure."""
    if not a:
        return {}
    if not b:
        return None
    lb = _lex_lead(b)
    cb = b[lb]
    rem = dict(a)
    quo = {}
    while rem:
        lr = _lex_lead(rem)
        k = tuple(x - y for x, y in zip(lr, lb))
        if any(e < 0 for e in k):
            return None
        c = rem[lr] / cb
        quo[k] = c
        for kb, vb in b.items():
            kk = tuple(x + y for x, y in zip(k, kb))
            s = rem.get(kk)
            if s is None:
                rem[kk] = -c * vb
                if not rem[kk]:
                    del rem[kk]
            else:
                s = s - c * vb
                if s:
                    rem[kk] = s
                else:
                    del rem[kk]
    return quo


def _degree_in(a, v):
    return max((k[v] for k in a), default=0)


def _to_univar(a, v):
    """View dict as univariate in variable v: {deg: coefficient dict}."""
    out = {}
    for k, c in a.items():
        d = k[v]
        kk = k[:v] + (0,) + k[v + 1:]
        out.setdefault(d, {})[kk] = c
    return out


def _from_univar(levels, v):
    out = {}
    for d, sub in levels.items():
        for k, c in sub.items():
            out[k[:v] + (d,) + k[v + 1:]] = c
    return out


def _poly_gcd(a, b, arity):
    """gcd of multivariate polynomial dicts with nonnegative exponents.

    Content-primitive Euclid with pseudo-division, recursing on the
    variable of smallest positive degree.  Inputs are small here: the
    lazy-reduction policy keeps this off every hot path.
    """
    if not a:
        return _make_positive(b)
    if not b:
        return _make_positive(a)
    if len(a) == 1 or len(b) == 1:
        exps = tuple(min(min(k[i] for k in a), min(k[i] for k in b))
                     for i in range(arity))
        cont = _frac_gcd(_content(a), _content(b))
        return {exps: cont}
    degs = [(max(_degree_in(a, v), _degree_in(b, v)), v) for v in range(arity)]
    degs = [(d, v) for d, v in degs if _degree_in(a, v) > 0 or _degree_in(b, v) > 0]
    if not degs:
        return {(0,) * arity: _frac_gcd(_content(a), _content(b))}
    _, v = min(degs)
    ua, ub = _to_univar(a, v), _to_univar(b, v)
    ca = _coeff_gcd(ua, arity)
    cb = _coeff_gcd(ub, arity)
    g_cont = _poly_gcd(ca, cb, arity)
    pa = {d: _must_div(c, ca, arity) for d, c in ua.items()}
    pb = {d: _must_div(c, cb, arity) for d, c in ub.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        if not pb:
            g_prim = pa
            break
        if max(pb) == 0:
            g_prim = {0: {(0,) * arity: Fraction(1)}}
            break
        r = _pseudo_rem(pa, pb, arity)
        pa, pb = pb, _univar_primitive(r, arity)
    gp = {d: c for d, c in g_prim.items()}
    gp_flat = _from_univar(gp, v)
    gp_flat = _make_primitive(gp_flat, arity)
    return _make_positive(_dict_mul_raw(gp_flat, g_cont))


def _dict_mul_raw(a, b):
    return _dict_mul(a, b)


def _frac_gcd(x, y):
    num = math.gcd(abs(x.numerator), abs(y.numerator))
    den = (x.denominator * y.denominator) // math.gcd(x.denominator, y.denominator)
    return Fraction(num, den) if num else Fraction(0)


def _coeff_gcd(levels, arity):
    g = {}
    for sub in levels.values():
        g = _poly_gcd(g, sub, arity)
    return g


def _must_div(a, b, arity):
    q = _divexact(a, b, arity)
    assert q is not None, "internal gcd error: inexact content division"
    return q


def _univar_primitive(levels, arity):
    levels = {d: c for d, c in levels.items() if c}
    if not levels:
        return {}
    g = _coeff_gcd(levels, arity)
    return {d: _must_div(c, g, arity) for d, c in levels.items()}


def _pseudo_rem(f, g, arity):
    """Pseudo-remainder of univariate-view polynomials (coefficients are dicts)."""
    df, dg = max(f), max(g)
    lg = g[dg]
    r = dict(f)
    while r and max(r) >= dg:
        dr = max(r)
        lr = r[dr]
        r = {d: _dict_mul(c, lg) for d, c in r.items()}
        shift = dr - dg
        for d, c in g.items():
            dd = d + shift
            cur = r.get(dd, {})
            cur = _dict_add(cur, _dict_neg(_dict_mul(c, lr)))
            if cur:
                r[dd] = cur
            elif dd in r:
                del r[dd]
        r = {d: c for d, c in r.items() if c}
    return r


def _make_primitive(a, arity):
    if not a:
        return a
    c = _content(a)
    return {k: v / c for k, v in a.items()}


def _make_positive(a):
    if not a:
        return a
    if a[_lex_lead(a)] < 0:
        return _dict_neg(a)
    return a


# ---------------------------------------------------------------------------
# fraction field of Laurent polynomials

REDUCE_THRESHOLD = 48


class RatFunc:
    """A fraction num/den of sparse Laurent polynomials over Q."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    def _check(self, other):
        if not isinstance(other, RatFunc) or other.field is not self.field:
            raise BackendMismatch(
                f"cannot combine {self.field.tag} scalar with {other!r}")

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == self.den

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        self._check(other)
        if self.den is other.den or self.den == other.den:
            return RatFunc(self.field, _dict_add(self.num, other.num), self.den)
        num = _dict_add(_dict_mul(self.num, other.den),
                        _dict_mul(other.num, self.den))
        return RatFunc(self.field, num, _dict_mul(self.den, other.den))._shrink()

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RatFunc(self.field, _dict_neg(self.num), self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.field, _dict_scale(self.num, Fraction(other)), self.den)
        self._check(other)
        out = RatFunc(self.field, _dict_mul(self.num, other.num),
                      _dict_mul(self.den, other.den))
        return out._shrink()

    __rmul__ = __mul__

    def __truediv__(self, other):
        self._check(other)
        if not other.num:
            raise ZeroDivisionError(f"division by zero in {self.field.tag}")
        return (self * other.inv())._shrink()

    def inv(self):
        if not self.num:
            raise ZeroDivisionError(f"inversion of zero in {self.field.tag}")
        return RatFunc(self.field, self.den, self.num)

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, RatFunc) or other.field is not self.field:
            return NotImplemented
        if self.den is other.den or self.den == other.den:
            return self.num == other.num
        return _dict_mul(self.num, other.den) == _dict_mul(other.num, self.den)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def _shrink(self):
        # cheap canonicalizations: monomial denominators fold into the
        # numerator (Laurent units are invertible); real gcds only past
        # the size threshold.
        if len(self.den) == 1:
            ((k, c),) = self.den.items()
            if k == self.field.zero_exp and c == 1:
                return self
            nk = tuple(-x for x in k)
            num = _dict_scale(_dict_shift(self.num, nk), 1 / c)
            return RatFunc(self.field, num, self.field.one_dict)
        if len(self.num) + len(self.den) > REDUCE_THRESHOLD:
            return self.normalize()
        return self

    def normalize(self):
        """Canonical form: reduced fraction, denominator primitive and positive
        with exponents shifted to start at zero."""
        f = self.field
        if not self.num:
            return f.zero
        sn = _min_exps(self.num, f.arity)
        sd = _min_exps(self.den, f.arity)
        num = _dict_shift(self.num, tuple(-x for x in sn))
        den = _dict_shift(self.den, tuple(-x for x in sd))
        g = _poly_gcd(num, den, f.arity)
        if len(g) != 1 or _lex_lead(g) != f.zero_exp or g[_lex_lead(g)] != 1:
            num = _divexact(num, g, f.arity)
            den = _divexact(den, g, f.arity)
        c = _content(den)
        if den[_lex_lead(den)] < 0:
            c = -c
        num = _dict_scale(num, 1 / c)
        den = _dict_scale(den, 1 / c)
        shift = tuple(a - b for a, b in zip(sn, sd))
        num = _dict_shift(num, shift)
        out = RatFunc(f, num, den)
        if len(den) == 1:
            out = out._shrink()
        return out

    def subs_units(self, unit_map):
        """Ring substitution unit_i -> (unit vector exponent map) inside the same
        field; used for involutions like u -> u^-1."""
        f = self.field

        def sub(d):
            out = {}
            for k, c in d.items():
                kk = tuple(sum(k[i] * unit_map[i][j] for i in range(f.arity))
                           for j in range(f.arity))
                out[kk] = out.get(kk, Fraction(0)) + c
            return {k: c for k, c in out.items() if c}

        return RatFunc(f, sub(self.num), sub(self.den))

    def as_fraction(self):
        """Value as a Fraction, if the scalar is constant."""
        f = self.field
        num = den = None
        for k, c in self.num.items():
            if k != f.zero_exp:
                raise ValueError("scalar is not constant")
            num = c
        for k, c in self.den.items():
            if k != f.zero_exp:
                raise ValueError("scalar is not constant")
            den = c
        if den is None:
            raise ValueError("scalar is not constant")
        return Fraction(0) if num is None else num / den

    def __repr__(self):
        return f"<{self.field.tag}: {self}>"

    def __str__(self):
        def side(d):
            if not d:
                return "0"
            parts = []
            for k in sorted(d, reverse=True):
                c = d[k]
                mon = "*".join(
                    f"{name}^{e}" if e != 1 else name
                    for name, e in zip(self.field.names, k) if e)
                if mon:
                    txt = mon if c == 1 else (f"-{mon}" if c == -1 else f"{c}*{mon}")
                else:
                    txt = str(c)
                parts.append(txt)
            out = parts[0]
            for p in parts[1:]:
                out += ("-" + p[1:]) if p.startswith("-") else ("+" + p)
            return out
        if self.den == self.field.one_dict:
            return side(self.num)
        return f"({side(self.num)})/({side(self.den)})"


class FracField:
    """Field of rational functions in named invertible units."""

    def __init__(self, names, tag=None):
        self.names = tuple(names)
        self.arity = len(self.names)
        self.tag = tag or ("QQ" if not self.names else "Q(" + ",".join(self.names) + ")")
        self.zero_exp = (0,) * self.arity
        self.one_dict = {self.zero_exp: Fraction(1)}
        self.zero = RatFunc(self, {}, self.one_dict)
        self.one = RatFunc(self, dict(self.one_dict), self.one_dict)

    def from_fraction(self, c):
        c = Fraction(c)
        return RatFunc(self, {self.zero_exp: c} if c else {}, self.one_dict)

    from_int = from_fraction

    def monomial(self, exps, coeff=1):
        c = Fraction(coeff)
        if not c:
            return self.zero
        return RatFunc(self, {tuple(exps): c}, self.one_dict)

    def gen(self, idx, power=1):
        exps = [0] * self.arity
        exps[idx] = power
        return self.monomial(exps)

    def __repr__(self):
        return f"FracField({self.tag})"


@lru_cache(maxsize=None)
def frac_field(names=()):
    return FracField(names)


QQ = frac_field(())


# ---------------------------------------------------------------------------
# (q, t) and k coefficient fields

class QtField(FracField):
    """Units u = q^(1/(2m)), vs = t_sht^(1/2), vl = t_lng^(1/2)."""

    def __init__(self, m):
        super().__init__(("u", "vs", "vl"), tag=f"Qqt(m={m})")
        self.m = m

    def q_frac(self, j):
        """q^j for j in (1/(2m))Z, as a power of the unit u."""
        e = Fraction(j) * 2 * self.m
        if e.denominator != 1:
            raise ValueError(f"q^{j} is not in the coefficient ring (m={self.m})")
        return self.monomial((int(e), 0, 0))

    def t_half(self, nu, e=1):
        """(t_nu^(1/2))^e; nu = 1 is the short unit, nu >= 2 the long one."""
        return self.monomial((0, e, 0) if nu == 1 else (0, 0, e))

    def eps_units(self):
        """Unit substitution for the duality involution: q, t -> inverses."""
        return ((-1, 0, 0), (0, -1, 0), (0, 0, -1))


class KField(FracField):
    """Rational functions in the couplings ks (short) and kl (long)."""

    def __init__(self):
        super().__init__(("ks", "kl"), tag="Qk")

    def k(self, nu):
        return self.gen(0 if nu == 1 else 1)

    def k_linear(self, cs, cl):
        """cs*ks + cl*kl with Fraction coefficients."""
        out = {}
        if cs:
            out[(1, 0)] = Fraction(cs)
        if cl:
            out[(0, 1)] = Fraction(cl)
        return RatFunc(self, out, self.one_dict)


@lru_cache(maxsize=None)
def qt_field(m):
    return QtField(m)


@lru_cache(maxsize=None)
def k_field():
    return KField()


# ---------------------------------------------------------------------------
# univariate helpers over Q (for cyclotomic polynomials)

def _upoly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _upoly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _upoly_trim(out)


def _upoly_divmod(a, b):
    a = _upoly_trim(list(a))
    b = _upoly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        if not a[-1]:
            a.pop()
            continue
        d = len(a) - len(b)
        c = a[-1] * inv
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] -= c * y
        a.pop()
    return _upoly_trim(q), _upoly_trim(a)


@lru_cache(maxsize=None)
def cyclotomic_poly(N):
    """Coefficients (ascending) of the N-th cyclotomic polynomial."""
    p = [Fraction(-1)] + [Fraction(0)] * (N - 1) + [Fraction(1)]
    for d in range(1, N):
        if N % d == 0:
            q, r = _upoly_divmod(p, list(cyclotomic_poly(d)))
            assert not r
            p = q
    return tuple(p)


class CycloNum:
    """Element of Q(zeta_N): coefficient vector of length phi(N)."""

    __slots__ = ("field", "vec")

    def __init__(self, field, vec):
        self.field = field
        self.vec = tuple(vec)

    def _check(self, other):
        if not isinstance(other, CycloNum) or other.field is not self.field:
            raise BackendMismatch(f"cannot combine {self.field.tag} scalar with {other!r}")

    def is_zero(self):
        return not any(self.vec)

    def is_one(self):
        return self.vec[0] == 1 and not any(self.vec[1:])

    def __add__(self, other):
        self._check(other)
        return CycloNum(self.field, tuple(x + y for x, y in zip(self.vec, other.vec)))

    def __sub__(self, other):
        self._check(other)
        return CycloNum(self.field, tuple(x - y for x, y in zip(self.vec, other.vec)))

    def __neg__(self):
        return CycloNum(self.field, tuple(-x for x in self.vec))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return CycloNum(self.field, tuple(x * c for x in self.vec))
        self._check(other)
        f = self.field
        phi = f.phi
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(self.vec):
            if not x:
                continue
            for j, y in enumerate(other.vec):
                if y:
                    conv[i + j] += x * y
        vec = list(conv[:phi])
        for d in range(phi, 2 * phi - 1):
            c = conv[d]
            if c:
                row = f.red_rows[d - phi]
                for j, r in enumerate(row):
                    if r:
                        vec[j] += c * r
        return CycloNum(f, vec)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError(f"inversion of zero in {self.field.tag}")
        # extended Euclid against the cyclotomic polynomial over Q
        f = self.field
        a = list(f.poly)
        b = _upoly_trim([Fraction(x) for x in self.vec])
        s0, s1 = [], [Fraction(1)]
        while b:
            q, r = _upoly_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, _upoly_trim(_sub_poly(s0, _upoly_mul(q, s1)))
        assert len(a) == 1, "cyclotomic polynomial must be coprime to nonzero element"
        inv_lead = 1 / a[0]
        s0 = [c * inv_lead for c in s0]
        _, rem = _upoly_divmod(s0, list(f.poly))
        vec = list(rem) + [Fraction(0)] * (f.phi - len(rem))
        return CycloNum(f, vec[:f.phi])

    def __truediv__(self, other):
        self._check(other)
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def galois(self, e):
        """Field automorphism zeta -> zeta^e (e coprime to N)."""
        f = self.field
        out = f.zero
        for k, c in enumerate(self.vec):
            if c:
                out = out + f.zeta_pow(k * e) * c
        return out

    def __eq__(self, other):
        if not isinstance(other, CycloNum) or other.field is not self.field:
            return NotImplemented
        return self.vec == other.vec

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((id(self.field), self.vec))

    def __repr__(self):
        return f"<{self.field.tag}: {self}>"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.vec):
            if c:
                mon = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                parts.append(f"{c}{'*' if mon and c != 1 and c != -1 else ''}"
                             f"{mon}" if c not in (1, -1) or not mon
                             else ("-" + mon if c == -1 else mon))
        return "+".join(parts).replace("+-", "-") if parts else "0"


def _sub_poly(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


class CycloField:
    def __init__(self, N):
        if N < 1:
            raise ValueError("N must be positive")
        self.N = N
        self.poly = cyclotomic_poly(N)
        self.phi = len(self.poly) - 1
        self.tag = f"Q(zeta_{N})"
        # reduction rows for x^(phi+d), d = 0 .. phi-2
        rows = []
        cur = [-c for c in self.poly[:-1]]  # x^phi
        rows.append(tuple(cur))
        for _ in range(self.phi - 2):
            cur = [Fraction(0)] + cur
            top = cur.pop()
            if top:
                cur = [c + top * r for c, r in zip(cur, rows[0])]
            rows.append(tuple(cur))
        self.red_rows = rows
        self.zero = CycloNum(self, (Fraction(0),) * self.phi)
        self.one = self.from_fraction(1)
        # all powers zeta^e, e in [0, N)
        pows = [self.one]
        z = self.zeta()
        for _ in range(N - 1):
            pows.append(pows[-1] * z)
        self._pows = pows

    def from_fraction(self, c):
        vec = [Fraction(c)] + [Fraction(0)] * (self.phi - 1)
        return CycloNum(self, vec)

    from_int = from_fraction

    def zeta(self):
        if self.phi == 1:
            # N = 1 or 2: zeta is rational
            return self.from_fraction(1 if self.N == 1 else -1)
        vec = [Fraction(0)] * self.phi
        vec[1] = Fraction(1)
        return CycloNum(self, vec)

    def zeta_pow(self, e):
        return self._pows[e % self.N]

    def __repr__(self):
        return f"CycloField({self.N})"


@lru_cache(maxsize=None)
def cyclo_field(N):
    return CycloField(N)


# ---------------------------------------------------------------------------
# prime fields

def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FpNum:
    __slots__ = ("field", "r")

    def __init__(self, field, r):
        self.field = field
        self.r = r % field.p

    def _check(self, other):
        if not isinstance(other, FpNum) or other.field is not self.field:
            raise BackendMismatch(f"cannot combine {self.field.tag} scalar with {other!r}")

    def is_zero(self):
        return self.r == 0

    def is_one(self):
        return self.r == 1

    def __add__(self, other):
        self._check(other)
        return FpNum(self.field, self.r + other.r)

    def __sub__(self, other):
        self._check(other)
        return FpNum(self.field, self.r - other.r)

    def __neg__(self):
        return FpNum(self.field, -self.r)

    def __mul__(self, other):
        if isinstance(other, int):
            return FpNum(self.field, self.r * other)
        self._check(other)
        return FpNum(self.field, self.r * other.r)

    __rmul__ = __mul__

    def inv(self):
        if self.r == 0:
            raise ZeroDivisionError(f"inversion of zero in {self.field.tag}")
        return FpNum(self.field, pow(self.r, self.field.p - 2, self.field.p))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inv()

    def __eq__(self, other):
        if not isinstance(other, FpNum) or other.field is not self.field:
            return NotImplemented
        return self.r == other.r

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((id(self.field), self.r))

    def __repr__(self):
        return f"{self.r} (mod {self.field.p})"


class PrimeFieldF:
    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.tag = f"F_{p}"
        self.zero = FpNum(self, 0)
        self.one = FpNum(self, 1)

    def from_int(self, n):
        return FpNum(self, int(n))

    def from_fraction(self, c):
        c = Fraction(c)
        if c.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return FpNum(self, c.numerator * pow(c.denominator, self.p - 2, self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


@lru_cache(maxsize=None)
def prime_field(p):
    return PrimeFieldF(p)


# ---------------------------------------------------------------------------
# truncated formal series with a single allowed pole order

class SeriesNum:
    """Truncated series sum c_m * x^m over a base field, m in [-1, K]."""

    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        self.field = field
        c = {}
        for m, v in coeffs.items():
            if m < -1:
                raise NotInvertible(
                    f"pole of order {-m} exceeds the single allowed order")
            if m <= field.K and not v.is_zero():
                c[m] = v
        self.c = c

    def _check(self, other):
        if not isinstance(other, SeriesNum) or other.field is not self.field:
            raise BackendMismatch(f"cannot combine {self.field.tag} scalar with {other!r}")

    def is_zero(self):
        return not self.c

    def coeff(self, m):
        return self.c.get(m, self.field.base.zero)

    def valuation(self):
        return min(self.c) if self.c else None

    def __add__(self, other):
        self._check(other)
        out = dict(self.c)
        for m, v in other.c.items():
            out[m] = out[m] + v if m in out else v
        return SeriesNum(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SeriesNum(self.field, {m: -v for m, v in self.c.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            o = self.field.base.from_fraction(other)
            return SeriesNum(self.field, {m: v * o for m, v in self.c.items()})
        self._check(other)
        K = self.field.K
        out = {}
        for m1, v1 in self.c.items():
            for m2, v2 in other.c.items():
                m = m1 + m2
                if m > K:
                    continue
                if m < -1:
                    raise NotInvertible("product develops a pole of order > 1")
                out[m] = out[m] + v1 * v2 if m in out else v1 * v2
        return SeriesNum(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        self._check(other)
        return self * series_invert(other)

    def __eq__(self, other):
        if not isinstance(other, SeriesNum) or other.field is not self.field:
            return NotImplemented
        return (self - other).is_zero()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def truncate(self, K2):
        """Image in the series ring of lower truncation order K2."""
        f2 = series_field(self.field.base, K2, self.field.name)
        return SeriesNum(f2, {m: v for m, v in self.c.items() if m <= K2})

    def __repr__(self):
        if not self.c:
            return "0"
        name = self.field.name
        parts = []
        for m in sorted(self.c):
            v = self.c[m]
            if m == 0:
                parts.append(f"({v})")
            else:
                parts.append(f"({v})*{name}^{m}")
        return " + ".join(parts)


class SeriesField:
    def __init__(self, base, K, name="w"):
        self.base = base
        self.K = K
        self.name = name
        self.tag = f"{getattr(base, 'tag', base)}[[{name}]]/{name}^{K + 1}"
        self.zero = SeriesNum(self, {})
        self.one = SeriesNum(self, {0: base.one})

    def from_fraction(self, c):
        return SeriesNum(self, {0: self.base.from_fraction(c)})

    from_int = from_fraction

    def from_base(self, v, order=0):
        return SeriesNum(self, {order: v})

    def var(self, power=1):
        return SeriesNum(self, {power: self.base.one})

    def exp(self, s):
        """exp of a series of valuation >= 1 (finite sum after truncation)."""
        if not s.is_zero() and s.valuation() < 1:
            raise NotInvertible("exp requires valuation >= 1")
        out = self.one
        term = self.one
        for j in range(1, self.K + 1):
            term = term * s * Fraction(1, j)
            if term.is_zero():
                break
            out = out + term
        return out

    def __repr__(self):
        return f"SeriesField({self.tag})"


@lru_cache(maxsize=None)
def series_field(base, K, name="w"):
    return SeriesField(base, K, name)


def series_invert(s):
    """Inverse of a truncated series whose lowest order is -1, 0 or 1."""
    if s.is_zero():
        raise ZeroDivisionError("inversion of the zero series")
    v = s.valuation()
    if v > 1:
        raise NotInvertible(
            f"lowest order {v} > 1: inverse would have a pole of order > 1")
    f = s.field
    lead = s.c[v]
    lead_inv = lead.inv()
    # s = lead * x^v * (1 + r) with val(r) >= 1
    r = {m - v: c * lead_inv for m, c in s.c.items() if m != v}
    out = {0: f.base.one}
    term = {0: f.base.one}
    # Neumann series up to the order needed for the shifted result
    for _ in range(f.K + 2):
        new = {}
        for m1, c1 in term.items():
            for m2, c2 in r.items():
                m = m1 + m2
                if m > f.K + 1:
                    continue
                new[m] = new[m] + c1 * c2 if m in new else c1 * c2
        term = {m: -c for m, c in new.items() if not c.is_zero()}
        if not term:
            break
        for m, c in term.items():
            out[m] = out[m] + c if m in out else c
    coeffs = {m - v: c * lead_inv for m, c in out.items() if -1 <= m - v <= f.K}
    return SeriesNum(f, coeffs)
