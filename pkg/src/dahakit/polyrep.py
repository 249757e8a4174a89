"""The polynomial representation on the Laurent ring.

Demazure-Lusztig operators T_i for all affine nodes (only T_0 involves
q), the group operators pi_r, composite T_w along reduced words, the
commuting difference Dunkl family Y_b, finite invariant subspaces with
matrix restrictions, and the relation-verification harness.

Operator identities are verified on finite probe boxes with fully
symbolic coefficients, never at numeric samples: the representation is
faithful for symbolic (q, t), so probe equality on a spanning set of the
relevant degree decides these polynomial identities exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .laurent import LaurentPoly, ProbeBox, build_discriminant, monomial, monomial_action
from .report import CheckRecord, Report, fmt_x_monomial, run_checks
from .rootdata import vec_add, vec_neg, vec_sub


class ClosureOverflow(RuntimeError):
    """A subspace closure escaped the configured weight bound."""

    def __init__(self, weight):
        super().__init__(f"closure escaped the weight bound at {weight}")
        self.weight = weight


class DividedDifferenceError(AssertionError):
    """Internal: a divided difference left a remainder (implementation bug)."""


class LinOp:
    """Composable linear endomorphism of a polynomial module."""

    __slots__ = ("fn", "tag")

    def __init__(self, fn, tag=""):
        self.fn = fn
        self.tag = tag

    def __call__(self, p):
        return self.fn(p)

    def __matmul__(self, other):
        return LinOp(lambda p: self.fn(other.fn(p)), f"{self.tag}*{other.tag}")

    def __add__(self, other):
        return LinOp(lambda p: self.fn(p) + other.fn(p), f"({self.tag}+{other.tag})")

    def __sub__(self, other):
        return LinOp(lambda p: self.fn(p) - other.fn(p), f"({self.tag}-{other.tag})")

    def scaled(self, c):
        return LinOp(lambda p: self.fn(p).scale(c), f"{c}*{self.tag}")

    @staticmethod
    def identity(tag="id"):
        return LinOp(lambda p: p, tag)

    def __repr__(self):
        return f"LinOp({self.tag})"


class MatrixRestriction:
    """A linear operator restricted to a finite invariant weight basis."""

    __slots__ = ("basis", "matrix", "tag")

    def __init__(self, basis, matrix, tag):
        self.basis = basis
        self.matrix = matrix
        self.tag = tag


class PolyRep:
    """Bundles a root datum with the (q, t) scalar field and the operators."""

    def __init__(self, datum, field):
        self.datum = datum
        self.field = field
        self._thalf = {}
        self._top_cache = {}

    # -- scalar helpers -------------------------------------------------------

    def t_half(self, node, e=1):
        key = (node, e)
        got = self._thalf.get(key)
        if got is None:
            got = self.field.t_half(self.datum.node_nu(node), e)
            self._thalf[key] = got
        return got

    def t_diff(self, node):
        return self.t_half(node, 1) - self.t_half(node, -1)

    # -- generators -----------------------------------------------------------

    def apply_T(self, i, p):
        """Demazure-Lusztig operator at affine node i (0 <= i <= n)."""
        datum, field = self.datum, self.field
        out = LaurentPoly(datum, field)
        th = self.t_half(i)
        td = self.t_diff(i)
        for b, v in p.c.items():
            sb, slev = datum.node_reflect(i, b, Fraction(0))
            out.add_term(sb, v * th if slev == 0 else v * th * field.q_frac(slev))
            sign, labels = datum.node_string(i, b, Fraction(0), "x")
            if labels:
                c = v * td if sign > 0 else -(v * td)
                for w, lev in labels:
                    out.add_term(w, c if lev == 0 else c * field.q_frac(lev))
        return out

    def apply_T_inv(self, i, p):
        # from the quadratic relation: T^-1 = T - t^(1/2) + t^(-1/2)
        return self.apply_T(i, p) - p.scale(self.t_diff(i))

    def apply_pi(self, r, p):
        return monomial_action(self.datum.pi[r], p)

    def apply_pi_inv(self, r, p):
        return monomial_action(self.datum.pi[r].inv(), p)

    def t_op(self, i):
        return LinOp(lambda p, i=i: self.apply_T(i, p), f"T{i}")

    def t_inv_op(self, i):
        return LinOp(lambda p, i=i: self.apply_T_inv(i, p), f"T{i}^-1")

    def pi_op(self, r):
        return LinOp(lambda p, r=r: self.apply_pi(r, p), f"pi{r}")

    def x_op(self, b, level=Fraction(0)):
        b = tuple(b)
        q = None if level == 0 else self.field.q_frac(level)

        def mult(p, b=b, q=q):
            out = LaurentPoly(p.datum, p.field)
            for w, v in p.c.items():
                out.add_term(vec_add(w, b), v if q is None else v * q)
            return out
        return LinOp(mult, f"X{b}" + (f"q^{level}" if level else ""))

    def w_op(self, elt):
        return LinOp(lambda p, e=elt: monomial_action(e, p), "w")

    # -- composite operators --------------------------------------------------

    def t_elt_apply(self, elt, p):
        """T_w for an extended affine Weyl element, along a reduced word."""
        r, word = elt.reduced_word()
        for i in reversed(word):
            p = self.apply_T(i, p)
        return self.apply_pi(r, p)

    def t_elt_inv_apply(self, elt, p):
        r, word = elt.reduced_word()
        p = self.apply_pi_inv(r, p)
        for i in word:
            p = self.apply_T_inv(i, p)
        return p

    def t_word_op(self, elt):
        return LinOp(lambda p, e=elt: self.t_elt_apply(e, p), "Tw")

    def apply_Y(self, b, p, level=Fraction(0)):
        """The difference Dunkl operator for b in P; general b splits as a
        difference of dominant weights, the negative part via T-inverses."""
        bp = tuple(max(x, 0) for x in b)
        bm = tuple(max(-x, 0) for x in b)
        if any(bm):
            p = self.t_elt_inv_apply(self.datum.translation(bm), p)
        if any(bp):
            p = self.t_elt_apply(self.datum.translation(bp), p)
        if level:
            p = p.scale(self.field.q_frac(-level))
        return p

    def y_op(self, b, level=Fraction(0)):
        return LinOp(lambda p: self.apply_Y(b, p, level), f"Y{tuple(b)},{level}")

    # -- probes and operator equality -----------------------------------------

    def probe_monomials(self, degree):
        return ProbeBox(self.datum, degree).monomials(self.field)

    def first_mismatch(self, op1, op2, probes):
        """Witness weight where two operators differ on the probe set, or None."""
        for p in probes:
            if not (op1(p) - op2(p)).is_zero():
                (w,) = p.c.keys()
                return w
        return None

    # -- invariant subspaces ---------------------------------------------------

    def close_subspace(self, ops, seed, bound=10):
        """Smallest op-stable weight set containing the seed (raises
        ClosureOverflow with the escaping weight as witness)."""
        basis = set(tuple(w) for w in seed)
        frontier = list(basis)
        while frontier:
            nxt = []
            for w in frontier:
                for op in ops:
                    img = op(monomial(self.datum, self.field, w))
                    for w2 in img.c:
                        if max(abs(x) for x in w2) > bound:
                            raise ClosureOverflow(w2)
                        if w2 not in basis:
                            basis.add(w2)
                            nxt.append(w2)
            frontier = nxt
        return sorted(basis)

    def restrict(self, op, basis):
        """Matrix of op on the span of the basis monomials; asserts invariance."""
        index = {w: k for k, w in enumerate(basis)}
        n = len(basis)
        cols = []
        for w in basis:
            img = op(monomial(self.datum, self.field, w))
            col = [self.field.zero] * n
            for w2, v in img.c.items():
                if w2 not in index:
                    raise ClosureOverflow(w2)
                col[index[w2]] = v
            cols.append(col)
        matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
        return MatrixRestriction(list(basis), matrix, op.tag)

    def invariant_subspace(self, ops, seed, bound=10):
        if not seed:
            return []
        basis = self.close_subspace(ops, seed, bound)
        return [self.restrict(op, basis) for op in ops]


# ---------------------------------------------------------------------------
# relation suite

def _affine_x_image(rep, i, b):
    """Multiplication operator by X_b X_{alpha_i}^{-1} with affine bookkeeping."""
    datum = rep.datum
    if i == 0:
        # X_{alpha_0} = q X_theta^{-1}
        return rep.x_op(vec_add(b, datum.theta), Fraction(-1))
    return rep.x_op(vec_sub(b, datum.alpha[i - 1]))


def relation_suite(datum, field, degree, rng_seed=20240801, tt_pairs=4):
    """Verify the defining relations of the double affine Hecke algebra in
    the polynomial representation, on a degree-d probe box."""
    rep = PolyRep(datum, field)
    probes = rep.probe_monomials(degree)
    small = ProbeBox(datum, 1).weights
    n = datum.n
    jobs = []

    def quad(i):
        def job():
            th, tmh = rep.t_half(i), rep.t_half(i, -1)
            for p in probes:
                r1 = rep.apply_T(i, p) + p.scale(tmh)
                r2 = rep.apply_T(i, r1) - r1.scale(th)
                if not r2.is_zero():
                    (w,) = p.c.keys()
                    return fmt_x_monomial(w)
            return None
        return job

    for i in range(n + 1):
        jobs.append((f"quadratic_T{i}", quad(i)))

    def braid(i, j, m):
        def job():
            for p in probes:
                a, b = p, p
                for step in range(m):
                    a = rep.apply_T(i if step % 2 == 0 else j, a)
                    b = rep.apply_T(j if step % 2 == 0 else i, b)
                if not (a - b).is_zero():
                    (w,) = p.c.keys()
                    return fmt_x_monomial(w)
            return None
        return job

    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            m = datum.m_ij[i][j]
            if m is not None and m > 2:
                jobs.append((f"braid_T{i}_T{j}_m{m}", braid(i, j, m)))
            elif m == 2:
                jobs.append((f"commute_T{i}_T{j}", braid(i, j, 2)))

    def pi_conj(r, i):
        j = datum.pi_node_perm[r][i]

        def job():
            rs = datum.rstar[r]
            for p in probes:
                lhs = rep.apply_pi(r, rep.apply_T(i, rep.apply_pi(rs, p)))
                rhs = rep.apply_T(j, p)
                if not (lhs - rhs).is_zero():
                    (w,) = p.c.keys()
                    return fmt_x_monomial(w)
            return None
        return job

    for r in datum.O_prime:
        for i in range(n + 1):
            jobs.append((f"pi{r}_conj_T{i}", pi_conj(r, i)))

    def txt(i, b):
        def job():
            xb = rep.x_op(b)
            rhs_mult = _affine_x_image(rep, i, b)
            for p in probes:
                lhs = rep.apply_T(i, xb(rep.apply_T(i, p)))
                rhs = rhs_mult(p)
                if not (lhs - rhs).is_zero():
                    (w,) = p.c.keys()
                    return fmt_x_monomial(w)
            return None
        return job

    def tx_commute(i, b):
        def job():
            xb = rep.x_op(b)
            for p in probes:
                lhs = rep.apply_T(i, xb(p))
                rhs = xb(rep.apply_T(i, p))
                if not (lhs - rhs).is_zero():
                    (w,) = p.c.keys()
                    return fmt_x_monomial(w)
            return None
        return job

    for i in range(n + 1):
        for b in small:
            d = datum.node_pairing(i, b)
            if d == 1:
                jobs.append((f"TXT_T{i}_b{b}", txt(i, b)))
            elif d == 0 and any(b):
                jobs.append((f"TX_commute_T{i}_b{b}", tx_commute(i, b)))

    def pi_x(r, b):
        def job():
            rs = datum.rstar[r]
            xb = rep.x_op(b)
            wt, lev = _pi_image(datum, r, b)
            image = rep.x_op(wt, lev)
            for p in probes:
                lhs = rep.apply_pi(r, xb(rep.apply_pi(rs, p)))
                rhs = image(p)
                if not (lhs - rhs).is_zero():
                    (w,) = p.c.keys()
                    return fmt_x_monomial(w)
            return None
        return job

    for r in datum.O_prime:
        for b in small:
            if any(b):
                jobs.append((f"pi{r}_X_b{b}", pi_x(r, b)))

    def tt_additive():
        rng = random.Random(rng_seed)
        found = []
        attempts = 0
        while len(found) < tt_pairs and attempts < 400:
            attempts += 1
            elts = []
            for _ in range(2):
                r = rng.choice(datum.O)
                word = [rng.randrange(n + 1) for _ in range(rng.randrange(1, 4))]
                elts.append(datum.evaluate_word(r, word))
            v, w = elts
            if (v * w).length() == v.length() + w.length() and \
                    v.length() and w.length():
                found.append((v, w))
        return found

    def tt_check(v, w, idx):
        def job():
            vw = v * w
            for p in probes:
                lhs = rep.t_elt_apply(v, rep.t_elt_apply(w, p))
                rhs = rep.t_elt_apply(vw, p)
                if not (lhs - rhs).is_zero():
                    (wt,) = p.c.keys()
                    return fmt_x_monomial(wt)
            return None
        return job

    for idx, (v, w) in enumerate(tt_additive()):
        jobs.append((f"T_additive_pair{idx}", tt_check(v, w, idx)))

    def y_commute(b, c):
        def job():
            for p in probes:
                lhs = rep.apply_Y(b, rep.apply_Y(c, p))
                rhs = rep.apply_Y(c, rep.apply_Y(b, p))
                if not (lhs - rhs).is_zero():
                    (w,) = p.c.keys()
                    return fmt_x_monomial(w)
            return None
        return job

    ypairs = []
    for bi in range(len(small)):
        for ci in range(bi + 1, len(small)):
            b, c = small[bi], small[ci]
            if any(b) and any(c) and b != c:
                ypairs.append((b, c))
    for b, c in ypairs:
        jobs.append((f"Y_commute_{b}_{c}", y_commute(b, c)))

    def delta_eigen(i):
        def job():
            delta = build_discriminant(datum, field)
            lhs = rep.apply_T(i, delta)
            rhs = delta.scale(-rep.t_half(i, -1))
            if not (lhs - rhs).is_zero():
                return "discriminant"
            return None
        return job

    for i in range(1, n + 1):
        jobs.append((f"discriminant_T{i}", delta_eigen(i)))

    checks = run_checks(jobs)
    return Report(
        suite="polyrep", root_type=datum.label, backend=field.tag,
        params={"degree": degree, "tt_pairs": tt_pairs}, checks=checks)


def _pi_image(datum, r, b):
    """(weight, q-exponent) of pi_r(X_b) = q^{(omega_{r*}, b)} X_{u_r^{-1}(b)}."""
    from .rootdata import mat_apply
    uinv = datum.w_inverse(datum.u[r])
    wt = mat_apply(uinv, b)
    lev = datum.inner(datum.omega[datum.rstar[r] - 1], b)
    return wt, lev
