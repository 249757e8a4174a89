"""Root systems, weight lattices, and extended affine Weyl groups.

Weights live in fundamental-weight coordinates, stored as plain integer
tuples: for b = sum l_i omega_i the tuple is (l_1, ..., l_n), so the
pairing (b, alpha_i^vee) is just b[i-1].  Roots are kept in the same
basis (row i of the Cartan matrix is alpha_i).  The inner product is
normalized so that short roots have squared length 2.

Elements of the extended affine Weyl group W x P are stored as pairs
(w, t): the finite part w as an integer matrix in omega-coordinates and
the translation weight t, with the translation applied first.  The
affine action on a pair [z, level] is

    (w, t) . [z, level] = [w(z), level - (z, t)].
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import lcm

# Cartan matrices C[i][j] = (alpha_i, alpha_j^vee) and squared-half-lengths
# nu_i = (alpha_i, alpha_i)/2, Bourbaki node numbering.
CARTAN_TABLE = {
    "A1": ([[2]], [1]),
    "A2": ([[2, -1], [-1, 2]], [1, 1]),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [1, 1, 1]),
    "B2": ([[2, -2], [-1, 2]], [2, 1]),
    "C2": ([[2, -1], [-2, 2]], [1, 2]),
    "C3": ([[2, -1, 0], [-1, 2, -1], [0, -2, 2]], [1, 1, 2]),
    "D4": ([[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
           [1, 1, 1, 1]),
    "G2": ([[2, -1], [-3, 2]], [1, 3]),
}

# |W| as the product of the fundamental degrees, used as an independent check.
DEGREE_TABLE = {
    "A1": (2,), "A2": (2, 3), "A3": (2, 3, 4), "B2": (2, 4), "C2": (2, 4),
    "C3": (2, 4, 6), "D4": (2, 4, 4, 6), "G2": (2, 6),
}

POSITIVE_ROOT_COUNT = {
    "A1": 1, "A2": 3, "A3": 6, "B2": 4, "C2": 4, "C3": 9, "D4": 12, "G2": 6,
}


class UnsupportedType(ValueError):
    pass


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def vec_scale(a, c):
    return tuple(c * x for x in a)


def mat_apply(m, v):
    return tuple(sum(row[c] * v[c] for c in range(len(v))) for row in m)


def mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


def mat_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    det = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        det += (-1) ** j * m[0][j] * mat_det(minor)
    return det


def _frac_mat_inv(m):
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


class AffElt:
    """Element w . t_b of the extended affine Weyl group."""

    __slots__ = ("datum", "w", "t")

    def __init__(self, datum, w, t):
        self.datum = datum
        self.w = w
        self.t = t

    def key(self):
        return (self.w, self.t)

    def __eq__(self, other):
        return (isinstance(other, AffElt) and self.w == other.w
                and self.t == other.t)

    def __hash__(self):
        return hash((self.w, self.t))

    def __mul__(self, other):
        # (w1 t_b1)(w2 t_b2) = (w1 w2) t_{w2^-1(b1) + b2}
        w2inv = self.datum.w_inverse(other.w)
        t = vec_add(mat_apply(w2inv, self.t), other.t)
        return AffElt(self.datum, mat_mul(self.w, other.w), t)

    def inv(self):
        winv = self.datum.w_inverse(self.w)
        return AffElt(self.datum, winv, vec_neg(mat_apply(self.w, self.t)))

    def is_identity(self):
        return self.t == self.datum.zero_wt and self.w == self.datum.id_mat

    def act(self, z, level=Fraction(0)):
        """Affine action on [z, level]; works for weights and affine roots."""
        return mat_apply(self.w, z), level - self.datum.inner(z, self.t)

    def act_weight(self, z):
        return mat_apply(self.w, z)

    def length(self):
        return self.datum.aff_length(self)

    def reduced_word(self):
        return self.datum.reduce_word(self)

    def __repr__(self):
        return f"AffElt(w={self.w}, t={self.t})"


class RootDatum:
    """Immutable table of roots, coroots, weights and Weyl-group data."""

    def __init__(self, label):
        if label not in CARTAN_TABLE:
            raise UnsupportedType(
                f"unsupported type {label!r}; known: {sorted(CARTAN_TABLE)}")
        cartan, nu = CARTAN_TABLE[label]
        self.label = label
        self.n = len(cartan)
        self.cartan = tuple(tuple(r) for r in cartan)
        self.nu = tuple(nu)
        n = self.n
        self.zero_wt = (0,) * n
        self.id_mat = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        # Gram matrix of the omega basis: G C^T = diag(nu)
        ct_inv = _frac_mat_inv([[self.cartan[j][i] for j in range(n)]
                                for i in range(n)])
        self.gram = tuple(
            tuple(self.nu[i] * ct_inv[i][j] for j in range(n)) for i in range(n))
        assert all(self.gram[i][j] == self.gram[j][i]
                   for i in range(n) for j in range(n))
        # m: least natural number with (P, P) in (1/m)Z
        self.m = lcm(*[x.denominator for row in self.gram for x in row])
        # simple reflections as matrices on omega-coordinates
        self.simple_refl = tuple(self._simple_matrix(i) for i in range(n))
        # simple roots in omega-coordinates
        self.alpha = tuple(self.cartan[i] for i in range(n))
        self.omega = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        self.rho = (1,) * n
        self._build_roots()
        self._build_weyl_group()
        self._build_affine()

    # -- construction -------------------------------------------------------

    def _simple_matrix(self, i):
        n = self.n
        return tuple(
            tuple((1 if k == c else 0) - (self.cartan[i][k] if c == i else 0)
                  for c in range(n))
            for k in range(n))

    def _build_roots(self):
        # close the simple roots under simple reflections
        seen = set(self.alpha)
        frontier = list(self.alpha)
        while frontier:
            nxt = []
            for r in frontier:
                for s in self.simple_refl:
                    img = mat_apply(s, r)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        ct_inv = _frac_mat_inv([[self.cartan[j][i] for j in range(self.n)]
                                for i in range(self.n)])
        roots = []
        for r in seen:
            coords = mat_apply(ct_inv, r)
            assert all(c.denominator == 1 for c in coords)
            coords = tuple(int(c) for c in coords)
            if all(c >= 0 for c in coords):
                roots.append((r, coords))
        # sort by height then lexicographically, for determinism
        roots.sort(key=lambda rc: (sum(rc[1]), rc[1]))
        self.pos_roots = tuple(r for r, _ in roots)
        self.pos_root_alpha_coords = tuple(c for _, c in roots)
        self.pos_root_set = set(self.pos_roots)
        nu_of = {}
        coroot_pairing = {}
        for r, coords in roots:
            nn = self.inner(r, r) / 2
            assert nn.denominator == 1
            nu_of[r] = int(nn)
            # coroot coordinates d_j with r^vee = sum d_j alpha_j^vee
            d = tuple(c * self.nu[j] // nu_of[r] for j, c in enumerate(coords))
            coroot_pairing[r] = d
        self.nu_of_root = nu_of
        self.coroot_coords = coroot_pairing
        self.nu_values = tuple(sorted(set(nu_of.values())))
        # theta: the highest short root (equals the maximal positive coroot)
        height = {r: sum(c) for (r, c) in roots}
        short = [r for r in self.pos_roots if nu_of[r] == 1]
        self.theta = max(short, key=lambda r: height[r])
        self.h = 1 + int(self.inner(self.rho, self.theta))
        # sums of short/long positive coroots (exponent bookkeeping)
        n = self.n
        ssum = (Fraction(0),) * n
        lsum = (Fraction(0),) * n
        for r in self.pos_roots:
            cv = tuple(Fraction(x, nu_of[r]) for x in r)
            if nu_of[r] == 1:
                ssum = tuple(a + b for a, b in zip(ssum, cv))
            else:
                lsum = tuple(a + b for a, b in zip(lsum, cv))
        self.short_coroot_sum = ssum
        self.long_coroot_sum = lsum

    def _build_weyl_group(self):
        seen = {self.id_mat}
        frontier = [self.id_mat]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self.simple_refl:
                    img = mat_mul(s, w)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        self.weyl_group = tuple(sorted(seen))
        self._inv_cache = {}
        flips = {w: self._flip_count(w) for w in self.weyl_group}
        self.w0 = max(self.weyl_group, key=lambda w: flips[w])
        assert flips[self.w0] == len(self.pos_roots)

    def _flip_count(self, w):
        return sum(1 for r in self.pos_roots
                   if mat_apply(w, r) not in self.pos_root_set)

    def w_inverse(self, w):
        got = self._inv_cache.get(w)
        if got is None:
            got = _int_mat_inv(w)
            self._inv_cache[w] = got
        return got

    def w_sign(self, w):
        return mat_det(w)

    def w_length(self, w):
        return self._flip_count(w)

    def _parabolic_longest(self, fixed_wt):
        gens = [self.simple_refl[i] for i in range(self.n) if fixed_wt[i] == 0]
        seen = {self.id_mat}
        frontier = [self.id_mat]
        while frontier:
            nxt = []
            for w in frontier:
                for s in gens:
                    img = mat_mul(s, w)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return max(seen, key=self._flip_count)

    def _build_affine(self):
        n = self.n
        # minuscule indices: coefficient of alpha_r^vee in theta^vee is 1
        d = self.coroot_coords[self.theta]
        self.O_prime = tuple(i + 1 for i in range(n) if d[i] == 1)
        self.O = (0,) + self.O_prime
        assert len(self.O) == abs(mat_det(self.cartan))
        # u_r = w0 w0^{omega_r} and pi_r = t_{omega_r} u_r^{-1}
        self.u = {}
        self.pi = {}
        for r in self.O_prime:
            w0r = self._parabolic_longest(self.omega[r - 1])
            u = mat_mul(self.w0, w0r)
            self.u[r] = u
            uinv = self.w_inverse(u)
            self.pi[r] = AffElt(self, uinv, mat_apply(u, self.omega[r - 1]))
        self.pi[0] = AffElt(self, self.id_mat, self.zero_wt)
        pi_lookup = {self.pi[r].key(): r for r in self.O}
        self._pi_lookup = pi_lookup
        # r*: pi_r^{-1} = pi_{r*}
        self.rstar = {0: 0}
        for r in self.O_prime:
            self.rstar[r] = pi_lookup[self.pi[r].inv().key()]
        # affine simple roots [alpha_i, 0] (i >= 1) and alpha_0 = [-theta, 1]
        self.aff_simple = ((vec_neg(self.theta), Fraction(1)),) + tuple(
            (self.alpha[i], Fraction(0)) for i in range(n))
        self.nu_node = (1,) + self.nu
        # affine Cartan pairings and braid exponents m_ij
        pair = [[0] * (n + 1) for _ in range(n + 1)]
        for i in range(n + 1):
            for j in range(n + 1):
                if i == j:
                    pair[i][j] = 2
                    continue
                ai = self.aff_simple[i][0]
                aj = self.aff_simple[j][0]
                v = 2 * self.inner(ai, aj) / self.inner(aj, aj)
                assert v.denominator == 1
                pair[i][j] = int(v)
        self.aff_pairing = tuple(tuple(r) for r in pair)
        mij = [[0] * (n + 1) for _ in range(n + 1)]
        # product 4 (the doubled affine A1 bond) means no finite braid relation
        table = {0: 2, 1: 3, 2: 4, 3: 6, 4: None}
        for i in range(n + 1):
            for j in range(n + 1):
                if i != j:
                    mij[i][j] = table[pair[i][j] * pair[j][i]]
        self.m_ij = tuple(tuple(r) for r in mij)
        # node permutations of the pi_r
        self.pi_node_perm = {}
        for r in self.O:
            perm = []
            for i in range(n + 1):
                root, lev = self.aff_simple[i]
                img = self.pi[r].act(root, lev)
                perm.append(self.aff_simple.index(img))
            self.pi_node_perm[r] = tuple(perm)

    # -- basic pairings ------------------------------------------------------

    def inner(self, a, b):
        """Inner product of weights in omega-coordinates (exact Fraction)."""
        g = self.gram
        total = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                row = g[i]
                for j, bj in enumerate(b):
                    if bj:
                        total += ai * bj * row[j]
        return total

    def pair_coroot(self, b, root):
        """(b, root^vee) as an integer."""
        d = self.coroot_coords[root]
        return sum(x * y for x, y in zip(b, d))

    def reflect_root(self, root, b):
        """s_root(b) for a positive root, acting on a weight."""
        return vec_sub(b, vec_scale(root, self.pair_coroot(b, root)))

    def simple_elt(self, i):
        """s_i (0 <= i <= n) as an extended affine Weyl group element."""
        if i == 0:
            s_theta = self._reflection_matrix(self.theta)
            return AffElt(self, s_theta, vec_neg(self.theta))
        return AffElt(self, self.simple_refl[i - 1], self.zero_wt)

    def translation(self, b):
        return AffElt(self, self.id_mat, tuple(b))

    def weyl_elt(self, w):
        return AffElt(self, w, self.zero_wt)

    @lru_cache(maxsize=None)
    def _reflection_matrix_cached(self, root):
        cols = []
        for j in range(self.n):
            img = self.reflect_root(root, self.omega[j])
            cols.append(img)
        return tuple(tuple(cols[j][i] for j in range(self.n))
                     for i in range(self.n))

    def _reflection_matrix(self, root):
        return self._reflection_matrix_cached(tuple(root))

    # -- affine pairing data for node i (0 <= i <= n) -------------------------

    def node_pairing(self, i, b):
        """(b, alpha_i^vee) for the affine simple root, levels ignored."""
        if i == 0:
            v = -self.inner(b, self.theta)
            assert v.denominator == 1
            return int(v)
        return b[i - 1]

    def node_reflect(self, i, b, level):
        """s_i([b, level]) as (weight, level); level shifts only for i = 0."""
        d = self.node_pairing(i, b)
        if i == 0:
            return vec_add(b, vec_scale(self.theta, d)), level - d
        return vec_sub(b, vec_scale(self.alpha[i - 1], d)), level

    def node_string(self, i, b, level, side):
        """String labels for the divided differences along affine node i.

        side='x': labels of (X_{s_i b} - X_b)/(X_{alpha_i} - 1);
        side='y': labels of (Y_{s_i b} - Y_b)/(Y_{alpha_i}^{-1} - 1).
        Returns (sign, [(weight, level), ...]); levels move only for i = 0.
        """
        d = self.node_pairing(i, b)
        if d == 0:
            return 1, []
        if i == 0:
            step = self.theta
            lev_step = Fraction(-1)
        else:
            step = vec_neg(self.alpha[i - 1])
            lev_step = Fraction(0)
        # b - j*alpha_i = (b + j*step, level + j*lev_step)
        if side == "x":
            if d > 0:
                return -1, [(vec_add(b, vec_scale(step, j)), level + j * lev_step)
                            for j in range(1, d + 1)]
            return 1, [(vec_sub(b, vec_scale(step, j)), level - j * lev_step)
                       for j in range(0, -d)]
        if d > 0:
            return 1, [(vec_add(b, vec_scale(step, j)), level + j * lev_step)
                       for j in range(0, d)]
        return -1, [(vec_sub(b, vec_scale(step, j)), level - j * lev_step)
                    for j in range(1, -d + 1)]

    def node_nu(self, i):
        return 1 if i == 0 else self.nu[i - 1]

    # -- lengths and reduced words -------------------------------------------

    def aff_length(self, elt):
        """Number of positive affine roots sent to negative ones."""
        total = 0
        for r in self.pos_roots:
            d = self.pair_coroot(elt.t, r)
            wr_pos = mat_apply(elt.w, r) in self.pos_root_set
            # [r, 0]
            if d > 0 or (d == 0 and not wr_pos):
                total += 1
            # [r, nu j], j >= 1
            if d >= 1:
                total += d - 1 + (0 if wr_pos else 1)
            # [-r, nu j], j >= 1
            if -d >= 1:
                total += -d - 1 + (1 if wr_pos else 0)
        return total

    def _descent_right(self, elt, i):
        """True iff length(elt * s_i) < length(elt), via the sign of elt(alpha_i)."""
        root, lev = self.aff_simple[i]
        img, ilev = elt.act(root, lev)
        if ilev != 0:
            return ilev < 0
        return img not in self.pos_root_set

    def reduce_word(self, elt):
        """Reduced word (r, (i_1, ..., i_l)) with elt = pi_r s_{i_1} ... s_{i_l}."""
        cur = elt
        word = []
        while True:
            for i in range(self.n + 1):
                if self._descent_right(cur, i):
                    word.append(i)
                    cur = cur * self.simple_elt(i)
                    break
            else:
                break
        r = self._pi_lookup.get(cur.key())
        if r is None:
            raise AssertionError("length-zero element is not in Pi; group bug")
        word.reverse()
        return r, tuple(word)

    def evaluate_word(self, r, word):
        elt = self.pi[r]
        for i in word:
            elt = elt * self.simple_elt(i)
        return elt

    # -- orbits ---------------------------------------------------------------

    def orbit(self, b, modulus=None):
        """W-orbit of a weight, optionally with coordinates reduced mod N."""
        if modulus is not None:
            b = tuple(x % modulus for x in b)
        seen = {tuple(b)}
        frontier = [tuple(b)]
        while frontier:
            nxt = []
            for x in frontier:
                for s in self.simple_refl:
                    img = mat_apply(s, x)
                    if modulus is not None:
                        img = tuple(v % modulus for v in img)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return seen

    def dominant_rep(self, b):
        """The dominant representative of the W-orbit of b."""
        cur = tuple(b)
        while True:
            for i in range(self.n):
                if cur[i] < 0:
                    cur = mat_apply(self.simple_refl[i], cur)
                    break
            else:
                return cur

    def __repr__(self):
        return f"RootDatum({self.label})"


def _int_mat_inv(m):
    inv = _frac_mat_inv(m)
    assert all(x.denominator == 1 for row in inv for x in row)
    return tuple(tuple(int(x) for x in row) for row in inv)


@lru_cache(maxsize=None)
def build_root_datum(label):
    return RootDatum(label)


def weight_box(n, d):
    """All weights with |omega-coordinates| <= d (the probe box)."""
    return [tuple(c) for c in itertools.product(range(-d, d + 1), repeat=n)]
