"""Small exact linear algebra over the scalar backends.

Two solvers live here:

* dense matrices with Gaussian elimination (inverse, nullity) -- used for
  intertwiner matrices over symbolic fields and as an independent oracle
  on small commutant problems;
* a propagation solver for M g = g' M when every g, g' is a "partial
  monomial" matrix (at most one nonzero per row and per column), which is
  exactly the shape of the torus- and differential-operator generators.
  The constraints are two-term linear relations, so weighted union-find
  plus zero propagation solves the system exactly without elimination.
"""

from __future__ import annotations


class SingularMatrix(ArithmeticError):
    pass


class Mat:
    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]

    @property
    def n(self):
        return len(self.rows)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field, n):
        z = field.zero
        return cls(field, [[z] * n for _ in range(n)])

    def __add__(self, other):
        return Mat(self.field, [[a + b for a, b in zip(r1, r2)]
                                for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat(self.field, [[a - b for a, b in zip(r1, r2)]
                                for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat(self.field, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        n = self.n
        z = self.field.zero
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = z
                for k in range(n):
                    a = self.rows[i][k]
                    if not a.is_zero():
                        b = other.rows[k][j]
                        if not b.is_zero():
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Mat(self.field, out)

    def scale(self, c):
        return Mat(self.field, [[a * c for a in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return all((a - b).is_zero() for r1, r2 in zip(self.rows, other.rows)
                   for a, b in zip(r1, r2))

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def inverse(self):
        """Gauss-Jordan inverse; raises SingularMatrix over the field."""
        n = self.n
        f = self.field
        aug = [list(self.rows[i]) + [f.one if j == i else f.zero for j in range(n)]
               for i in range(n)]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if not aug[r][col].is_zero():
                    piv = r
                    break
            if piv is None:
                raise SingularMatrix(f"matrix is singular at column {col}")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = aug[col][col].inv()
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    c = aug[r][col]
                    aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
        return Mat(f, [row[n:] for row in aug])

    def __repr__(self):
        return "Mat[" + "; ".join(
            ", ".join(str(a) for a in r) for r in self.rows) + "]"


def nullity(field, rows):
    """Dimension of the solution space of a homogeneous system (list of rows)."""
    if not rows:
        return 0
    ncols = len(rows[0])
    mat = [list(r) for r in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if not mat[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col].inv()
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and not mat[r][col].is_zero():
                c = mat[r][col]
                mat[r] = [x - c * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return ncols - rank


# ---------------------------------------------------------------------------
# partial-monomial matrices and the propagation solver

class PartialMonomial:
    """Matrix with at most one nonzero entry per row and per column.

    Stored by columns: col[j] = (i, c) means the j-th basis vector maps to
    c * e_i; col[j] = None means it maps to zero.
    """

    __slots__ = ("field", "col")

    def __init__(self, field, col):
        self.field = field
        self.col = list(col)
        rows = [i for e in col if e is not None for i in (e[0],)]
        assert len(rows) == len(set(rows)), "duplicate row in partial monomial"

    @property
    def n(self):
        return len(self.col)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [(j, field.one) for j in range(n)])

    @classmethod
    def permutation(cls, field, perm, scales=None):
        return cls(field, [(perm[j], scales[j] if scales else field.one)
                           for j in range(len(perm))])

    @classmethod
    def diagonal(cls, field, diag):
        return cls(field, [(j, d) for j, d in enumerate(diag)])

    def row_map(self):
        row = [None] * self.n
        for j, e in enumerate(self.col):
            if e is not None:
                row[e[0]] = (j, e[1])
        return row

    def __mul__(self, other):
        # (self*other) e_j = self(other e_j)
        col = []
        for e in other.col:
            if e is None:
                col.append(None)
                continue
            k, c = e
            e2 = self.col[k]
            col.append(None if e2 is None else (e2[0], e2[1] * c))
        return PartialMonomial(self.field, col)

    def inv(self):
        col = [None] * self.n
        for j, e in enumerate(self.col):
            if e is None:
                raise SingularMatrix("partial monomial not invertible")
            i, c = e
            col[i] = (j, c.inv())
        return PartialMonomial(self.field, col)

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        out = PartialMonomial.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, PartialMonomial):
            return NotImplemented
        for a, b in zip(self.col, other.col):
            if (a is None) != (b is None):
                return False
            if a is not None and (a[0] != b[0] or a[1] != b[1]):
                return False
        return True

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def is_identity(self):
        return all(e is not None and e[0] == j and e[1].is_one()
                   for j, e in enumerate(self.col))

    def scale(self, c):
        return PartialMonomial(
            self.field,
            [None if e is None else (e[0], e[1] * c) for e in self.col])

    def to_dense(self):
        m = Mat.zero(self.field, self.n)
        for j, e in enumerate(self.col):
            if e is not None:
                m.rows[e[0]][j] = e[1]
        return m


class _WeightedDSU:
    """Union-find storing M[x] = weight[x] * M[root(x)]; zero flags per root."""

    def __init__(self, size, one):
        self.parent = list(range(size))
        self.weight = [one] * size
        self.zero = [False] * size
        self.inconsistent = False

    def find(self, x):
        root = x
        path = []
        while self.parent[root] != root:
            path.append(root)
            root = self.parent[root]
        w = self.weight[x]
        # recompute weights along the path by a second pass
        acc_cache = {}

        def weight_to_root(y):
            if self.parent[y] == y:
                return None  # identity weight handled by caller
            if y in acc_cache:
                return acc_cache[y]
            p = self.parent[y]
            if self.parent[p] == p:
                acc = self.weight[y]
            else:
                acc = self.weight[y] * weight_to_root(p)
            acc_cache[y] = acc
            return acc

        for y in path:
            acc = weight_to_root(y)
            self.parent[y] = root
            self.weight[y] = acc
        return root

    def weight_of(self, x):
        self.find(x)
        return self.weight[x]

    def set_zero(self, x):
        self.zero[self.find(x)] = True

    def union(self, x, y, lam):
        """Impose M[x] = lam * M[y]."""
        rx, ry = self.find(x), self.find(y)
        wx, wy = self.weight[x], self.weight[y]
        if rx == ry:
            # M[x] = wx M[r], M[y] = wy M[r]; need wx = lam*wy
            if wx != lam * wy:
                self.set_zero(rx)
            return
        # attach ry under rx: M[ry] = ? ; from M[x]=wx M[rx], M[y]=wy M[ry]
        # and M[x] = lam M[y]: wx M[rx] = lam wy M[ry]
        self.parent[ry] = rx
        self.weight[ry] = wx * (lam * wy).inv()
        if self.zero[ry]:
            self.zero[rx] = True
            self.zero[ry] = False

    def component_count(self):
        roots = set()
        for x in range(len(self.parent)):
            r = self.find(x)
            if not self.zero[r]:
                roots.add(r)
        return len(roots)


def intertwiner_space(pairs, dim):
    """Solve M g = g' M for all (g, g') pairs of partial monomials.

    Returns (dimension, sample) where sample is one nonzero solution as a
    dict {(i, j): scalar} spanning a single component (None if dimension 0).
    """
    if not pairs:
        raise ValueError("need at least one generator pair")
    field = pairs[0][0].field
    one = field.one
    dsu = _WeightedDSU(dim * dim, one)

    def var(i, j):
        return i * dim + j

    for g, gp in pairs:
        col = g.col            # g: right factor,  (Mg)[i][j] = c_j M[i, tau_j]
        row = gp.row_map()     # g': left factor,  (g'M)[i][j] = r_i M[kappa_i, j]
        for i in range(dim):
            ri = row[i]
            for j in range(dim):
                cj = col[j]
                if cj is None and ri is None:
                    continue
                if cj is None:
                    dsu.set_zero(var(ri[0], j))
                elif ri is None:
                    dsu.set_zero(var(i, cj[0]))
                else:
                    # c_j M[i, tau_j] = r_i M[kappa_i, j]
                    lam = ri[1] * cj[1].inv()
                    dsu.union(var(i, cj[0]), var(ri[0], j), lam)
    dimension = dsu.component_count()
    sample = None
    if dimension:
        # seed the component of the lexicographically first free variable
        seed_root = None
        for x in range(dim * dim):
            r = dsu.find(x)
            if not dsu.zero[r]:
                seed_root = r
                break
        sample = {}
        for x in range(dim * dim):
            r = dsu.find(x)
            if r == seed_root:
                sample[divmod(x, dim)] = dsu.weight_of(x)
    return dimension, sample


def commutant_dim(gens, dim):
    """Dimension of {M : [M, g] = 0 for all g} for partial monomial gens."""
    d, _ = intertwiner_space([(g, g) for g in gens], dim)
    return d


def commutant_dim_dense(field, gens_dense, dim):
    """Independent oracle: nullity of the stacked [M, g] = 0 system."""
    rows = []
    for g in gens_dense:
        for i in range(dim):
            for j in range(dim):
                row = [field.zero] * (dim * dim)
                # (gM - Mg)[i][j] = sum_k g[i][k] M[k][j] - M[i][k] g[k][j]
                for k in range(dim):
                    if not g.rows[i][k].is_zero():
                        row[k * dim + j] = row[k * dim + j] + g.rows[i][k]
                    if not g.rows[k][j].is_zero():
                        row[i * dim + k] = row[i * dim + k] - g.rows[k][j]
                if any(not x.is_zero() for x in row):
                    rows.append(row)
    return nullity(field, rows)
