"""Exact rational lattice kernel.

Matrices are lists (or tuples) of rows; vectors are rows.  A linear map M
acts on a row vector v as v @ M, so an isometry of a Gram matrix G satisfies
M G M^T = G (rows of M are the images of the basis vectors).  All results
are exact: Fraction / int throughout.  Floating point appears only inside
enumeration and isometry search as a pruning heuristic; every candidate it
produces is re-verified exactly before being reported.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


class LatticeError(Exception):
    pass


class MalformedLatticeError(LatticeError):
    pass


class NonContainmentError(LatticeError):
    pass


class NoOverlatticeError(LatticeError):
    pass


class SearchBudgetExceeded(LatticeError):
    pass


# ---------------------------------------------------------------------------
# rational matrix helpers


def frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def identity(n):
    return [[Fraction(i == j) for j in range(n)] for i in range(n)]


def int_identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []

def copy_matrix(m):
    return [list(r) for r in m]


def mat_mul(a, b):
    if not a:
        return []
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(v, m):
    """Row vector times matrix."""
    if not m:
        return []
    return [sum(x * y for x, y in zip(v, col)) for col in zip(*m)]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def gram_apply(g, u, v):
    return dot(mat_vec(u, g), v)


def scale_matrix(m, s):
    return [[s * x for x in row] for row in m]


def mat_eq(a, b):
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )


def int_matrix(m):
    """Return (integer matrix, scale s) with m = int_matrix / s."""
    s = 1
    for row in m:
        for x in row:
            s = s * frac(x).denominator // math.gcd(s, frac(x).denominator)
    return [[int(x * s) for x in row] for row in m], s


def scaled_gram_product(rows, gram=None):
    """rows @ gram @ rows^T through integer-scaled arithmetic.

    Much faster than Fraction matrix products on the near-integral data
    this package works with.  `gram` is a matrix, a scalar, or None for
    the identity.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return []
    r, s = int_matrix(rows)
    cols = len(rows[0])
    if gram is None or isinstance(gram, (int, Fraction)):
        mid = r
        den = Fraction(s * s) / (1 if gram is None else frac(gram))
    else:
        g, t = int_matrix([list(x) for x in gram])
        mid = [[sum(ri[k] * g[k][j] for k in range(cols)) for j in range(cols)]
               for ri in r]
        den = Fraction(s * s * t)
    out = []
    for mi in mid:
        out.append([Fraction(sum(mi[k] * rj[k] for k in range(cols))) / den
                    for rj in r])
    return out


def mat_det(a):
    """Fraction-free Bareiss determinant."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    m, s = int_matrix(a)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], s**n)


def mat_inv(a):
    n = len(a)
    m = [[frac(x) for x in row] + [Fraction(i == j) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            raise MalformedLatticeError("singular matrix")
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def mat_rank(a):
    if not a:
        return 0
    m = [[frac(x) for x in row] for row in a]
    rank = 0
    ncols = len(m[0])
    for c in range(ncols):
        p = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        pv = m[rank][c]
        for i in range(rank + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / pv
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def char_poly(a):
    """Coefficients of det(xI - a), low degree first (Faddeev-LeVerrier)."""
    n = len(a)
    a = [[frac(x) for x in row] for row in a]
    mk = identity(n)
    cs = [Fraction(1)]  # coefficient of x^n
    for k in range(1, n + 1):
        am = mat_mul(a, mk)
        ck = -sum(am[i][i] for i in range(n)) / k
        cs.append(ck)
        for i in range(n):
            am[i][i] += ck
        mk = am
    cs.reverse()
    return cs


# ---------------------------------------------------------------------------
# integer normal forms


def hnf(rows):
    """Row Hermite normal form of integer rows; zero rows dropped.

    Pivots positive and leftmost per row; entries above a pivot reduced
    into [0, pivot).
    """
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(r, len(m)) if m[i][c]]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(m[i][c]))
            m[r], m[i0] = m[i0], m[r]
            if all(i == r for i in live):
                break
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        if r < len(m) and m[r][c]:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m[:r]]


def hnf_rational(rows):
    """Canonical basis (rational rows) of the lattice spanned by rows."""
    if not rows:
        return []
    m, s = int_matrix(rows)
    return [[Fraction(x, s) for x in row] for row in hnf(m)]


def snf(a):
    """Smith normal form: (d, u, v) with u @ a @ v = diag(d), u, v unimodular.

    d has nonnegative entries, divisor-chained, zeros last; len(d) =
    min(nrows, ncols).
    """
    m = [list(map(int, row)) for row in a]
    nr = len(m)
    nc = len(m[0]) if m else 0
    u = int_identity(nr)
    v = int_identity(nc)
    k = min(nr, nc)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):  # row i -= q * row j
        m[i] = [x - q * y for x, y in zip(m[i], m[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, q):  # col i -= q * col j
        for row in m:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    for t in range(k):
        while True:
            entries = [(abs(m[i][j]), i, j) for i in range(t, nr)
                       for j in range(t, nc) if m[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            done = True
            for i in range(t + 1, nr):
                if m[i][t]:
                    add_row(i, t, m[i][t] // m[t][t])
                    done = done and m[i][t] == 0
            for j in range(t + 1, nc):
                if m[t][j]:
                    add_col(j, t, m[t][j] // m[t][t])
                    done = done and m[t][j] == 0
            if not done:
                continue
            # enforce divisibility of the remaining block
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if m[i][j] % m[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
    d = [m[t][t] for t in range(k)]
    return d, u, v


def left_kernel_int(a):
    """Saturated basis of {x in Z^m : x @ a = 0} for rational matrix a."""
    if not a:
        return []
    ai, _ = int_matrix(a)
    d, u, _ = snf(ai)
    nr = len(ai)
    rank = sum(1 for x in d if x)
    return [list(u[i]) for i in range(rank, nr)]


# ---------------------------------------------------------------------------
# exact LLL on Gram matrices


def lll_gram(g, delta=Fraction(3, 4)):
    """LLL-reduce a positive definite rational Gram matrix.

    Returns (g2, u) with g2 = u @ g @ u^T, u unimodular integer.
    """
    n = len(g)
    g = [[frac(x) for x in row] for row in g]
    u = int_identity(n)
    if n <= 1:
        return g, u
    mu = [[Fraction(0)] * n for _ in range(n)]
    bb = [Fraction(0)] * n

    def gso_row(i):
        for j in range(i):
            t = g[i][j] - sum(mu[j][l] * mu[i][l] * bb[l] for l in range(j))
            mu[i][j] = t / bb[j]
        bb[i] = g[i][i] - sum(mu[i][l] ** 2 * bb[l] for l in range(i))
        if bb[i] <= 0:
            raise MalformedLatticeError("Gram matrix not positive definite")

    def row_op(k, l, q):  # b_k -= q b_l
        u[k] = [x - q * y for x, y in zip(u[k], u[l])]
        g[k] = [x - q * y for x, y in zip(g[k], g[l])]
        for i in range(n):
            g[i][k] -= q * g[i][l]

    def swap(k):  # swap rows k-1, k
        u[k - 1], u[k] = u[k], u[k - 1]
        g[k - 1], g[k] = g[k], g[k - 1]
        for row in g:
            row[k - 1], row[k] = row[k], row[k - 1]

    gso_row(0)
    kmax = 0
    k = 1
    while k < n:
        if k > kmax:
            kmax = k
            gso_row(k)
        for l in range(k - 1, -1, -1):
            q = round(mu[k][l])
            if q:
                row_op(k, l, q)
                for j in range(l):
                    mu[k][j] -= q * mu[l][j]
                mu[k][l] -= q
        if bb[k] >= (delta - mu[k][k - 1] ** 2) * bb[k - 1]:
            k += 1
        else:
            swap(k)
            kmax = k - 1  # rows k-1, k are stale; revalidate k-1 now
            gso_row(k - 1)
            k = max(k - 1, 1)
    return g, u


# ---------------------------------------------------------------------------
# lattices


class Lattice:
    """Even or rational lattice given by an exact Gram matrix.

    Optional `basis` embeds the lattice basis as rows into an ambient
    rational quadratic space whose inner product is `ambient_gram` (a square
    matrix, or a Fraction meaning that scalar times the identity).  When a
    basis is present, basis @ ambient @ basis^T = gram holds exactly.
    """

    __slots__ = ("gram", "basis", "ambient_gram", "_cache")

    def __init__(self, gram, basis=None, ambient_gram=None, check=True):
        self.gram = tuple(tuple(frac(x) for x in row) for row in gram)
        self.basis = (tuple(tuple(frac(x) for x in row) for row in basis)
                      if basis is not None else None)
        if ambient_gram is not None and not isinstance(ambient_gram, (list, tuple)):
            ambient_gram = frac(ambient_gram)
        elif ambient_gram is not None:
            ambient_gram = tuple(tuple(frac(x) for x in row) for row in ambient_gram)
        self.ambient_gram = ambient_gram
        self._cache = {}
        if check:
            self._validate()

    def _validate(self):
        n = self.rank
        for i in range(n):
            if len(self.gram[i]) != n:
                raise MalformedLatticeError("Gram matrix not square")
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise MalformedLatticeError("Gram matrix not symmetric")
        if n and mat_det(self.gram) <= 0:
            # quick necessary condition; full definiteness checked by LLL on use
            raise MalformedLatticeError("Gram matrix not positive definite")
        if self.basis is not None:
            got = scaled_gram_product(self.basis, self.ambient_gram)
            if not mat_eq(got, [list(r) for r in self.gram]):
                raise MalformedLatticeError("basis does not reproduce Gram matrix")

    def _ambient_rows(self, rows):
        """rows @ ambient_gram for rows given in ambient coordinates."""
        a = self.ambient_gram
        if a is None:
            return [list(r) for r in rows]
        if isinstance(a, Fraction):
            return [[a * x for x in r] for r in rows]
        return [mat_vec(list(r), [list(x) for x in a]) for r in rows]

    @classmethod
    def from_gram(cls, gram, **kw):
        return cls(gram, **kw)

    @classmethod
    def from_basis(cls, basis, ambient_gram=None, check=True):
        rows = [list(r) for r in basis]
        if ambient_gram is not None and not isinstance(ambient_gram, (list, tuple)):
            ambient_gram = frac(ambient_gram)
        gram = scaled_gram_product(rows, ambient_gram)
        return cls(gram, basis=rows, ambient_gram=ambient_gram, check=check)

    @property
    def rank(self):
        return len(self.gram)

    @property
    def det(self):
        if "det" not in self._cache:
            self._cache["det"] = mat_det(self.gram)
        return self._cache["det"]

    @property
    def is_integral(self):
        return all(x.denominator == 1 for row in self.gram for x in row)

    @property
    def is_even(self):
        return self.is_integral and all(
            self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def inner(self, u, v):
        return gram_apply(self.gram, [frac(x) for x in u], [frac(x) for x in v])

    def norm(self, v):
        return self.inner(v, v)

    def ambient_vector(self, v):
        if self.basis is None:
            return [frac(x) for x in v]
        return mat_vec([frac(x) for x in v], [list(r) for r in self.basis])

    def reduced(self):
        """Cached LLL data: (reduced gram, transform u, u inverse)."""
        if "red" not in self._cache:
            g2, u = lll_gram(self.gram)
            self._cache["red"] = (g2, u, mat_inv(u))
        return self._cache["red"]

    def __repr__(self):
        return f"Lattice(rank={self.rank}, det={self.det})"


ZERO_LATTICE = Lattice([], check=False)


def direct_sum(*lats):
    n = sum(l.rank for l in lats)
    g = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for l in lats:
        for i in range(l.rank):
            for j in range(l.rank):
                g[off + i][off + j] = l.gram[i][j]
        off += l.rank
    return Lattice(g, check=False)


def dual_lattice(lat):
    """Dual lattice; Gram is the inverse Gram, dual basis in the same ambient."""
    if lat.rank == 0:
        return lat
    ginv = mat_inv(lat.gram)
    basis = None
    if lat.basis is not None:
        basis = mat_mul(ginv, [list(r) for r in lat.basis])
    return Lattice(ginv, basis=basis, ambient_gram=lat.ambient_gram, check=False)


def rescale(lat, m):
    """Scale the quadratic form by m > 0 (sqrt(m) on vectors)."""
    m = frac(m)
    if m <= 0:
        raise MalformedLatticeError("rescale factor must be positive")
    g = scale_matrix(lat.gram, m)
    amb = lat.ambient_gram
    if amb is None and lat.basis is not None:
        amb = m  # the implicit identity ambient form scales along
    elif isinstance(amb, Fraction):
        amb = m * amb
    elif amb is not None:
        amb = scale_matrix(amb, m)
    return Lattice(g, basis=lat.basis, ambient_gram=amb, check=False)


class DiscriminantGroup:
    """L*/L of an integral lattice, from the Smith form of the Gram matrix.

    invariant_factors keeps only entries > 1.  generators[i] is a rational
    row in L-coordinates of order invariant_factors[i]; q_values[i] is its
    quadratic-form value in [0, 2).
    """

    __slots__ = ("invariant_factors", "generators", "q_values", "gen_gram")

    def __init__(self, invariant_factors, generators, gen_gram):
        self.invariant_factors = list(invariant_factors)
        self.generators = [list(g) for g in generators]
        self.gen_gram = [list(r) for r in gen_gram]
        self.q_values = [self._qq(r[i]) for i, r in enumerate(self.gen_gram)]

    @staticmethod
    def _qq(x):
        return frac(x) % 2

    @property
    def order(self):
        o = 1
        for d in self.invariant_factors:
            o *= d
        return o

    def elements(self):
        """All elements as coefficient tuples over the generators."""
        out = [()]
        for d in self.invariant_factors:
            out = [t + (c,) for t in out for c in range(d)]
        return out

    def q_of(self, coeffs):
        t = Fraction(0)
        for i, ci in enumerate(coeffs):
            for j, cj in enumerate(coeffs):
                t += ci * cj * self.gen_gram[i][j]
        return t % 2

    def vector_of(self, coeffs):
        n = len(self.generators[0]) if self.generators else 0
        v = [Fraction(0)] * n
        for c, g in zip(coeffs, self.generators):
            for k in range(n):
                v[k] += c * g[k]
        return v


def discriminant_group(lat):
    """Discriminant group of an integral lattice."""
    if not lat.is_integral:
        raise MalformedLatticeError("discriminant group needs an integral Gram")
    n = lat.rank
    if n == 0:
        return DiscriminantGroup([], [], [])
    gi = [[int(x) for x in row] for row in lat.gram]
    d, _, v = snf(gi)
    vinv = mat_inv(v)
    ginv = mat_inv(lat.gram)
    gens = []
    orders = []
    for i in range(n):
        if d[i] > 1:
            orders.append(d[i])
            gens.append(mat_vec(vinv[i], ginv))
    gg = [[gram_apply(lat.gram, a, b) for b in gens] for a in gens]
    return DiscriminantGroup(orders, gens, gg)


# ---------------------------------------------------------------------------
# enumeration


def _qd_decomposition(g):
    """Exact Cholesky-style data: Q(x) = sum_i d_i (x_i + sum_{j>i} q_ij x_j)^2."""
    n = len(g)
    q = [[frac(x) for x in row] for row in g]
    for i in range(n):
        if q[i][i] <= 0:
            raise MalformedLatticeError("Gram matrix not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _float_enum(qf, bound, center):
    """Integer points v with Q(v - center) <= bound, float pruning only.

    Slightly inflated bounds; caller must verify candidates exactly.
    """
    n = len(qf)
    big = bound * (1.0 + 1e-9) + 1e-9
    out = []
    v = [0] * n
    cof = center

    def rec(i, rem):
        u = 0.0
        row = qf[i]
        for j in range(i + 1, n):
            u += row[j] * (v[j] - cof[j])
        di = row[i]
        r = math.sqrt(max(rem, 0.0) / di)
        lo = math.ceil(cof[i] - u - r - 1e-9)
        hi = math.floor(cof[i] - u + r + 1e-9)
        for t in range(lo, hi + 1):
            z = t - cof[i] + u
            rem2 = rem - di * z * z
            if rem2 >= -1e-9:
                if i == 0:
                    v[0] = t
                    out.append(tuple(v))
                else:
                    v[i] = t
                    rec(i - 1, rem2)
        v[i] = 0

    if n:
        rec(n - 1, big)
    elif bound >= 0:
        out.append(())
    return out


def _short_reduced(lat, max_norm):
    """(vector, norm) pairs in *reduced* coordinates, one of each +-pair.

    Exact: candidates from float pruning are verified with integer arithmetic.
    """
    max_norm = frac(max_norm)
    key = ("short", max_norm)
    if key in lat._cache:
        return lat._cache[key]
    if lat.rank == 0 or max_norm <= 0:
        lat._cache[key] = []
        return []
    g2, _, _ = lat.reduced()
    q = _qd_decomposition(g2)
    qf = [[float(x) for x in row] for row in q]
    cands = _float_enum(qf, float(max_norm), [0.0] * lat.rank)
    gi, s = int_matrix(g2)
    thr = max_norm * s
    thr = thr.numerator // thr.denominator  # floor; norms below are integers/s
    arr = np.array([c for c in cands if any(c)], dtype=np.int64)
    pairs = []
    if arr.size:
        gn = np.array(gi, dtype=np.int64)
        vmax = int(np.abs(arr).max())
        gmax = int(np.abs(gn).max())
        if vmax * vmax * gmax * lat.rank * lat.rank < 2**62:
            norms = np.einsum("ij,jk,ik->i", arr, gn, arr)
            keep = arr[norms <= thr]
            kn = norms[norms <= thr]
            pairs = [(tuple(int(x) for x in row), Fraction(int(nv), s))
                     for row, nv in zip(keep, kn)]
        else:
            for c in cands:
                nv = gram_apply(g2, list(c), list(c))
                if nv <= max_norm:
                    pairs.append((c, nv))
    seen = {}
    for vec, nv in pairs:
        for x in vec:
            if x:
                if x < 0:
                    vec = tuple(-y for y in vec)
                break
        seen[vec] = nv
    res = sorted(seen.items())
    lat._cache[key] = res
    return res


def short_vectors(lat, max_norm):
    """All v != 0 with <v,v> <= max_norm, one of each +-pair.

    Coordinates are integer rows in the lattice basis, lexicographically
    sorted; the first nonzero entry of each is positive.
    """
    _, u, _ = (lat.reduced() if lat.rank else ([], [], []))
    res = []
    for vec, _nv in _short_reduced(lat, max_norm):
        w = [int(x) for x in mat_vec(list(vec), u)]
        for x in w:
            if x:
                if x < 0:
                    w = [-y for y in w]
                break
        res.append(tuple(w))
    return sorted(res)


def short_vectors_with_norms(lat, max_norm):
    """Like short_vectors but returns (vector, exact norm) pairs."""
    _, u, _ = (lat.reduced() if lat.rank else ([], [], []))
    res = []
    for vec, nv in _short_reduced(lat, max_norm):
        w = [int(x) for x in mat_vec(list(vec), u)]
        for x in w:
            if x:
                if x < 0:
                    w = [-y for y in w]
                break
        res.append((tuple(w), nv))
    res.sort()
    return res


def minimum(lat):
    """Minimal nonzero norm."""
    if lat.rank == 0:
        raise MalformedLatticeError("zero lattice has no minimum")
    bound = max(lat.gram[i][i] for i in range(lat.rank))
    bound = min(bound, frac(2))
    while True:
        pairs = _short_reduced(lat, bound)
        if pairs:
            return min(nv for _, nv in pairs)
        bound *= 2


def close_vectors(lat, center, radius_sq):
    """All v in L with <v-center, v-center> <= radius_sq.

    center is a rational row in lattice coordinates.  Returns (vector,
    exact squared distance) pairs sorted by (distance, vector); both signs
    reported, the zero distance included when center is in L.
    """
    radius_sq = frac(radius_sq)
    if lat.rank == 0:
        return [((), Fraction(0))] if radius_sq >= 0 else []
    g2, u, uinv = lat.reduced()
    c = [frac(x) for x in center]
    cr = mat_vec(c, uinv)
    q = _qd_decomposition(g2)
    qf = [[float(x) for x in row] for row in q]
    cands = _float_enum(qf, float(radius_sq), [float(x) for x in cr])
    out = []
    for vec in cands:
        d = [frac(x) - y for x, y in zip(vec, cr)]
        nv = gram_apply(g2, d, d)
        if nv <= radius_sq:
            w = tuple(int(x) for x in mat_vec(list(vec), u))
            out.append((w, nv))
    out.sort(key=lambda p: (p[1], p[0]))
    return out


# ---------------------------------------------------------------------------
# isometries and frame shapes


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    """Exact division of integer polynomials: (quotient, [0]) or (None, rem)."""
    a = list(a)
    db = len(b) - 1
    out = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        q, r = divmod(a[i], b[db])
        if r:
            return None, a
        out[i - db] = q
        for j in range(db + 1):
            a[i - db + j] -= q * b[j]
    if any(a):
        return None, a
    return out, [0]


_CYCLO_CACHE = {1: [-1, 1]}


def cyclotomic(d):
    """Integer coefficients of the d-th cyclotomic polynomial, low first."""
    if d in _CYCLO_CACHE:
        return _CYCLO_CACHE[d]
    p = [0] * (d + 1)
    p[0] = -1
    p[d] = 1
    for e in range(1, d):
        if d % e == 0:
            q, _ = _poly_divmod(p, cyclotomic(e))
            p = q
    _CYCLO_CACHE[d] = p
    return p


class FrameShape:
    """Multiset prod n^{a_n} with possibly negative exponents."""

    __slots__ = ("exponents",)

    def __init__(self, exponents):
        self.exponents = {int(n): int(a) for n, a in exponents.items() if a}

    @property
    def rank(self):
        return sum(n * a for n, a in self.exponents.items())

    @property
    def fixed_dim(self):
        return sum(self.exponents.values())

    def poly(self):
        """prod (x^n - 1)^{a_n}; returns (numerator, denominator) coeff lists."""
        num = [1]
        den = [1]
        for n, a in sorted(self.exponents.items()):
            base = [-1] + [0] * (n - 1) + [1]
            for _ in range(abs(a)):
                if a > 0:
                    num = _poly_mul(num, base)
                else:
                    den = _poly_mul(den, base)
        return num, den

    def __str__(self):
        parts = []
        for n, a in sorted(self.exponents.items()):
            parts.append(f"{n}" if a == 1 else f"{n}^{a}")
        return " ".join(parts) if parts else "1^0"

    def __eq__(self, other):
        return isinstance(other, FrameShape) and self.exponents == other.exponents

    def __hash__(self):
        return hash(tuple(sorted(self.exponents.items())))


def parse_frame_shape(text):
    """Parse '1^8 2^8', '2^16/1^8', '1^{-8}2^{16}', '1.2.7.14' style strings."""
    import re

    exps = {}

    def eat(part, sign):
        for base, e in re.findall(r"(\d+)(?:\s*\^\s*\{?\s*(-?\d+)\s*\}?)?", part):
            n = int(base)
            a = int(e) if e else 1
            exps[n] = exps.get(n, 0) + sign * a

    if "/" in text:
        numer, denom = text.split("/", 1)
        eat(numer, +1)
        eat(denom, -1)
    else:
        eat(text, +1)
    return FrameShape(exps)


class Isometry:
    """Finite-order Gram-preserving integer matrix in lattice coordinates.

    Rows are the images of the basis vectors: matrix @ gram @ matrix^T = gram.
    """

    __slots__ = ("matrix", "lattice", "_cache")

    def __init__(self, matrix, lattice=None, check=True):
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        self.lattice = lattice
        self._cache = {}
        if check and lattice is not None:
            m = [list(r) for r in self.matrix]
            if not mat_eq(mat_mul(mat_mul(m, [list(r) for r in lattice.gram]),
                                  transpose(m)),
                          [list(r) for r in lattice.gram]):
                raise MalformedLatticeError("matrix does not preserve the Gram form")

    @property
    def rank(self):
        return len(self.matrix)

    @property
    def order(self):
        if "order" not in self._cache:
            n = self.rank
            ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
            p = self.matrix
            k = 1
            while p != ident:
                p = tuple(tuple(int(x) for x in row)
                          for row in mat_mul([list(r) for r in p],
                                             [list(r) for r in self.matrix]))
                k += 1
                if k > 10000:
                    raise MalformedLatticeError("isometry order exceeds 10000")
            self._cache["order"] = k
        return self._cache["order"]

    def power(self, k):
        n = self.rank
        k %= self.order
        p = int_identity(n)
        for _ in range(k):
            p = mat_mul(p, [list(r) for r in self.matrix])
        return Isometry(p, self.lattice, check=False)

    def apply(self, v):
        return mat_vec([frac(x) for x in v], [list(r) for r in self.matrix])

    @property
    def frame_shape(self):
        if "fs" not in self._cache:
            self._cache["fs"] = frame_shape(self)
        return self._cache["fs"]

    def __repr__(self):
        return f"Isometry(rank={self.rank}, order={self.order})"


def frame_shape(tau):
    """Frame shape of a finite-order integer matrix (or Isometry)."""
    mat = tau.matrix if isinstance(tau, Isometry) else tau
    iso = tau if isinstance(tau, Isometry) else Isometry(mat, None, check=False)
    order = iso.order
    cp = char_poly([list(r) for r in iso.matrix])
    p = [int(c) for c in cp]
    divs = [d for d in range(1, order + 1) if order % d == 0]
    mult = {}
    for d in divs:
        phi_d = cyclotomic(d)
        m = 0
        while len(p) > 1:
            q, _ = _poly_divmod(p, phi_d)
            if q is None:
                break
            p = q
            m += 1
        mult[d] = m
    if len(p) != 1:
        raise MalformedLatticeError("characteristic polynomial not a product "
                                    "of cyclotomics for the claimed order")
    exps = {}
    for n in sorted(divs, reverse=True):
        a = mult[n] - sum(exps.get(m, 0) for m in divs if m != n and m % n == 0)
        if a:
            exps[n] = a
    fs = FrameShape(exps)
    if fs.rank != iso.rank:
        raise MalformedLatticeError("frame shape does not sum to the rank")
    return fs


def fixed_sublattice(lat, tau):
    """Saturated sublattice fixed by tau, basis rows in L-coordinates."""
    mat = tau.matrix if isinstance(tau, Isometry) else tau
    n = lat.rank
    tmi = [[mat[i][j] - (i == j) for j in range(n)] for i in range(n)]
    rows = left_kernel_int(tmi) if any(any(r) for r in tmi) else int_identity(n)
    rows = hnf(rows) if rows else []
    if not rows:
        return Lattice([], basis=[], ambient_gram=lat.gram, check=False)
    g = [[gram_apply(lat.gram, a, b) for b in rows] for a in rows]
    return Lattice(g, basis=rows, ambient_gram=lat.gram, check=False)


def coinvariant_sublattice(lat, tau):
    """Saturated orthogonal complement of the fixed sublattice."""
    fixed = fixed_sublattice(lat, tau)
    if fixed.rank == 0:
        return Lattice(lat.gram, basis=int_identity(lat.rank),
                       ambient_gram=lat.gram, check=False)
    gf = mat_mul([list(r) for r in lat.gram], transpose([list(r) for r in fixed.basis]))
    rows = left_kernel_int(gf)
    rows = hnf(rows)
    if not rows:
        return Lattice([], basis=[], ambient_gram=lat.gram, check=False)
    g = [[gram_apply(lat.gram, a, b) for b in rows] for a in rows]
    return Lattice(g, basis=rows, ambient_gram=lat.gram, check=False)


# ---------------------------------------------------------------------------
# isometry testing


def _norm_histogram(lat, bound):
    h = {}
    for _, nv in _short_reduced(lat, bound):
        h[nv] = h.get(nv, 0) + 1
    return h


def is_isometric(l1, l2, node_budget=10_000_000):
    """Exact isometry search.

    Returns an integer matrix m with m @ gram(l2) @ m^T = gram(l1), whose
    rows are l2-coordinates of the images of the l1 basis; or None when no
    isometry exists.  Raises SearchBudgetExceeded when the backtracking
    node limit is hit before either outcome is certain.
    """
    if l1.rank != l2.rank:
        return None
    if l1.rank == 0:
        return ()
    if l1.det != l2.det:
        return None
    s = 1
    for lat in (l1, l2):
        for row in lat.gram:
            for x in row:
                s = s * x.denominator // math.gcd(s, x.denominator)
    g1i = [[int(x * s) for x in row] for row in l1.gram]
    g2i = [[int(x * s) for x in row] for row in l2.gram]
    if snf(g1i)[0] != snf(g2i)[0]:
        return None
    n = l1.rank
    g1r, u1, _ = l1.reduced()
    g2r, u2, _ = l2.reduced()
    diag = [g1r[i][i] for i in range(n)]
    maxd = max(diag)
    if _norm_histogram(l1, max(maxd, frac(4))) != _norm_histogram(l2, max(maxd, frac(4))):
        return None
    cand = _short_reduced(l2, maxd)
    vecs = [v for v, _ in cand] + [tuple(-x for x in v) for v, _ in cand]
    norms = [nv for _, nv in cand] * 2
    v2 = np.array(vecs, dtype=np.int64)
    g2s = np.array([[int(x * s) for x in row] for row in g2r], dtype=np.int64)
    g1s = [[int(x * s) for x in row] for row in g1r]
    vmax = int(np.abs(v2).max())
    gmax = max(int(np.abs(g2s).max()), max(abs(x) for r in g1s for x in r))
    if vmax * vmax * gmax * n * n >= 2**62:
        v2 = v2.astype(object)
        g2s = g2s.astype(object)
    p2 = v2 @ g2s
    perm = sorted(range(n), key=lambda i: (sum(1 for nv in norms if nv == diag[i]),
                                           diag[i], i))
    g1p = [[g1s[perm[a]][perm[b]] for b in range(n)] for a in range(n)]
    start = [np.array([k for k, nv in enumerate(norms)
                       if nv * s == g1p[t][t]], dtype=np.int64)
             for t in range(n)]
    if any(a.size == 0 for a in start):
        return None
    budget = [node_budget]
    chosen = [0] * n

    def rec(t, alive):
        if t == n:
            return True
        for idx in alive[t]:
            budget[0] -= 1
            if budget[0] < 0:
                raise SearchBudgetExceeded(
                    f"isometry search exceeded {node_budget} nodes")
            chosen[t] = int(idx)
            nxt = [None] * n
            ok = True
            w = v2[int(idx)]
            for l in range(t + 1, n):
                dots = p2[alive[l]] @ w
                sub = alive[l][dots == g1p[l][t]]
                if sub.size == 0:
                    ok = False
                    break
                nxt[l] = sub
            if ok and rec(t + 1, nxt):
                return True
        return False

    try:
        found = rec(0, start)
    except SearchBudgetExceeded:
        raise
    if not found:
        return None
    mr = [[0] * n for _ in range(n)]
    for t in range(n):
        mr[perm[t]] = [int(x) for x in v2[chosen[t]]]
    r = mat_mul(mat_mul(mat_inv(u1), mr), u2)
    r = [[int(x) for x in row] for row in r]
    chk = mat_mul(mat_mul(r, [list(q) for q in l2.gram]), transpose(r))
    if not mat_eq(chk, [list(q) for q in l1.gram]):
        raise MalformedLatticeError("isometry search produced an invalid map")
    return tuple(tuple(row) for row in r)


# ---------------------------------------------------------------------------
# overlattices and indices


def even_unimodular_overlattices(m):
    """All even unimodular overlattices of an even lattice m.

    Results carry basis rows in m-coordinates.  Requires det(m) to be a
    perfect square; raises NoOverlatticeError otherwise.
    """
    if not m.is_even:
        raise MalformedLatticeError("overlattice search needs an even lattice")
    det = m.det
    if det.denominator != 1:
        raise NoOverlatticeError("determinant is not an integer")
    k = math.isqrt(int(det))
    if k * k != int(det):
        raise NoOverlatticeError("determinant is not a perfect square")
    n = m.rank
    if k == 1:
        return [Lattice(m.gram, basis=int_identity(n),
                        ambient_gram=m.gram, check=False)]
    disc = discriminant_group(m)
    elems = disc.elements()
    zero = tuple(0 for _ in disc.invariant_factors)
    qmap = {e: disc.q_of(e) for e in elems}
    iso = sorted(e for e in elems if qmap[e] == 0 and e != zero)
    orders = disc.invariant_factors

    def add(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, orders))

    def closure(base, x):
        # base is a subgroup; adjoin one generator x
        out = set(base)
        shift = x
        while shift != zero:
            out.update(add(h, shift) for h in base)
            shift = add(shift, x)
        return frozenset(out)

    groups = []
    seen = set()
    stack = [frozenset({zero})]
    while stack:
        h = stack.pop()
        if h in seen:
            continue
        seen.add(h)
        if len(h) == k:
            groups.append(h)
            continue
        for x in iso:
            if x in h:
                continue
            h2 = closure(h, x)
            if len(h2) > k or k % len(h2):
                continue
            if any(qmap[e] != 0 for e in h2):
                continue
            if h2 not in seen:
                stack.append(h2)

    results = {}
    for h in groups:
        rows = [[Fraction(x) for x in r] for r in int_identity(n)]
        for e in sorted(h):
            rows.append(disc.vector_of(e))
        basis = hnf_rational(rows)
        g = [[gram_apply(m.gram, a, b) for b in basis] for a in basis]
        if any(x.denominator != 1 for row in g for x in row):
            continue
        if any(g[i][i] % 2 for i in range(n)):
            continue
        lat = Lattice(g, basis=basis, ambient_gram=m.gram, check=False)
        if lat.det != 1:
            continue
        key = tuple(tuple(x for x in row) for row in basis)
        results[key] = lat
    return [results[k2] for k2 in sorted(results)]


def coordinates_in(sup, ambient_rows, ambient_gram=None):
    """Coordinates of ambient rows in the basis of sup (must lie in its span)."""
    b = [list(r) for r in sup.basis]
    tmp = Lattice.__new__(Lattice)
    tmp.ambient_gram = sup.ambient_gram if ambient_gram is None else ambient_gram
    ab = tmp._ambient_rows(b)
    gsupinv = mat_inv([[dot(x, y) for y in b] for x in ab])
    coords = mat_mul([[frac(x) for x in r] for r in ambient_rows],
                     mat_mul(transpose(ab), gsupinv))
    back = mat_mul(coords, b)
    if not mat_eq(back, [[frac(x) for x in r] for r in ambient_rows]):
        raise NonContainmentError("vector outside the span of the lattice")
    return coords


def quotient_index(sub, sup):
    """Index [sup : sub] for sub of finite index in sup (same ambient space)."""
    if sub.rank != sup.rank:
        raise NonContainmentError("ranks differ")
    if sub.rank == 0:
        return 1
    if sup.basis is None:
        if sub.basis is None:
            raise NonContainmentError("no common ambient frame")
        coords = [list(r) for r in sub.basis]
        if len(coords[0]) != sup.rank:
            raise NonContainmentError("ambient dimensions differ")
    else:
        if sub.basis is None:
            raise NonContainmentError("no common ambient frame")
        coords = coordinates_in(sup, [list(r) for r in sub.basis])
    for row in coords:
        for x in row:
            if frac(x).denominator != 1:
                raise NonContainmentError("sublattice vector not in the superlattice")
    ratio = sub.det / sup.det
    idx = math.isqrt(int(ratio)) if ratio.denominator == 1 else 0
    if idx * idx != ratio:
        raise NonContainmentError("determinant ratio is not a perfect square")
    return idx


def lattice_from_rows(rows, gram_of_coords):
    """Lattice spanned by rational rows over a coordinate space with a Gram.

    Rows are coordinates w.r.t. a parent basis whose Gram is gram_of_coords;
    the result keeps its basis in those coordinates (HNF-canonical).
    """
    basis = hnf_rational(rows)
    g = scaled_gram_product(basis, gram_of_coords)
    return Lattice(g, basis=basis, ambient_gram=gram_of_coords, check=False)


# ---------------------------------------------------------------------------
# text formats


def _fmt_q(x):
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def write_lattice(lat, fh):
    """Write the .lat text form: rank, Gram rows, optional AMBIENT block."""
    fh.write(f"{lat.rank}\n")
    for row in lat.gram:
        fh.write(" ".join(_fmt_q(x) for x in row) + "\n")
    if lat.basis is not None and (lat.ambient_gram is None
                                  or lat.ambient_gram == Fraction(1)):
        fh.write("AMBIENT\n")
        for row in lat.basis:
            fh.write(" ".join(_fmt_q(x) for x in row) + "\n")


def read_lattice(fh):
    toks = [ln.strip() for ln in fh if ln.strip()]
    if not toks:
        raise MalformedLatticeError("empty lattice file")
    try:
        n = int(toks[0])
    except ValueError as exc:
        raise MalformedLatticeError("first line must be the rank") from exc
    if len(toks) < n + 1:
        raise MalformedLatticeError("truncated Gram matrix")
    gram = []
    for i in range(1, n + 1):
        row = [Fraction(t) for t in toks[i].split()]
        if len(row) != n:
            raise MalformedLatticeError(f"Gram row {i} has wrong length")
        gram.append(row)
    basis = None
    rest = toks[n + 1:]
    if rest:
        if rest[0] != "AMBIENT":
            raise MalformedLatticeError("unexpected trailing content")
        basis = [[Fraction(t) for t in ln.split()] for ln in rest[1:]]
        if len(basis) != n:
            raise MalformedLatticeError("AMBIENT block has wrong row count")
    return Lattice(gram, basis=basis, ambient_gram=None if basis is None else Fraction(1))


def write_isometry(iso, fh):
    mat = iso.matrix if isinstance(iso, Isometry) else iso
    fh.write(f"{len(mat)}\n")
    for row in mat:
        fh.write(" ".join(str(int(x)) for x in row) + "\n")


def read_isometry(fh):
    toks = [ln.strip() for ln in fh if ln.strip()]
    if not toks:
        raise MalformedLatticeError("empty isometry file")
    n = int(toks[0])
    if len(toks) != n + 1:
        raise MalformedLatticeError("isometry row count mismatch")
    rows = []
    for ln in toks[1:]:
        row = [int(t) for t in ln.split()]
        if len(row) != n:
            raise MalformedLatticeError("isometry row length mismatch")
        rows.append(row)
    return rows
