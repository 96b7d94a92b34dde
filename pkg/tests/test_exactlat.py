"""Kernel tests: independent oracles first, then frozen values and properties."""

import io
import itertools
import math
import random
from fractions import Fraction

import pytest

from deephole import exactlat as ex

F = Fraction

A1 = [[2]]
A2 = [[2, -1], [-1, 2]]
D4 = [
    [2, -1, 0, 0],
    [-1, 2, -1, -1],
    [0, -1, 2, 0],
    [0, -1, 0, 2],
]
E8 = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
]


# ---------------------------------------------------------------------------
# oracles: naive box enumeration and exhaustive isometry search


def box_short_vectors(gram, max_norm):
    """All +-classes with norm <= max_norm by exhausting an exact coordinate box."""
    n = len(gram)
    ginv = ex.mat_inv(gram)
    bounds = []
    for i in range(n):
        b2 = F(max_norm) * ginv[i][i]
        bounds.append(math.isqrt(b2.numerator // b2.denominator))
    out = set()
    for v in itertools.product(*[range(-b, b + 1) for b in bounds]):
        if not any(v):
            continue
        if ex.gram_apply(gram, list(v), list(v)) <= max_norm:
            w = v
            for x in w:
                if x:
                    if x < 0:
                        w = tuple(-y for y in w)
                    break
            out.add(w)
    return sorted(out)


def brute_isometry(g1, g2):
    """Exhaustive mapping search over short-vector images."""
    n = len(g1)
    if ex.mat_det(g1) != ex.mat_det(g2):
        return None  # a Gram-preserving map then has |det| > 1: an embedding only
    diag = [g1[i][i] for i in range(n)]
    wanted = set(diag)
    cands = []
    for v in box_short_vectors(g2, max(diag)):
        nv = ex.gram_apply(g2, list(v), list(v))
        if nv in wanted:
            cands.append((list(v), nv))
    cands += [([-x for x in v], nv) for v, nv in cands]

    def rec(rows):
        t = len(rows)
        if t == n:
            return rows if abs(ex.mat_det(rows)) == 1 else None
        for v, nv in cands:
            if nv != diag[t]:
                continue
            if any(ex.gram_apply(g2, v, r) != g1[t][k] for k, r in enumerate(rows)):
                continue
            got = rec(rows + [v])
            if got:
                return got
        return None

    return rec([])


def random_gram(rng, n, spread=2):
    while True:
        b = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
        g = ex.mat_mul(b, ex.transpose(b))
        if ex.mat_det(g) > 0:
            return [[2 * x for x in row] for row in g]


def random_unimodular(rng, n, steps=12):
    if n == 1:
        return [[rng.choice([1, -1])]]
    u = ex.int_identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q = rng.choice([-2, -1, 1, 2])
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]
    return u


# ---------------------------------------------------------------------------
# linear algebra


def test_det_inverse_roundtrip():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 5)
        g = random_gram(rng, n)
        d = ex.mat_det(g)
        gi = ex.mat_inv(g)
        assert ex.mat_eq(ex.mat_mul(g, gi), ex.identity(n))
        assert ex.mat_det(gi) == 1 / d


def test_char_poly_known():
    assert ex.char_poly([[2]]) == [F(-2), F(1)]
    # companion of x^2 - x - 1
    assert ex.char_poly([[0, 1], [1, 1]]) == [F(-1), F(-1), F(1)]
    assert ex.char_poly([]) == [F(1)]


def test_hnf_canonical():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n + 1)]
        h = ex.hnf(rows)
        assert ex.hnf(h) == h
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert ex.hnf(shuffled) == h


def test_snf_properties():
    rng = random.Random(13)
    for _ in range(30):
        nr = rng.randint(1, 5)
        nc = rng.randint(1, 5)
        a = [[rng.randint(-8, 8) for _ in range(nc)] for _ in range(nr)]
        d, u, v = ex.snf(a)
        prod = ex.mat_mul(ex.mat_mul(u, a), v)
        for i in range(nr):
            for j in range(nc):
                want = d[i] if i == j and i < len(d) else 0
                assert prod[i][j] == want
        for i in range(len(d) - 1):
            if d[i + 1]:
                assert d[i] != 0 and d[i + 1] % d[i] == 0
            else:
                assert True
        assert abs(ex.mat_det(u)) == 1
        assert abs(ex.mat_det(v)) == 1


def test_left_kernel_saturated():
    a = [[2, 0], [0, 3], [2, 3]]
    k = ex.left_kernel_int(a)
    assert len(k) == 1
    x = k[0]
    assert [x[0] * 2 + x[2] * 2, x[1] * 3 + x[2] * 3] == [0, 0]
    assert math.gcd(*[abs(t) for t in x]) == 1


def test_lll_preserves_lattice():
    rng = random.Random(17)
    for _ in range(20):
        n = rng.randint(1, 6)
        g = random_gram(rng, n)
        g2, u = ex.lll_gram(g)
        assert abs(ex.mat_det(u)) == 1
        assert ex.mat_eq(ex.mat_mul(ex.mat_mul(u, g), ex.transpose(u)), g2)
        assert ex.mat_det(g2) == ex.mat_det(g)


def test_cyclotomic_known():
    assert ex.cyclotomic(1) == [-1, 1]
    assert ex.cyclotomic(2) == [1, 1]
    assert ex.cyclotomic(3) == [1, 1, 1]
    assert ex.cyclotomic(4) == [1, 0, 1]
    assert ex.cyclotomic(6) == [1, -1, 1]
    assert ex.cyclotomic(12) == [1, 0, -1, 0, 1]


# ---------------------------------------------------------------------------
# lattices: construction, dual, rescale, discriminant


def test_lattice_validation():
    with pytest.raises(ex.MalformedLatticeError):
        ex.Lattice([[2, 1], [0, 2]])
    with pytest.raises(ex.MalformedLatticeError):
        ex.Lattice([[0]])
    lat = ex.Lattice(A2)
    assert lat.rank == 2 and lat.det == 3 and lat.is_even


def test_zero_lattice():
    z = ex.Lattice([])
    assert z.rank == 0
    assert z.det == 1
    assert ex.short_vectors(z, 10) == []
    assert ex.dual_lattice(z).rank == 0


def test_dual_lattice():
    assert ex.dual_lattice(ex.Lattice(A1)).gram == ((F(1, 2),),)
    e8 = ex.Lattice(E8)
    d = ex.dual_lattice(e8)
    assert d.det == 1
    assert ex.is_isometric(e8, d) is not None


def test_dual_det_identity():
    rng = random.Random(19)
    for _ in range(15):
        g = random_gram(rng, rng.randint(1, 5))
        lat = ex.Lattice(g)
        assert lat.det * ex.dual_lattice(lat).det == 1


def test_dual_basis_in_ambient():
    lat = ex.Lattice.from_basis([[2, 0], [1, 3]])
    d = ex.dual_lattice(lat)
    for i, bi in enumerate(d.basis):
        for j, bj in enumerate(lat.basis):
            assert ex.dot(list(bi), list(bj)) == (i == j)


def test_rescale():
    lat = ex.Lattice(A1)
    assert ex.rescale(lat, 2).gram == ((4,),)
    assert ex.rescale(lat, 1).gram == lat.gram
    assert ex.rescale(lat, F(1, 2)).gram == ((1,),)
    emb = ex.Lattice.from_basis([[1, 1], [1, -1]])
    r = ex.rescale(emb, 3)
    assert r.ambient_gram == F(3)
    ex.Lattice(r.gram, basis=r.basis, ambient_gram=r.ambient_gram)  # revalidates


def test_discriminant_group_basics():
    d = ex.discriminant_group(ex.Lattice(A1))
    assert d.invariant_factors == [2]
    assert d.q_values == [F(1, 2)]
    d = ex.discriminant_group(ex.Lattice(A2))
    assert d.invariant_factors == [3]
    assert d.q_values[0] in (F(2, 3), F(4, 3))
    assert ex.discriminant_group(ex.Lattice(E8)).invariant_factors == []
    d = ex.discriminant_group(ex.Lattice(D4))
    assert d.invariant_factors == [2, 2]
    prod = 1
    for x in d.invariant_factors:
        prod *= x
    assert prod == ex.Lattice(D4).det


def test_discriminant_generators_have_right_order():
    rng = random.Random(23)
    for _ in range(10):
        g = random_gram(rng, rng.randint(1, 4))
        lat = ex.Lattice(g)
        disc = ex.discriminant_group(lat)
        prod = 1
        for d, gen in zip(disc.invariant_factors, disc.generators):
            prod *= d
            scaled = [d * x for x in gen]
            assert all(t.denominator == 1 for t in map(ex.frac, scaled))
        assert prod == lat.det


# ---------------------------------------------------------------------------
# enumeration


def test_short_vectors_small_known():
    assert len(ex.short_vectors(ex.Lattice(A1), 2)) == 1
    assert len(ex.short_vectors(ex.Lattice(A2), 2)) == 3
    assert len(ex.short_vectors(ex.Lattice(D4), 2)) == 12
    assert len(ex.short_vectors(ex.Lattice(E8), 2)) == 120
    assert ex.short_vectors(ex.Lattice(A2), 1) == []


def test_short_vectors_sign_and_order():
    vs = ex.short_vectors(ex.Lattice(A2), 2)
    assert vs == sorted(vs)
    for v in vs:
        first = next(x for x in v if x)
        assert first > 0


def test_short_vectors_against_box_oracle():
    rng = random.Random(29)
    for _ in range(60):
        n = rng.randint(1, 5)
        g = random_gram(rng, n)
        lat = ex.Lattice(g)
        bound = rng.randint(1, 12)
        assert ex.short_vectors(lat, bound) == box_short_vectors(g, bound)


def test_short_vectors_rational_gram():
    half = ex.rescale(ex.Lattice(A2), F(1, 2))
    assert len(ex.short_vectors(half, 1)) == 3


def test_minimum():
    assert ex.minimum(ex.Lattice(E8)) == 2
    assert ex.minimum(ex.rescale(ex.Lattice(A1), 5)) == 10


def test_close_vectors_center_zero_matches_short():
    rng = random.Random(31)
    for _ in range(20):
        n = rng.randint(1, 4)
        g = random_gram(rng, n)
        lat = ex.Lattice(g)
        bound = rng.randint(1, 8)
        close = ex.close_vectors(lat, [0] * n, bound)
        folded = set()
        for v, dist in close:
            assert lat.norm(v) == dist
            if any(v):
                w = v
                for x in w:
                    if x:
                        if x < 0:
                            w = tuple(-y for y in w)
                        break
                folded.add(w)
            else:
                assert dist == 0
        assert sorted(folded) == ex.short_vectors(lat, bound)
        assert ((0,) * n, F(0)) in close


def test_close_vectors_shifted():
    lat = ex.Lattice(A1)
    got = ex.close_vectors(lat, [F(1, 2)], F(1, 2))
    assert got == [((0,), F(1, 2)), ((1,), F(1, 2))]


# ---------------------------------------------------------------------------
# isometries, frame shapes, fixed parts


def test_isometry_validation():
    lat = ex.Lattice(A2)
    ex.Isometry([[0, 1], [1, 0]], lat)
    with pytest.raises(ex.MalformedLatticeError):
        ex.Isometry([[1, 1], [0, 1]], lat)


def test_isometry_order():
    lat = ex.Lattice(A2)
    rot = ex.Isometry([[0, 1], [-1, -1]], lat)
    assert rot.order == 3
    assert ex.Isometry([[1, 0], [0, 1]], lat).order == 1


def test_frame_shape_identity_and_minus():
    lat = ex.Lattice([[2 * (i == j) for j in range(4)] for i in range(4)])
    ident = ex.Isometry(ex.int_identity(4), lat)
    assert ident.frame_shape.exponents == {1: 4}
    minus = ex.Isometry([[-(i == j) for j in range(4)] for i in range(4)], lat)
    assert minus.frame_shape.exponents == {1: -4, 2: 4}
    assert minus.frame_shape.rank == 4
    assert minus.frame_shape.fixed_dim == 0


def test_frame_shape_a2_rotation():
    lat = ex.Lattice(A2)
    rot = ex.Isometry([[0, 1], [-1, -1]], lat)
    assert rot.frame_shape.exponents == {1: -1, 3: 1}


def test_frame_shape_poly_reconstruction():
    rng = random.Random(37)
    lat = ex.Lattice([[2 * (i == j) for j in range(5)] for i in range(5)])
    for _ in range(10):
        perm = list(range(5))
        rng.shuffle(perm)
        signs = [rng.choice([1, -1]) for _ in range(5)]
        m = [[signs[i] * (perm[i] == j) for j in range(5)] for i in range(5)]
        iso = ex.Isometry(m, lat)
        fs = iso.frame_shape
        num, den = fs.poly()
        cp = [int(c) for c in ex.char_poly([list(r) for r in m])]
        assert ex._poly_mul(cp, den) == num
        assert fs.rank == 5


def test_frame_shape_parse():
    fs = ex.parse_frame_shape("1^8 2^8")
    assert fs.exponents == {1: 8, 2: 8}
    assert ex.parse_frame_shape("2^16/1^8").exponents == {1: -8, 2: 16}
    assert ex.parse_frame_shape("1^{-1}2^{5}").exponents == {1: -1, 2: 5}
    assert ex.parse_frame_shape("1.2.7.14").exponents == {1: 1, 2: 1, 7: 1, 14: 1}
    assert str(ex.parse_frame_shape("1^8 2^8")) == "1^8 2^8"


def test_fixed_and_coinvariant_swap():
    g = [[2, 0], [0, 2]]
    lat = ex.Lattice(g)
    swap = ex.Isometry([[0, 1], [1, 0]], lat)
    fixed = ex.fixed_sublattice(lat, swap)
    coin = ex.coinvariant_sublattice(lat, swap)
    assert fixed.rank == 1 and coin.rank == 1
    assert fixed.gram == ((4,),)
    assert coin.gram == ((4,),)
    fb = list(fixed.basis[0])
    cb = list(coin.basis[0])
    assert ex.gram_apply(g, fb, cb) == 0


def test_fixed_identity_and_minus():
    lat = ex.Lattice(A2)
    ident = ex.Isometry(ex.int_identity(2), lat)
    assert ex.fixed_sublattice(lat, ident).rank == 2
    assert ex.coinvariant_sublattice(lat, ident).rank == 0
    minus = ex.Isometry([[-1, 0], [0, -1]], lat)
    assert ex.fixed_sublattice(lat, minus).rank == 0
    assert ex.coinvariant_sublattice(lat, minus).rank == 2


def test_fixed_plus_coinvariant_ranks():
    rng = random.Random(41)
    lat = ex.Lattice([[2 * (i == j) for j in range(5)] for i in range(5)])
    for _ in range(10):
        perm = list(range(5))
        rng.shuffle(perm)
        m = [[int(perm[i] == j) for j in range(5)] for i in range(5)]
        iso = ex.Isometry(m, lat)
        f = ex.fixed_sublattice(lat, iso)
        c = ex.coinvariant_sublattice(lat, iso)
        assert f.rank + c.rank == 5
        assert f.rank == iso.frame_shape.fixed_dim
        for a in f.basis or []:
            for b in c.basis or []:
                assert ex.gram_apply([list(r) for r in lat.gram], list(a), list(b)) == 0


def test_fixed_sublattice_saturated():
    # tau of order 2 on A2: swap the simple roots
    lat = ex.Lattice(A2)
    swap = ex.Isometry([[0, 1], [1, 0]], lat)
    fixed = ex.fixed_sublattice(lat, swap)
    # alpha1+alpha2 generates; (1,1) must be in the basis span over Z
    assert fixed.rank == 1
    assert tuple(map(abs, fixed.basis[0])) == (1, 1)


# ---------------------------------------------------------------------------
# isometry testing


def test_is_isometric_trivial_cases():
    a2 = ex.Lattice(A2)
    m = ex.is_isometric(a2, a2)
    assert m is not None
    sq = ex.Lattice([[2, 0], [0, 2]])
    assert ex.is_isometric(a2, sq) is None
    assert ex.is_isometric(a2, ex.Lattice(A1)) is None
    assert ex.is_isometric(ex.Lattice([]), ex.Lattice([])) == ()


def test_is_isometric_returns_valid_map():
    rng = random.Random(43)
    for _ in range(20):
        n = rng.randint(1, 4)
        g = random_gram(rng, n)
        u = random_unimodular(rng, n)
        g2 = ex.mat_mul(ex.mat_mul(u, g), ex.transpose(u))
        l1 = ex.Lattice(g)
        l2 = ex.Lattice(g2)
        m = ex.is_isometric(l1, l2)
        assert m is not None
        mm = [list(r) for r in m]
        got = ex.mat_mul(ex.mat_mul(mm, g2), ex.transpose(mm))
        assert ex.mat_eq(got, [list(r) for r in g])


def test_is_isometric_agrees_with_brute_force():
    # entries kept small so the exhaustive oracle stays exhaustive and feasible
    rng = random.Random(47)
    checked_yes = checked_no = 0
    for _ in range(40):
        n = rng.randint(1, 3)
        g1 = random_gram(rng, n)
        if max(abs(x) for row in g1 for x in row) > 40:
            continue
        if rng.random() < 0.5:
            while True:
                u = random_unimodular(rng, n, steps=4)
                g2 = ex.mat_mul(ex.mat_mul(u, g1), ex.transpose(u))
                if max(abs(x) for row in g2 for x in row) <= 60:
                    break
        else:
            g2 = random_gram(rng, n)
            if max(abs(x) for row in g2 for x in row) > 40:
                continue
        fast = ex.is_isometric(ex.Lattice(g1), ex.Lattice(g2))
        slow = brute_isometry(g1, g2)
        assert (fast is None) == (slow is None)
        if fast is None:
            checked_no += 1
        else:
            checked_yes += 1
    assert checked_yes and checked_no


def test_is_isometric_budget():
    e8 = ex.Lattice(E8)
    with pytest.raises(ex.SearchBudgetExceeded):
        ex.is_isometric(e8, e8, node_budget=0)


# ---------------------------------------------------------------------------
# overlattices and indices


def test_overlattices_of_unimodular():
    e8 = ex.Lattice(E8)
    got = ex.even_unimodular_overlattices(e8)
    assert len(got) == 1
    assert got[0].det == 1


def test_overlattices_d8_glue_to_e8():
    # D8: even sublattice of Z^8
    n = 8
    basis = []
    for i in range(n - 1):
        row = [0] * n
        row[i], row[i + 1] = 1, -1
        basis.append(row)
    row = [0] * n
    row[n - 2], row[n - 1] = 1, 1
    basis.append(row)
    d8 = ex.Lattice.from_basis(basis)
    assert d8.det == 4
    got = ex.even_unimodular_overlattices(d8)
    assert len(got) == 2
    for lat in got:
        assert lat.det == 1 and lat.is_even
        assert len(ex.short_vectors(lat, 2)) == 120  # it is E8
        assert ex.quotient_index(
            ex.Lattice(d8.gram, basis=ex.int_identity(8), ambient_gram=d8.gram,
                       check=False), lat) == 2


def test_overlattices_none_for_d4():
    assert ex.even_unimodular_overlattices(ex.Lattice(D4)) == []


def test_overlattices_nonsquare_det():
    with pytest.raises(ex.NoOverlatticeError):
        ex.even_unimodular_overlattices(ex.Lattice(A1))


def test_quotient_index():
    g = [[2, 0], [0, 2]]
    sup = ex.lattice_from_rows(ex.int_identity(2), g)
    sub = ex.lattice_from_rows([[2, 0], [0, 1]], g)
    assert ex.quotient_index(sub, sup) == 2
    assert ex.quotient_index(sup, sup) == 1
    bad = ex.lattice_from_rows([[F(1, 2), 0], [0, 1]], g)
    with pytest.raises(ex.NonContainmentError):
        ex.quotient_index(bad, sup)


# ---------------------------------------------------------------------------
# file formats


def test_lattice_roundtrip():
    lat = ex.Lattice([[2, -1], [-1, 2]])
    buf = io.StringIO()
    ex.write_lattice(lat, buf)
    buf.seek(0)
    lat2 = ex.read_lattice(buf)
    assert lat2.gram == lat.gram


def test_lattice_roundtrip_rational_and_ambient():
    lat = ex.Lattice.from_basis([[2, 0], [1, 3]])
    buf = io.StringIO()
    ex.write_lattice(lat, buf)
    text = buf.getvalue()
    assert "AMBIENT" in text
    lat2 = ex.read_lattice(io.StringIO(text))
    assert lat2.gram == lat.gram
    assert lat2.basis == lat.basis


def test_lattice_read_errors():
    with pytest.raises(ex.MalformedLatticeError):
        ex.read_lattice(io.StringIO(""))
    with pytest.raises(ex.MalformedLatticeError):
        ex.read_lattice(io.StringIO("2\n2 0\n"))
    with pytest.raises(ex.MalformedLatticeError):
        ex.read_lattice(io.StringIO("x\n"))


def test_isometry_roundtrip():
    rows = [[0, 1], [-1, -1]]
    buf = io.StringIO()
    ex.write_isometry(rows, buf)
    buf.seek(0)
    assert ex.read_isometry(buf) == rows
