"""Root recognition, simple bases, affine diagrams, folding table."""

from fractions import Fraction

import pytest

from deephole import exactlat as ex
from deephole import rootsys as rs

F = Fraction


def lat(gram, **kw):
    return ex.Lattice([[F(x) for x in row] for row in gram], **kw)


A1 = [[2]]
A2 = [[2, -1], [-1, 2]]
D4 = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
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


def cartan_lattice(letter, rank, alpha=1):
    return lat(rs.template_gram(letter, rank, F(alpha)))


def test_coxeter_data_table():
    assert rs.coxeter_data("A", 5) == rs.CoxeterData("A", 5, 6, 6, 1, 35)
    assert rs.coxeter_data("B", 3).h == 6
    assert rs.coxeter_data("B", 3).h_dual == 5
    assert rs.coxeter_data("C", 4).h == 8
    assert rs.coxeter_data("C", 4).h_dual == 5
    assert rs.coxeter_data("D", 6).h == 10
    assert rs.coxeter_data("E", 8).h == 30
    assert rs.coxeter_data("F", 4) == rs.CoxeterData("F", 4, 12, 9, 2, 52)
    assert rs.coxeter_data("G", 2) == rs.CoxeterData("G", 2, 6, 4, 3, 14)
    with pytest.raises(rs.RecognitionError):
        rs.coxeter_data("E", 5)


def test_root_counts_match_dimensions():
    # dim = rank + number of roots for every stored type
    for letter, rank in [("A", 7), ("B", 5), ("C", 3), ("D", 9),
                         ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]:
        cd = rs.coxeter_data(letter, rank)
        assert cd.dim == rank + rs.root_count(letter, rank)


def test_template_grams_are_valid_lattices():
    for letter, rank in [("A", 1), ("A", 9), ("B", 2), ("B", 6), ("C", 3),
                         ("C", 8), ("D", 4), ("D", 12), ("E", 6), ("E", 7),
                         ("E", 8), ("F", 4), ("G", 2)]:
        l = cartan_lattice(letter, rank)
        assert l.rank == rank
        assert l.is_even or letter in ("B",)


def test_template_determinants():
    assert cartan_lattice("A", 4).det == 5
    assert cartan_lattice("D", 6).det == 4
    assert cartan_lattice("E", 8).det == 1
    assert cartan_lattice("B", 3).det == 1
    assert cartan_lattice("C", 3).det == 4
    assert cartan_lattice("F", 4).det == 4
    assert cartan_lattice("G", 2).det == 3


def test_decompose_single_types():
    for gram, letter, rank in [(A2, "A", 2), (D4, "D", 4), (E8, "E", 8)]:
        datum = rs.decompose_norm2_roots(lat(gram))
        assert len(datum.components) == 1
        c = datum.components[0]
        assert (c.letter, c.rank, c.scale) == (letter, rank, F(1))
        assert 2 * len(c.roots) == rs.root_count(letter, rank)
        assert len(c.base) == rank


def test_decompose_direct_sum():
    l = ex.direct_sum(lat(A1), lat(A1), lat(A2), lat(D4))
    datum = rs.decompose_norm2_roots(l)
    names = [c.type_name for c in datum.components]
    assert names == ["A2", "A1", "A1", "D4"]
    assert datum.total_rank == 8
    assert datum.root_count == 2 + 2 + 6 + 24


def test_decompose_rejects_wrong_norm():
    l = lat([[4]])
    with pytest.raises(rs.RecognitionError):
        rs.decompose_norm2_roots(l, [[1]])


def test_base_gram_matches_template():
    for gram, letter, rank in [(A2, "A", 2), (D4, "D", 4), (E8, "E", 8)]:
        l = lat(gram)
        c = rs.decompose_norm2_roots(l).components[0]
        expect = rs.template_gram(letter, rank)
        got = [[l.inner(a, b) for b in c.base] for a in c.base]
        assert got == [[F(x) for x in row] for row in expect]


def test_base_is_deterministic():
    l = lat(E8)
    c1 = rs.decompose_norm2_roots(l).components[0]
    c2 = rs.decompose_norm2_roots(l).components[0]
    assert c1.base == c2.base


def test_positive_root_pairings_with_weyl_vector():
    # <rho, alpha> >= 1 for positive roots, equality exactly on the base
    l = lat(D4)
    c = rs.decompose_norm2_roots(l).components[0]
    rho = rs.weyl_vector(l, c.base)
    base_set = {tuple(b) for b in c.base}
    for v in c.roots:
        for w in (list(v), [-x for x in v]):
            pair = l.inner(rho, w)
            coeffs_pos = pair > 0
            if coeffs_pos:
                assert pair >= 1
                assert (pair == 1) == (tuple(w) in base_set)


def test_weyl_vector_norm_e8():
    # |rho|^2 = h(h+1) rank / 12 for E8: 30*31*8/12 = 620
    l = lat(E8)
    c = rs.decompose_norm2_roots(l).components[0]
    rho = rs.weyl_vector(l, c.base)
    assert l.norm(rho) == 620


def test_weyl_vector_degenerate_error():
    l = lat(A2)
    with pytest.raises(ex.MalformedLatticeError):
        rs.weyl_vector(l, [[1, 0], [-1, 0]])


def test_scaled_recognition_follows_conventions():
    # scaling a root lattice can promote dual vectors to long roots:
    # sqrt(a)D_n carries C_n, sqrt(a)D4 carries F4, sqrt(a)A2 carries G2
    cases = [
        ("A", 1, 5, ("A", 1, F(5))),
        ("E", 8, 2, ("E", 8, F(2))),
        ("A", 3, 2, ("C", 3, F(2))),
        ("D", 5, 3, ("C", 5, F(3))),
        ("D", 4, 3, ("F", 4, F(3))),
        ("A", 2, 3, ("G", 2, F(3))),
    ]
    for letter, rank, alpha, expect in cases:
        l = cartan_lattice(letter, rank, alpha)
        datum = rs.root_system_of_even_lattice(l)
        assert len(datum.components) == 1
        c = datum.components[0]
        assert (c.letter, c.rank, c.scale) == expect


def test_scaled_recognition_bcfg():
    # sqrt(2)-scaled Z^n carries a B_n system with shorts of norm 2
    for rank in (2, 3, 5):
        l = lat([[2 * (i == j) for j in range(rank)] for i in range(rank)])
        datum = rs.root_system_of_even_lattice(l)
        c = datum.components[0]
        expect = ("B", rank, F(2)) if rank > 2 else ("B", 2, F(2))
        assert (c.letter, c.rank, c.scale) == expect

    l = cartan_lattice("C", 3, 1)
    datum = rs.root_system_of_even_lattice(l)
    c = datum.components[0]
    assert (c.letter, c.rank, c.scale) == ("C", 3, F(1))

    l = cartan_lattice("F", 4, 1)
    c = rs.root_system_of_even_lattice(l).components[0]
    assert (c.letter, c.rank, c.scale) == ("F", 4, F(1))

    l = cartan_lattice("G", 2, 1)
    c = rs.root_system_of_even_lattice(l).components[0]
    assert (c.letter, c.rank, c.scale) == ("G", 2, F(1))


def test_scaled_recognition_mixed_sum():
    # both summands promote to G2: the norm-6 vectors of A2 already reflect it
    l = ex.direct_sum(cartan_lattice("A", 2, 1), cartan_lattice("A", 2, 3))
    datum = rs.root_system_of_even_lattice(l)
    tags = [(c.letter, c.rank, c.scale) for c in datum.components]
    assert tags == [("G", 2, F(1)), ("G", 2, F(3))]


def test_rescaled_d4_becomes_f4():
    l = ex.rescale(lat(D4), 2)
    c = rs.root_system_of_even_lattice(l).components[0]
    assert (c.letter, c.rank, c.scale) == ("F", 4, F(2))


def test_reflective_roots_of_binary_form():
    # (1,-1) and (1,1) reflect this lattice at norms 6 and 10
    l = lat([[4, 1], [1, 4]])
    datum = rs.root_system_of_even_lattice(l)
    tags = [(c.letter, c.rank, c.scale) for c in datum.components]
    assert tags == [("A", 1, F(3)), ("A", 1, F(5))]


def test_no_roots():
    l = lat([[4, 1], [1, 6]])
    datum = rs.root_system_of_even_lattice(l)
    assert datum.components == []


def test_type_symbol():
    l = ex.direct_sum(lat(D4), lat(A2), lat(A2))
    datum = rs.decompose_norm2_roots(l)
    assert datum.type_symbol() == "A2^2 D4"


def test_highest_root_and_affine_diagram():
    l = lat(E8)
    c = rs.decompose_norm2_roots(l).components[0]
    diag = rs.affine_diagram(l, c)
    assert diag.coxeter_number == 30
    assert len(diag.nodes) == 9
    theta = [-x for x in diag.nodes[0]]
    assert l.norm(theta) == 2
    # highest root pairs nonnegatively with every simple root
    assert all(l.inner(theta, b) >= 0 for b in c.base)


def test_affine_marks_sum_to_h():
    for letter, rank in [("A", 5), ("D", 7), ("E", 6), ("E", 7), ("E", 8)]:
        marks = rs.affine_marks(letter, rank)
        assert sum(marks) == rs.coxeter_data(letter, rank).h
        assert len(marks) == rank + 1


def test_affine_diagram_d4_center():
    l = lat(D4)
    c = rs.decompose_norm2_roots(l).components[0]
    diag = rs.affine_diagram(l, c)
    # node 0 attaches to the center (index 2 in diagram order), nowhere else
    pair = [l.inner(diag.nodes[0], diag.nodes[j]) for j in range(1, 5)]
    assert pair == [0, -1, 0, 0]


def fold_a(rank, step):
    l = cartan_lattice("A", rank)
    c = rs.decompose_norm2_roots(l).components[0]
    diag = rs.affine_diagram(l, c)
    m = rank + 1
    orbits = {}
    for i in range(m):
        orbits.setdefault(i % step and None or i % step, None)
    # rotation by `step`: orbit of i is {i, i+step, ...}
    buckets = {}
    for i in range(m):
        buckets.setdefault(i % step, []).append(i)
    return rs.fold_affine_diagram(diag, list(buckets.values()))


def test_fold_a_type_rows():
    info = fold_a(5, 3)  # A5 rotation by 3: three orbits of size 2
    assert info.quotient == ("A", 2)
    assert info.coinvariant == ((("A", 1), 3),)
    assert info.frame == ((1, -1), (2, 3))
    assert info.fixed_sublattice == "sqrt(2)A2"

    info = fold_a(5, 1)  # full rotation
    assert info.quotient is None
    assert info.coinvariant == ((("A", 5), 1),)
    assert info.frame == ((1, -1), (6, 1))
    assert info.fixed_sublattice == "0"


def test_fold_a_rejects_unbalanced():
    l = cartan_lattice("A", 3)
    c = rs.decompose_norm2_roots(l).components[0]
    diag = rs.affine_diagram(l, c)
    with pytest.raises(rs.UnsupportedFoldingError):
        rs.fold_affine_diagram(diag, [[0, 1], [2], [3]])


def d_diagram(n):
    l = cartan_lattice("D", n)
    c = rs.decompose_norm2_roots(l).components[0]
    return l, c, rs.affine_diagram(l, c)


def test_fold_d_full_flip():
    _, _, diag = d_diagram(6)
    # pairs {0,5},{1,6},{2,4}, fixed {3}
    info = rs.fold_affine_diagram(diag, [[0, 5], [1, 6], [2, 4], [3]])
    assert info.quotient == ("B", 3)
    assert info.coinvariant == ((("A", 1), 3),)
    assert info.frame == ((2, 3),)
    assert info.fixed_simple == (("A", 1), 1)


def test_fold_d_leaf_swap():
    _, _, diag = d_diagram(6)
    info = rs.fold_affine_diagram(diag, [[0, 1], [5, 6], [2], [3], [4]])
    assert info.quotient == ("C", 4)
    assert info.frame == ((1, 2), (2, 2))
    assert info.fixed_sublattice == "D4"
    assert info.fixed_simple == (("A", 3), 1)

    _, _, diag = d_diagram(5)
    info = rs.fold_affine_diagram(diag, [[0, 1], [4, 5], [2], [3]])
    assert info.quotient == ("C", 3)
    assert info.frame == ((1, 1), (2, 2))
    assert info.fixed_sublattice == "D3"


def test_fold_d_order_four():
    _, _, diag = d_diagram(5)
    # 4-cycle on the leaves, middle pair swapped
    info = rs.fold_affine_diagram(diag, [[0, 4, 1, 5], [2, 3]])
    assert info.quotient == ("C", 1)
    assert info.coinvariant == ((("A", 3), 1), (("A", 1), 1))
    assert info.frame == ((1, -1), (2, 1), (4, 1))


def test_fold_d4_variants():
    _, _, diag = d_diagram(4)
    for orbs in ([[0, 1], [3, 4], [2]], [[0, 3], [1, 4], [2]], [[0, 4], [1, 3], [2]]):
        info = rs.fold_affine_diagram(diag, orbs)
        assert info.quotient in (("B", 2), ("C", 2))
        assert info.coinvariant == ((("A", 1), 2),)
        assert info.frame == ((2, 2),)


def test_fold_e6():
    l = cartan_lattice("E", 6)
    c = rs.decompose_norm2_roots(l).components[0]
    diag = rs.affine_diagram(l, c)
    info = rs.fold_affine_diagram(diag, [[1, 6, 0], [3, 5, 2], [4]])
    assert info.quotient == ("G", 2)
    assert info.coinvariant == ((("A", 2), 2),)
    assert info.frame == ((3, 2),)
    assert info.fixed_sublattice == "A2"


def test_fold_e7():
    l = cartan_lattice("E", 7)
    c = rs.decompose_norm2_roots(l).components[0]
    diag = rs.affine_diagram(l, c)
    info = rs.fold_affine_diagram(diag, [[0, 7], [1, 6], [3, 5], [2], [4]])
    assert info.quotient == ("F", 4)
    assert info.coinvariant == ((("A", 1), 3),)
    assert info.frame == ((1, 1), (2, 3))
    assert info.fixed_sublattice == "D4"
    assert info.fixed_simple == (("A", 2), 1)


def test_fold_rejects_mark_mixing():
    l = cartan_lattice("E", 6)
    c = rs.decompose_norm2_roots(l).components[0]
    diag = rs.affine_diagram(l, c)
    with pytest.raises(rs.UnsupportedFoldingError):
        rs.fold_affine_diagram(diag, [[0, 4], [1, 6], [3, 5], [2]])


def test_fold_rejects_bad_partition():
    l = cartan_lattice("A", 2)
    c = rs.decompose_norm2_roots(l).components[0]
    diag = rs.affine_diagram(l, c)
    with pytest.raises(rs.UnsupportedFoldingError):
        rs.fold_affine_diagram(diag, [[0, 1]])


def test_coxeter_number_of_niemeier():
    l = ex.direct_sum(*[lat(A1)] * 3)
    datum = rs.decompose_norm2_roots(l)
    assert rs.coxeter_number_of_niemeier(datum) == 2
    mixed = rs.decompose_norm2_roots(ex.direct_sum(lat(A1), lat(A2)))
    with pytest.raises(rs.MixedCoxeterError):
        rs.coxeter_number_of_niemeier(mixed)


def test_fold_frame_matches_induced_isometry():
    # rotating the affine A3 cycle by one step induces an isometry of the A3
    # root lattice whose frame shape the catalog row predicts
    l = cartan_lattice("A", 3)
    c = rs.decompose_norm2_roots(l).components[0]
    diag = rs.affine_diagram(l, c)
    info = rs.fold_affine_diagram(diag, [[0, 1, 2, 3]])
    # send each diagram node to its cyclic successor; the finite nodes are
    # unit vectors here, so each one fixes a row of the matrix
    rows = [None] * 3
    for j in range(1, 4):
        src = diag.nodes[j]
        dst = diag.nodes[(j + 1) % 4]
        rows[src.index(1)] = [int(x) for x in dst]
    tau = ex.Isometry(rows, lattice=l)
    assert ex.frame_shape(tau).exponents == dict(info.frame)
    assert tau.order == 4


def test_root_datum_serialization():
    import io
    l = lat(A2)
    datum = rs.decompose_norm2_roots(l)
    buf = io.StringIO()
    rs.write_root_datum(datum, buf)
    text = buf.getvalue()
    assert text.startswith("COMPONENT A 2 scale 1/1")
    assert len(text.strip().splitlines()) == 4
