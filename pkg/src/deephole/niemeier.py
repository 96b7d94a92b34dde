"""The rank-24 catalogue: Golay codes, Niemeier lattices, the Leech
lattice, and deep-hole data connecting them.

Every Niemeier lattice is built as a glue extension of its root lattice
R = sum of simply-laced Cartan blocks; coordinates throughout are rows
w.r.t. the Cartan basis of R, so a codeword entry addresses one block.
The deep-hole pipeline walks from a Niemeier lattice N to the rootless
even unimodular neighbour sharing the sublattice M = {x : <rho, x> = 0
mod h}, which by uniqueness in rank 24 is a copy of the Leech lattice.
"""

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from . import exactlat as ex
from . import rootsys as rs


class CatalogError(ex.LatticeError):
    """Stored construction data failed its validation gate."""


class HoleError(ex.LatticeError):
    """Deep-hole pipeline could not complete on the given input."""


def data_dir():
    """Directory holding generator files; DEEPHOLE_DATA overrides."""
    override = os.environ.get("DEEPHOLE_DATA")
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "data")


# ---------------------------------------------------------------------------
# binary Golay code


class GolayCode:
    """The [24, 12, 8] binary Golay code from a generator matrix."""

    def __init__(self, generators):
        self.generators = tuple(tuple(int(x) % 2 for x in row) for row in generators)
        if len(self.generators) != 12 or any(len(r) != 24 for r in self.generators):
            raise CatalogError("Golay generator matrix must be 12 x 24")
        self._words = None

    def words(self):
        if self._words is None:
            span = {(0,) * 24}
            for gen in self.generators:
                span |= {tuple((w[i] + gen[i]) % 2 for i in range(24)) for w in span}
            self._words = tuple(sorted(span))
        return self._words

    def weight_distribution(self):
        dist = {}
        for w in self.words():
            dist[sum(w)] = dist.get(sum(w), 0) + 1
        return dist

    def __contains__(self, word):
        return tuple(int(x) % 2 for x in word) in set(self.words())


@lru_cache(maxsize=None)
def golay_code():
    """Load and validate the binary Golay code shipped with the package."""
    path = os.path.join(data_dir(), "golay.gen")
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                rows.append([int(x) for x in line.split()])
    code = GolayCode(rows)
    dist = code.weight_distribution()
    if dist != {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}:
        raise CatalogError("Golay weight enumerator is wrong: %r" % (dist,))
    return code


# ---------------------------------------------------------------------------
# Leech lattice


@lru_cache(maxsize=None)
def leech_lattice():
    """The Leech lattice, exact Gram, in the standard 1/sqrt(8) frame."""
    code = golay_code()
    gens = []
    gens.append([-3] + [1] * 23)
    for row in code.generators:
        gens.append([2 * x for x in row])
    for j in range(1, 24):
        vec = [0] * 24
        vec[0], vec[j] = 4, -4
        gens.append(vec)
    vec = [0] * 24
    vec[0], vec[1] = 4, 4
    gens.append(vec)
    basis = ex.hnf(gens)
    lat = ex.Lattice.from_basis(basis, ambient_gram=Fraction(1, 8))
    if not lat.is_even or lat.det != 1:
        raise CatalogError("Leech construction lost evenness or unimodularity")
    if ex.short_vectors(lat, 2):
        raise CatalogError("Leech construction produced roots")
    return lat


# ---------------------------------------------------------------------------
# discriminant labels of the simply-laced blocks

# Label alphabets: A_{k-1} uses Z_k; D_n uses 0,1,2,3 with 1 and 3 the two
# spinor classes and 2 the vector class (Klein group for n even, Z_4 with
# 2 = 1 + 1 for n odd); E6 uses Z_3, E7 uses Z_2, E8 only 0.


def label_count(letter, rank):
    if letter == "A":
        return rank + 1
    if letter == "D":
        return 4
    if letter == "E":
        return {6: 3, 7: 2, 8: 1}[rank]
    raise CatalogError("no glue labels for type %s%d" % (letter, rank))


def label_add(letter, rank, a, b):
    if letter == "A":
        return (a + b) % (rank + 1)
    if letter == "D":
        if rank % 2 == 0:
            return a ^ b
        return (a + b) % 4
    return (a + b) % label_count(letter, rank)


@lru_cache(maxsize=None)
def _dual_rows(letter, rank):
    gram = rs.template_gram(letter, rank, Fraction(1))
    return tuple(tuple(row) for row in ex.mat_inv([list(r) for r in gram]))


def label_vector(letter, rank, label):
    """Coset representative for a glue label, in Cartan coordinates."""
    label = int(label)
    if not 0 <= label < label_count(letter, rank):
        raise CatalogError("label %d out of range for %s%d" % (label, letter, rank))
    if label == 0:
        return (Fraction(0),) * rank
    rows = _dual_rows(letter, rank)
    if letter == "A":
        return rows[label - 1]
    if letter == "D":
        return rows[{1: rank - 2, 2: 0, 3: rank - 1}[label]]
    if rank == 6:
        return rows[{1: 0, 2: 5}[label]]
    return rows[6]


# ---------------------------------------------------------------------------
# Niemeier catalogue

# Canonical names follow the component order of the stored generator files;
# keys are listed by descending Coxeter number.
_COXETER_NUMBERS = {
    "D24": 46, "E8D16": 30, "E8^3": 30, "A24": 25, "D12^2": 22,
    "A17E7": 18, "E7^2D10": 18, "A15D9": 16, "D8^3": 14, "A12^2": 13,
    "A11D7E6": 12, "E6^4": 12, "A9^2D6": 10, "D6^4": 10, "A8^3": 9,
    "A7^2D5^2": 8, "A6^4": 7, "A5^4D4": 6, "D4^6": 6, "A4^6": 5,
    "A3^8": 4, "A2^12": 3, "A1^24": 2,
}

_NAME_RE = re.compile(r"([ADE])(\d+)(?:\^(\d+))?")


def _parse_components(name):
    comps = []
    pos = 0
    for m in _NAME_RE.finditer(name):
        if m.start() != pos:
            raise CatalogError("cannot parse lattice name %r" % (name,))
        pos = m.end()
        letter, rank, mult = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        comps.extend([(letter, rank)] * mult)
    if pos != len(name) or not comps:
        raise CatalogError("cannot parse lattice name %r" % (name,))
    return tuple(comps)


def niemeier_names():
    """Canonical names of the 23 lattices with roots, by Coxeter number."""
    return tuple(_COXETER_NUMBERS)


def canonical_name(name):
    """Resolve component-order spelling variants to the catalogue key."""
    name = name.strip()
    if name in _COXETER_NUMBERS:
        return name
    want = sorted(_parse_components(name))
    for key in _COXETER_NUMBERS:
        if sorted(_parse_components(key)) == want:
            return key
    raise CatalogError("unknown Niemeier lattice %r" % (name,))


class NiemeierLattice:
    """A Niemeier lattice with its glue code over the Cartan frame."""

    def __init__(self, name, comps, generators, lattice, h):
        self.name = name
        self.comps = comps
        self.generators = generators
        self.lattice = lattice
        self.h = h
        offs = []
        pos = 0
        for _, rank in comps:
            offs.append(pos)
            pos += rank
        self.offsets = tuple(offs)
        self._elements = None

    @property
    def rank(self):
        return 24

    def glue_elements(self):
        """All codewords, as label tuples (one entry per component)."""
        if self._elements is None:
            zero = (0,) * len(self.comps)
            span = {zero}
            grew = True
            while grew:
                grew = False
                for gen in self.generators:
                    new = set()
                    for w in span:
                        s = tuple(label_add(l, r, a, b) for (l, r), a, b
                                  in zip(self.comps, w, gen))
                        if s not in span:
                            new.add(s)
                    if new:
                        span |= new
                        grew = True
            self._elements = frozenset(span)
        return self._elements

    def glue_vector(self, word):
        """Ambient row of the coset representative for a codeword."""
        if len(word) != len(self.comps):
            raise CatalogError("codeword length %d, expected %d"
                               % (len(word), len(self.comps)))
        out = []
        for (letter, rank), label in zip(self.comps, word):
            out.extend(label_vector(letter, rank, label))
        return tuple(out)

    def ambient_inner(self, u, v):
        g = self.lattice.ambient_gram
        return sum(u[i] * sum(g[i][j] * v[j] for j in range(24)) for i in range(24))

    def weyl_vector(self):
        """Ambient row pairing to 1 with every Cartan basis root."""
        out = []
        for letter, rank in self.comps:
            rows = _dual_rows(letter, rank)
            out.extend(sum(r[j] for r in rows) for j in range(rank))
        return tuple(out)

    def root_count(self):
        return 2 * len(ex.short_vectors(self.lattice, 2))


def _glue_path(name):
    return os.path.join(data_dir(), "niemeier", name.replace("^", "x") + ".glue")


def _read_glue(path):
    comps = None
    gens = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tag, rest = line.split(None, 1)
            if tag == "COMPONENTS":
                comps = tuple((t[0], int(t[1:])) for t in rest.split())
            elif tag == "GEN":
                gens.append(tuple(int(x) for x in rest.split()))
            else:
                raise CatalogError("unrecognised line in %s: %r" % (path, line))
    if comps is None:
        raise CatalogError("missing COMPONENTS line in %s" % (path,))
    return comps, tuple(gens)


@lru_cache(maxsize=None)
def niemeier_from_spec(name):
    """Build a catalogued Niemeier lattice from its stored glue data."""
    key = canonical_name(name)
    comps, gens = _read_glue(_glue_path(key))
    if comps != _parse_components(key):
        raise CatalogError("component list in glue file disagrees with %s" % (key,))
    if sum(rank for _, rank in comps) != 24:
        raise CatalogError("components of %s do not span rank 24" % (key,))

    blocks = [rs.template_gram(letter, rank, Fraction(1)) for letter, rank in comps]
    ambient = [[Fraction(0)] * 24 for _ in range(24)]
    pos = 0
    for block in blocks:
        r = len(block)
        for i in range(r):
            for j in range(r):
                ambient[pos + i][pos + j] = block[i][j]
        pos += r

    nl = NiemeierLattice(key, comps, gens, None, _COXETER_NUMBERS[key])
    rows = [[Fraction(int(i == j)) for j in range(24)] for i in range(24)]
    for gen in gens:
        rows.append(list(nl.glue_vector(gen)))
    basis = ex.hnf_rational(rows)
    lat = ex.Lattice.from_basis(basis, ambient_gram=ambient)
    if not lat.is_even:
        raise CatalogError("%s glue produced an odd lattice" % (key,))
    if lat.det != 1:
        raise CatalogError("%s glue has determinant %s, want 1" % (key, lat.det))
    nl.lattice = lat
    count = nl.root_count()
    if count != 24 * nl.h:
        raise CatalogError("%s has %d roots, want %d" % (key, count, 24 * nl.h))
    return nl


# ---------------------------------------------------------------------------
# deep holes


@dataclass
class DeepHole:
    """Deep-hole data tying a Niemeier lattice to its Leech neighbour.

    All member lattices keep coordinates relative to M, the index-h
    sublattice both neighbours share; beta_* are rows in the named frames.
    """

    niemeier: object
    h: int
    m_rows: tuple          # basis of M in N-coordinates
    m_lattice: object
    n_in_m: object         # N as an overlattice of M
    leech: object          # the rootless neighbour, in M-coordinates
    beta_n: tuple          # the chosen simple root, N-coordinates
    beta_m: tuple
    beta_leech: tuple      # same root in leech-basis coordinates


def _simple_root_rows(nl):
    """N-coordinates of the 24 Cartan basis roots."""
    binv = ex.mat_inv([list(r) for r in nl.lattice.basis])
    out = []
    for i in range(24):
        row = [binv[i][j] for j in range(24)]
        out.append(tuple(ex.frac(x) for x in row))
    # row i of binv expresses ambient e_i in the lattice basis
    for row in out:
        if any(x.denominator != 1 for x in row):
            raise HoleError("Cartan root not in the lattice")
    return tuple(tuple(int(x) for x in row) for row in out)


def _transport_weyl(nl, beta, rho):
    """Reflect the Weyl vector until it sees the given root as simple.

    A descent by simple reflections drives the root into the Cartan
    base; the inverse walk applied to rho keeps <rho', beta> = 1, which
    the kernel construction needs when the centre is not a standard
    simple root.
    """
    lat = nl.lattice
    if lat.norm(beta) != 2:
        raise HoleError("hole centre must be a root")
    basis = [list(r) for r in lat.basis]
    b = [ex.frac(x) for x in ex.mat_vec(list(beta), basis)]
    n = len(b)
    units = [[ex.frac(int(i == j)) for j in range(n)] for i in range(n)]
    if nl.ambient_inner(b, rho) < 0:
        b = [-x for x in b]
        beta = tuple(-x for x in beta)
    trail = []
    while b not in units:
        for i, e in enumerate(units):
            val = nl.ambient_inner(b, e)
            if b != e and val > 0:
                trail.append(i)
                b = [x - val * y for x, y in zip(b, e)]
                break
        else:
            raise HoleError("root descent stalled")
    rho = list(rho)
    for i in reversed(trail):
        val = nl.ambient_inner(rho, units[i])
        rho = [x - val * y for x, y in zip(rho, units[i])]
    back = ex.mat_vec(list(beta), basis)
    if nl.ambient_inner(back, rho) != 1:
        raise HoleError("transported Weyl vector misses the centre")
    return beta, rho


def _centre_and_weyl(nl, fixed_by, beta):
    """Hole centre plus a Weyl vector adapted to it."""
    rho = nl.weyl_vector()
    if beta is not None:
        return _transport_weyl(nl, tuple(int(x) for x in beta), rho)
    simples = _simple_root_rows(nl)
    if fixed_by is None:
        return tuple(int(x) for x in simples[0]), rho
    mat = [list(r) for r in fixed_by.matrix]
    for cand in simples:
        if tuple(ex.mat_vec(list(cand), mat)) == cand:
            return tuple(int(x) for x in cand), rho
    for vec in ex.short_vectors(nl.lattice, 2):
        if tuple(ex.mat_vec(list(vec), mat)) == tuple(vec):
            return _transport_weyl(nl, tuple(int(x) for x in vec), rho)
    raise HoleError("no fixed root in %s" % (nl.name,))


def hole_from_niemeier(nl, fixed_by=None, beta=None):
    """Walk from a Niemeier lattice to its rootless neighbour and hole.

    The hole centre is a root: the first simple root of the Cartan
    frame, or the first fixed by `fixed_by` (an Isometry of N), with a
    fixed root outside the standard base as a fallback; `beta`
    (N-coordinates) overrides the choice.  Centres beyond the standard
    base transport the Weyl vector along a reflection walk so the
    kernel construction still sees them as simple.
    """
    lat = nl.lattice
    h = nl.h
    beta, rho = _centre_and_weyl(nl, fixed_by, beta)
    pair = []
    for brow in lat.basis:
        val = nl.ambient_inner(brow, rho)
        if val.denominator != 1:
            raise HoleError("Weyl vector pairs fractionally with %s" % (nl.name,))
        pair.append(int(val))

    col = [[p] for p in pair] + [[h]]
    kern = ex.left_kernel_int(col)
    m_rows = ex.hnf([r[:24] for r in kern])
    m_lat = ex.lattice_from_rows(m_rows, lat.gram)
    full = ex.lattice_from_rows([[int(i == j) for j in range(24)] for i in range(24)],
                                lat.gram)
    if ex.quotient_index(m_lat, full) != h:
        raise HoleError("Weyl kernel has wrong index in %s" % (nl.name,))

    # M can have bystander Niemeier overlattices besides N (e.g. four for
    # D24); the rootless one is unique in rank 24 and is the neighbour.
    overs = ex.even_unimodular_overlattices(m_lat)
    n_in_m_rows = ex.hnf_rational(ex.mat_inv([list(r) for r in m_rows]))
    n_copy = None
    rootless = []
    for cand in overs:
        if ex.hnf_rational([list(r) for r in cand.basis]) == n_in_m_rows:
            n_copy = cand
        elif not ex.short_vectors(cand, 2):
            rootless.append(cand)
    if n_copy is None:
        raise HoleError("%s is not among the overlattices of its Weyl kernel"
                        % (nl.name,))
    if len(rootless) != 1:
        raise HoleError("%s: expected one rootless neighbour, got %d"
                        % (nl.name, len(rootless)))
    leech = rootless[0]

    if lat.norm(beta) != 2:
        raise HoleError("hole centre must be a root")

    minv = ex.mat_inv([list(r) for r in m_rows])
    beta_m = tuple(ex.mat_vec(list(beta), minv))
    linv = ex.mat_inv([list(r) for r in leech.basis])
    beta_leech = tuple(ex.mat_vec(list(beta_m), linv))
    return DeepHole(nl, h, tuple(tuple(r) for r in m_rows), m_lat,
                    ex.lattice_from_rows([list(r) for r in n_in_m_rows], m_lat.gram),
                    leech, beta, beta_m, beta_leech)


def twist_on_neighbour(hole, tau):
    """Carry an isometry of N across the hole to the rootless neighbour.

    Conjugates tau (N-coordinates) through the Weyl kernel into the
    neighbour's basis; a fractional entry means tau does not stabilise
    the neighbour and raises HoleError.
    """
    t_n = [list(r) for r in tau.matrix]
    m_rows = [list(r) for r in hole.m_rows]
    t_m = ex.mat_mul(ex.mat_mul(m_rows, t_n), ex.mat_inv(m_rows))
    l_rows = [list(r) for r in hole.leech.basis]
    t_l = ex.mat_mul(ex.mat_mul(l_rows, t_m), ex.mat_inv(l_rows))
    for row in t_l:
        if any(ex.frac(x).denominator != 1 for x in row):
            raise HoleError("twist does not stabilise the rootless neighbour")
    return ex.Isometry([[int(x) for x in row] for row in t_l],
                       lattice=hole.leech)


def hole_stabiliser_index(hole):
    """Index [N : L_beta] of the hole-centre pairing sublattice of Leech."""
    leech = hole.leech
    vals = []
    for row in leech.basis:
        vals.append(sum(ex.frac(a) * b for a, b in zip(
            ex.mat_vec(list(row), [list(r) for r in hole.m_lattice.gram]),
            hole.beta_m)))
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    col = [[int(v * den)] for v in vals] + [[den]]
    kern = ex.left_kernel_int(col)
    sub_rows = ex.hnf([r[:24] for r in kern])
    rows_m = ex.mat_mul([list(r) for r in sub_rows], [list(r) for r in leech.basis])
    sub = ex.lattice_from_rows(rows_m, hole.m_lattice.gram)
    joined = ex.hnf_rational(rows_m + [list(hole.beta_m)])
    if joined != ex.hnf_rational([list(r) for r in hole.n_in_m.basis]):
        raise HoleError("hole sublattice plus its centre does not recover N")
    return ex.quotient_index(sub, hole.n_in_m)


@dataclass
class HoleComponent:
    letter: str
    rank: int
    nodes: tuple    # rows in leech-basis coordinates, affine node included
    marks: tuple

    @property
    def coxeter_number(self):
        return sum(self.marks)

    @property
    def type_name(self):
        return "%s%d" % (self.letter, self.rank)


def _primitive_kernel_marks(gram):
    n = len(gram)
    mat = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    kern = ex.left_kernel_int(ex.int_matrix(mat)[0])
    if len(kern) != 1:
        return None
    marks = list(kern[0])
    if all(m < 0 for m in marks):
        marks = [-m for m in marks]
    if any(m <= 0 for m in marks):
        return None
    return marks


def hole_diagram(leech, beta):
    """Affine components of the norm-2 shell around a deep hole centre.

    `beta` is a rational row in leech-basis coordinates.  Raises
    HoleError when the shell is not that of a deep hole.
    """
    found = ex.close_vectors(leech, list(beta), 2)
    nodes = []
    for vec, dist in found:
        if dist < 2:
            raise HoleError("centre is at distance %s from the lattice" % (dist,))
        nodes.append(tuple(ex.frac(v) - ex.frac(b) for v, b in zip(vec, beta)))
    if not nodes:
        raise HoleError("no norm-2 shell around the centre")

    n = len(nodes)
    pairs = ex.scaled_gram_product(nodes, leech.gram)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if pairs[i][j] != 0:
                parent[find(i)] = find(j)

    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)

    comps = []
    for idx in groups.values():
        sub = [[pairs[i][j] for j in idx] for i in idx]
        marks = _primitive_kernel_marks(sub)
        if marks is None:
            raise HoleError("hole component is not affine")
        drop = marks.index(1)
        finite = [k for k in range(len(idx)) if k != drop]
        fgram = [[sub[i][j] for j in finite] for i in finite]
        letter_rank = _finite_type(fgram)
        if letter_rank is None:
            raise HoleError("hole component is not simply laced")
        comps.append(HoleComponent(letter_rank[0], letter_rank[1],
                                   tuple(nodes[i] for i in idx), tuple(marks)))
    total = sum(c.rank for c in comps)
    if total != 24:
        raise HoleError("hole diagram has rank %d, want 24" % (total,))
    hs = {c.coxeter_number for c in comps}
    if len(hs) != 1:
        raise HoleError("hole components disagree on Coxeter number: %s" % (hs,))
    comps.sort(key=lambda c: (c.letter, -c.rank))
    return tuple(comps)


def _finite_type(gram):
    r = len(gram)
    probe = ex.Lattice(gram, check=False)
    base = [[int(i == j) for j in range(r)] for i in range(r)]
    cands = [("A", r)]
    if r >= 4:
        cands.append(("D", r))
    if r in (6, 7, 8):
        cands.append(("E", r))
    for letter, rank in cands:
        t = rs.template_gram(letter, rank, Fraction(1))
        if rs._arrange_to_template(probe, base, t) is not None:
            return letter, rank
    return None


def verify_deep_hole(leech, beta):
    """Certificate check that `beta` is a deep hole centre of the lattice.

    Returns (ok, certificate); the certificate lists each affine
    component with its marks and common Coxeter number, and the failure
    reason when not ok.
    """
    try:
        comps = hole_diagram(leech, beta)
    except HoleError as err:
        return False, {"reason": str(err)}
    h = comps[0].coxeter_number
    for comp in comps:
        total = [Fraction(0)] * len(beta)
        for mark, node in zip(comp.marks, comp.nodes):
            for i, x in enumerate(node):
                total[i] += mark * x
        if any(x != 0 for x in total):
            return False, {"reason": "marks do not annihilate component"}
    cert = {
        "coxeter_number": h,
        "components": tuple((c.type_name, c.marks) for c in comps),
        "node_count": sum(len(c.nodes) for c in comps),
    }
    return True, cert


# ---------------------------------------------------------------------------
# frame-shape numerology


def twisted_conformal_weight(fs):
    """Ground-state weight 1 - (1/24) sum_n a_n / n of a frame shape."""
    if isinstance(fs, str):
        fs = ex.parse_frame_shape(fs)
    total = Fraction(0)
    for n, a in fs.exponents.items():
        total += Fraction(a, n)
    return 1 - total / 24


def standard_lift_order(tau):
    """Order of the standard lift: |tau|, doubled when tau^(|tau|/2)
    has frame shape 2^12."""
    n = tau.order
    if n % 2 == 1:
        return n
    half = ex.frame_shape(tau.power(n // 2))
    if half.exponents == {2: 12}:
        return 2 * n
    return n


def twisted_module_dim(lat, tau):
    """Ground-state multiplicity sqrt(|L_tau / (1 - tau)L|)."""
    coinv = ex.coinvariant_sublattice(lat, tau)
    if coinv.rank == 0:
        return 1
    n = tau.rank
    mat = [[int(i == j) - tau.matrix[i][j] for j in range(n)] for i in range(n)]
    coords = ex.coordinates_in(coinv, mat)
    for row in coords:
        if any(x.denominator != 1 for x in row):
            raise HoleError("(1 - tau)L escapes the coinvariant lattice")
    rows = ex.hnf([[int(x) for x in row] for row in coords])
    index = 1
    for i, row in enumerate(rows):
        index *= row[i]
    root = isqrt(index)
    if root * root != index:
        raise HoleError("coinvariant index %d is not a square" % (index,))
    return root


# ---------------------------------------------------------------------------
# standard representatives of the relevant isometry classes

P0_CLASSES = ("1A", "2A", "2C", "3B", "4C", "5B", "6E", "6G", "7B", "8E", "10F")

CLASS_FRAMES = {
    "1A": {1: 24},
    "2A": {1: 8, 2: 8},
    "2C": {2: 12},
    "3B": {1: 6, 3: 6},
    "4C": {1: 4, 2: 2, 4: 4},
    "5B": {1: 4, 5: 4},
    "6E": {1: 2, 2: 2, 3: 2, 6: 2},
    "6G": {2: 3, 6: 3},
    "7B": {1: 3, 7: 3},
    "8E": {1: 2, 2: 1, 4: 1, 8: 2},
    "10F": {2: 2, 10: 2},
}

CLASS_LIFT_ORDERS = {
    "1A": 1, "2A": 2, "2C": 4, "3B": 3, "4C": 4, "5B": 5,
    "6E": 6, "6G": 12, "7B": 7, "8E": 8, "10F": 20,
}

# ambient isometry classes with fixed rank >= 4:
# (label, frame shape, fixed dimension, ground-state weight)
CONFORMAL_TABLE = (
    ("2A", "1^8 2^8", 16, Fraction(1, 2)),
    ("-2A", "2^16/1^8", 8, Fraction(1)),
    ("2C", "2^12", 12, Fraction(3, 4)),
    ("3B", "1^6 3^6", 12, Fraction(2, 3)),
    ("3C", "3^9/1^3", 6, Fraction(1)),
    ("3D", "3^8", 8, Fraction(8, 9)),
    ("-4A", "1^8 4^8/2^8", 8, Fraction(3, 4)),
    ("4C", "1^4 2^2 4^4", 10, Fraction(3, 4)),
    ("-4C", "2^6 4^4/1^4", 6, Fraction(1)),
    ("4D", "2^4 4^4", 8, Fraction(7, 8)),
    ("4F", "4^6", 6, Fraction(15, 16)),
    ("5B", "1^4 5^4", 8, Fraction(4, 5)),
    ("5C", "5^5/1^1", 4, Fraction(1)),
    ("6C", "1^4 2^1 6^5/3^4", 6, Fraction(5, 6)),
    ("-6C", "2^5 3^4 6^1/1^4", 6, Fraction(1)),
    ("-6D", "1^5 3^1 6^4/2^4", 6, Fraction(5, 6)),
    ("6E", "1^2 2^2 3^2 6^2", 8, Fraction(5, 6)),
    ("-6E", "2^4 6^4/1^2 3^2", 4, Fraction(1)),
    ("6F", "3^3 6^3/1^1 2^1", 4, Fraction(1)),
    ("6G", "2^3 6^3", 6, Fraction(11, 12)),
    ("6I", "6^4", 4, Fraction(35, 36)),
    ("7B", "1^3 7^3", 6, Fraction(6, 7)),
    ("8E", "1^2 2^1 4^1 8^2", 6, Fraction(7, 8)),
    ("10D", "1^2 2^1 10^3/5^2", 4, Fraction(9, 10)),
    ("-10D", "2^3 5^2 10^1/1^2", 4, Fraction(1)),
    ("-10E", "1^3 5^1 10^2/2^2", 4, Fraction(9, 10)),
    ("10F", "2^2 10^2", 4, Fraction(19, 20)),
    ("-12E", "1^2 3^2 4^2 12^2/2^2 6^2", 4, Fraction(11, 12)),
    ("-12H", "1^1 2^2 3^1 12^2/4^2", 4, Fraction(11, 12)),
    ("12I", "1^2 4^1 6^2 12^1/3^2", 4, Fraction(11, 12)),
    ("-12I", "2^2 3^2 4^1 12^1/1^2", 4, Fraction(1)),
    ("12J", "2^1 4^1 6^1 12^1", 4, Fraction(23, 24)),
    ("14B", "1^1 2^1 7^1 14^1", 4, Fraction(13, 14)),
    ("15D", "1^1 3^1 5^1 15^1", 4, Fraction(14, 15)),
)


def class_fixed_rank(label):
    return sum(CLASS_FRAMES[label].values())


def _first_word_of_weight(nl, predicate):
    for word in sorted(nl.glue_elements()):
        if predicate(word):
            return word
    raise CatalogError("no codeword with the requested support in %s" % (nl.name,))


@lru_cache(maxsize=None)
def representative_row(label):
    """(niemeier name, codeword) whose twist realises the class."""
    if label == "2A":
        nl = niemeier_from_spec("A1^24")
        return "A1^24", _first_word_of_weight(nl, lambda w: sum(w) == 8)
    if label == "2C":
        nl = niemeier_from_spec("A1^24")
        return "A1^24", _first_word_of_weight(nl, lambda w: sum(w) == 12)
    if label == "3B":
        nl = niemeier_from_spec("A2^12")
        return "A2^12", _first_word_of_weight(
            nl, lambda w: sum(1 for x in w if x) == 6)
    if label == "5B":
        nl = niemeier_from_spec("A4^6")
        return "A4^6", _first_word_of_weight(
            nl, lambda w: sum(1 for x in w if x) == 4)
    if label == "7B":
        nl = niemeier_from_spec("A6^4")
        return "A6^4", _first_word_of_weight(
            nl, lambda w: sum(1 for x in w if x) == 3)
    fixed = {
        "4C": ("A3^8", (3, 2, 0, 0, 1, 0, 1, 1)),
        "6E": ("A5^4D4", (0, 2, 5, 5, 1)),
        "6G": ("A5^4D4", (3, 1, 1, 1, 0)),
        "8E": ("A7^2D5^2", (3, 7, 1, 0)),
        "10F": ("A9^2D6", (7, 9, 2)),
    }
    if label not in fixed:
        raise CatalogError("no stored representative for class %s" % (label,))
    return fixed[label]


@lru_cache(maxsize=None)
def isometry_representative(label):
    """A representative of the class, acting on a Leech lattice model.

    The model is the rootless neighbour produced by the deep-hole walk;
    rank-24 uniqueness of rootless even unimodular lattices makes it a
    genuine Leech copy without an explicit isometry search.
    """
    if label not in CLASS_FRAMES:
        raise CatalogError("unknown isometry class %r" % (label,))
    if label == "1A":
        lat = leech_lattice()
        return ex.Isometry([[int(i == j) for j in range(24)] for i in range(24)],
                           lattice=lat)
    from . import classify
    name, word = representative_row(label)
    pair = classify.build_pair(name, word, label)
    hole = hole_from_niemeier(pair.niemeier, fixed_by=pair.tau)
    try:
        iso = twist_on_neighbour(hole, pair.tau)
    except HoleError as err:
        raise CatalogError(str(err))
    fs = ex.frame_shape(iso)
    if fs.exponents != CLASS_FRAMES[label]:
        raise CatalogError("representative for %s has frame shape %s"
                           % (label, fs))
    return iso
