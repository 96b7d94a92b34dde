"""Isometry pairs (N, tau) built from glue codewords.

A codeword entry picks, per root component, either a power of the cyclic
Coxeter rotation (A-type) or a node permutation of the affine diagram
(D- and E-type); the assembled block map is conjugated into lattice
coordinates and validated as an isometry preserving the glue.  From the
pair everything else is derived: fixed and coinvariant sublattices, the
scaled root system of the fixed part, and the level-graded Lie algebra
read off the folded diagrams.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
import re

from . import consab as ca
from . import exactlat as ex
from . import niemeier as nm
from . import rootsys as rs


class ClassifyError(Exception):
    pass


class GlueNotPreservedError(ClassifyError):
    """No componentwise choice maps the glue code onto itself."""


class ClassMismatchError(ClassifyError):
    """The assembled map cannot belong to the requested class."""


class InconsistentPairError(ClassifyError):
    """Derived Lie algebra data violates a pair invariant."""


class TableRegressionError(ClassifyError):
    """A recomputed table row differs from the stored one."""


def class_order(label):
    """Order of the Leech isometries in a class, read off the label."""
    m = re.fullmatch(r"(\d+)[A-Z]", label)
    if not m or label not in nm.CLASS_FRAMES:
        raise ClassifyError("unknown isometry class %r" % (label,))
    return int(m.group(1))


# ---------------------------------------------------------------------------
# codewords

def parse_word(nl, codeword):
    """Normalise a codeword against a Niemeier lattice's components.

    Strings may separate components with bars, commas or spaces and may
    abbreviate runs as digit^count; tuples are taken as-is.  Entries are
    range-checked against each component's glue group.
    """
    if isinstance(codeword, str):
        entries = []
        for m in re.finditer(r"(\d)\^(\d+)|(\d)", codeword):
            if m.group(3) is not None:
                entries.append(int(m.group(3)))
            else:
                entries.extend([int(m.group(1))] * int(m.group(2)))
        word = tuple(entries)
    else:
        word = tuple(int(x) for x in codeword)
    if len(word) != len(nl.comps):
        raise ClassifyError("codeword has %d entries, %s has %d components"
                            % (len(word), nl.name, len(nl.comps)))
    for entry, (letter, rank) in zip(word, nl.comps):
        if not 0 <= entry < nm.label_count(letter, rank):
            raise ClassifyError("entry %d out of range for %s%d"
                                % (entry, letter, rank))
    return word


def format_word(nl, word):
    """Digit string with bars between distinct component types."""
    out = []
    prev = None
    for entry, comp in zip(word, nl.comps):
        if prev is not None and comp != prev:
            out.append("|")
        out.append(str(entry))
        prev = comp
    return "".join(out)


# ---------------------------------------------------------------------------
# affine diagram permutations

def _affine_gram(letter, rank):
    gram = rs.template_gram(letter, rank)
    marks = rs.affine_marks(letter, rank)[1:]
    n = rank + 1
    aff = [[Fraction(0)] * n for _ in range(n)]
    for i in range(rank):
        for j in range(rank):
            aff[i + 1][j + 1] = gram[i][j]
    # node 0 carries -theta
    for j in range(rank):
        val = -sum(marks[i] * gram[i][j] for i in range(rank))
        aff[0][j + 1] = val
        aff[j + 1][0] = val
    aff[0][0] = sum(marks[i] * marks[j] * gram[i][j]
                    for i in range(rank) for j in range(rank))
    return aff


def _check_perm(letter, rank, sigma):
    aff = _affine_gram(letter, rank)
    n = rank + 1
    if sorted(sigma) != list(range(n)):
        raise ClassifyError("not a permutation of the affine nodes")
    for i in range(n):
        for j in range(n):
            if aff[sigma[i]][sigma[j]] != aff[i][j]:
                raise ClassifyError(
                    "%s%d node map %s breaks the affine diagram"
                    % (letter, rank, sigma))
    return sigma


@lru_cache(maxsize=None)
def _weight_label(letter, rank, node):
    """Glue label of the fundamental weight at a finite diagram node."""
    gram = [list(r) for r in rs.template_gram(letter, rank)]
    weight = ex.mat_inv(gram)[node - 1]
    for lab in range(nm.label_count(letter, rank)):
        ref = nm.label_vector(letter, rank, lab)
        if all((ex.frac(a) - ex.frac(b)).denominator == 1
               for a, b in zip(weight, ref)):
            return lab
    raise ClassifyError("node %d of %s%d carries no glue label"
                        % (node, letter, rank))


@lru_cache(maxsize=None)
def _special_rotations(letter, rank):
    """Special-node rotations of the affine diagram, keyed by glue label.

    Every nonzero glue class owns one automorphism carrying the affine
    node to the special node whose weight represents the class: the two
    leaf swaps for a vector label of D, the long flips for spinor
    labels (order 2 for even rank, 4 for odd), the two rotations of E6
    and the flip of E7.  All of them act trivially on the discriminant
    group, so stabilising the overlattice is decided by the codeword
    alone, not by this choice.
    """
    n = rank
    cands = []
    if letter == "D":
        swap = list(range(n + 1))
        swap[0], swap[1] = 1, 0
        swap[n - 1], swap[n] = n, n - 1
        cands.append(tuple(swap))
        if rank == 4:
            cands += [(3, 4, 2, 0, 1), (4, 3, 2, 1, 0)]
        elif n % 2 == 0:
            base = {0: n - 1, n - 1: 0, 1: n, n: 1}
            alt = {0: n, n: 0, 1: n - 1, n - 1: 1}
            for ends in (base, alt):
                sig = list(range(n + 1))
                for k, v in ends.items():
                    sig[k] = v
                for j in range(2, n - 1):
                    sig[j] = n - j
                cands.append(tuple(sig))
        else:
            sig = list(range(n + 1))
            sig[0], sig[n - 1], sig[1], sig[n] = n - 1, 1, n, 0
            for j in range(2, n - 1):
                sig[j] = n - j
            fwd = tuple(sig)
            inv = [0] * (n + 1)
            for i, v in enumerate(fwd):
                inv[v] = i
            cands += [fwd, tuple(inv)]
    elif letter == "E" and rank == 6:
        rot = (1, 6, 3, 5, 4, 2, 0)
        inv = [0] * 7
        for i, v in enumerate(rot):
            inv[v] = i
        cands += [rot, tuple(inv)]
    elif letter == "E" and rank == 7:
        cands.append((7, 6, 2, 5, 4, 3, 1, 0))
    else:
        return {}
    table = {}
    for sig in cands:
        _check_perm(letter, rank, sig)
        table[_weight_label(letter, rank, sig[0])] = sig
    return table


@lru_cache(maxsize=None)
def _perm_matrix(letter, rank, sigma):
    """Block matrix of a diagram automorphism on the component lattice."""
    marks = rs.affine_marks(letter, rank)[1:]
    rows = []
    for i in range(rank):
        img = sigma[i + 1]
        if img >= 1:
            rows.append(tuple(int(j == img - 1) for j in range(rank)))
        else:
            rows.append(tuple(-int(m) for m in marks))
    gram = rs.template_gram(letter, rank)
    got = ex.mat_mul(ex.mat_mul([list(r) for r in rows],
                                [list(g) for g in gram]),
                     [list(r) for r in zip(*rows)])
    if [list(r) for r in got] != [list(g) for g in gram]:
        raise ClassifyError("%s%d fold is not an isometry" % (letter, rank))
    return tuple(rows)


def _orbits(sigma):
    seen = set()
    orbs = []
    for i in range(len(sigma)):
        if i in seen:
            continue
        orb = [i]
        seen.add(i)
        j = sigma[i]
        while j != i:
            orb.append(j)
            seen.add(j)
            j = sigma[j]
        orbs.append(tuple(orb))
    return tuple(orbs)


@lru_cache(maxsize=None)
def _fold_info(letter, rank, sigma):
    comp = rs.RootComponent(letter, rank, Fraction(1), [], [])
    diagram = rs.AffineDiagram(comp, [], rs.affine_marks(letter, rank))
    return rs.fold_affine_diagram(diagram, _orbits(sigma))


@lru_cache(maxsize=None)
def _disc_action(letter, rank, matrix):
    """Permutation induced on the glue labels of one component."""
    count = nm.label_count(letter, rank)
    images = []
    for lab in range(count):
        vec = list(nm.label_vector(letter, rank, lab))
        img = ex.mat_vec(vec, [list(r) for r in matrix])
        for lab2 in range(count):
            ref = nm.label_vector(letter, rank, lab2)
            if all((ex.frac(a) - ex.frac(b)).denominator == 1
                   for a, b in zip(img, ref)):
                images.append(lab2)
                break
        else:
            raise ClassifyError("label image escapes the glue group")
    if sorted(images) != list(range(count)):
        raise ClassifyError("glue labels are not permuted")
    return tuple(images)


@lru_cache(maxsize=None)
def _coinvariant_types(letter, rank, matrix):
    """Norm-2 root decomposition of the block coinvariant sublattice."""
    lat = ex.Lattice(rs.template_gram(letter, rank))
    iso = ex.Isometry([list(r) for r in matrix], lattice=lat)
    coinv = ex.coinvariant_sublattice(lat, iso)
    if coinv.rank == 0:
        return ()
    datum = rs.decompose_norm2_roots(coinv)
    counts = {}
    for c in datum.components:
        key = (c.letter, c.rank)
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


@lru_cache(maxsize=None)
def _fixed_types(letter, rank, matrix):
    """Folded root system of the block action, as a scaled multiset.

    The tables record nonzero orbit sums of the component roots, not
    every eligible root of the fixed sublattice: glue vectors and deep
    shells of the fixed lattice would otherwise enlarge the system.
    """
    lat = ex.Lattice(rs.template_gram(letter, rank))
    mat = [list(r) for r in matrix]
    sums = set()
    seen = set()
    for v in ex.short_vectors(lat, 2):
        start = tuple(v)
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        cur = start
        while True:
            cur = tuple(ex.mat_vec(list(cur), mat))
            if cur == start:
                break
            orbit.append(cur)
            seen.add(cur)
        s = tuple(sum(col) for col in zip(*orbit))
        g = 0
        for x in s:
            g = gcd(g, x)
        # imprimitive sums are doubled fixed vectors, not folded roots
        if g == 1:
            sums.add(s)
    if not sums:
        return ()
    datum = rs.decompose_root_vectors(lat, sorted(sums))
    counts = {}
    for c in datum.components:
        key = _canon_scaled(c.letter, c.rank, c.scale)
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


@dataclass(frozen=True)
class _Action:
    """One component's share of the assembled isometry."""
    letter: str
    rank: int
    entry: int
    matrix: tuple
    frame: tuple            # ((n, exponent), ...) on the component
    quotient: tuple         # folded type feeding V1, or None
    disc: tuple             # label permutation

    @property
    def acted(self):
        return any(n != 1 for n, _ in self.frame)

    def coinvariant_types(self):
        return _coinvariant_types(self.letter, self.rank, self.matrix)

    def fixed_types(self):
        if not self.acted:
            return (((self.letter, self.rank, Fraction(1)), 1),)
        return _fixed_types(self.letter, self.rank, self.matrix)


def _identity_action(letter, rank, entry=0):
    ident = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    return _Action(letter, rank, entry, ident, ((1, rank),), (letter, rank),
                   tuple(range(nm.label_count(letter, rank))))


@lru_cache(maxsize=None)
def _rotation_action(rank, entry):
    k = rank + 1
    block = ca.coxeter_block(k)
    mat = [[int(i == j) for j in range(rank)] for i in range(rank)]
    for _ in range(entry):
        mat = ex.mat_mul(mat, [list(r) for r in block])
    matrix = tuple(tuple(int(x) for x in row) for row in mat)
    d = gcd(entry, k)
    step = k // d
    frame = ((step, d), (1, -1)) if step > 1 else ((1, rank),)
    quotient = ("A", d - 1) if step > 1 and d > 1 else None
    if step == 1:
        quotient = ("A", rank)
    return _Action("A", rank, entry, matrix, frame, quotient,
                   _disc_action("A", rank, matrix))


def _component_action(letter, rank, entry):
    """The componentwise map a codeword entry names."""
    if letter == "A":
        return _rotation_action(rank, entry)
    if entry == 0:
        return _identity_action(letter, rank)
    table = _special_rotations(letter, rank)
    if entry not in table:
        raise ClassifyError("no diagram action for label %d on %s%d"
                            % (entry, letter, rank))
    sigma = table[entry]
    matrix = _perm_matrix(letter, rank, sigma)
    info = _fold_info(letter, rank, sigma)
    return _Action(letter, rank, entry, matrix, tuple(info.frame),
                   info.quotient, _disc_action(letter, rank, matrix))


# ---------------------------------------------------------------------------
# pair assembly

@dataclass
class PairContext:
    """A Niemeier lattice with a glue-preserving componentwise isometry."""
    niemeier_name: str
    class_label: str
    word: tuple
    niemeier: object = field(repr=False)
    tau: object = field(repr=False)
    ell: int
    h: int
    fixed_part: object = field(repr=False)
    coinvariant_part: object = field(repr=False)
    hole_root: tuple
    fixed_system: tuple = field(repr=False)
    actions: tuple = field(repr=False)
    frame_matches_class: bool
    _v1: object = field(default=None, repr=False)

    @property
    def codeword(self):
        return format_word(self.niemeier, self.word)



def build_pair(name, codeword, class_label):
    """Assemble the isometry a codeword describes and wrap it in a context.

    A-type entries are Coxeter rotation powers; D- and E-type entries
    pick the special-node rotation whose weight class equals the entry,
    so the map is determined by the codeword.  The blockwise map must
    stabilise the overlattice, else GlueNotPreservedError; a frame
    shape with a negative exponent admits no fixed-point-free lift and
    raises ClassMismatchError.
    """
    order = class_order(class_label)
    nl = nm.niemeier_from_spec(name)
    word = parse_word(nl, codeword)
    combo = tuple(_component_action(letter, rank, entry)
                  for (letter, rank), entry in zip(nl.comps, word))
    target = nm.CLASS_FRAMES[class_label]

    block = [[0] * 24 for _ in range(24)]
    for act, off in zip(combo, nl.offsets):
        for i in range(act.rank):
            for j in range(act.rank):
                block[off + i][off + j] = act.matrix[i][j]
    basis = [list(r) for r in nl.lattice.basis]
    mat = ex.mat_mul(ex.mat_mul(basis, block), ex.mat_inv(basis))
    for row in mat:
        if any(ex.frac(x).denominator != 1 for x in row):
            raise GlueNotPreservedError(
                "%s does not stabilise %s" % (format_word(nl, word), name))
    tau = ex.Isometry([[int(x) for x in row] for row in mat],
                      lattice=nl.lattice)
    fs = tau.frame_shape
    if any(e < 0 for e in fs.exponents.values()):
        raise ClassMismatchError(
            "frame shape %s has a negative exponent; not in class %s"
            % (fs, class_label))

    fixed = ex.fixed_sublattice(nl.lattice, tau)
    coinv = ex.coinvariant_sublattice(nl.lattice, tau)
    if fixed.rank + coinv.rank != 24:
        raise ClassifyError("fixed and coinvariant ranks sum to %d"
                            % (fixed.rank + coinv.rank))

    hole_root = None
    tmat = [list(r) for r in tau.matrix]
    for simple in nm._simple_root_rows(nl):
        if tuple(ex.mat_vec(list(simple), tmat)) == simple:
            hole_root = simple
            break

    fixed_counts = {}
    for act in combo:
        for key, mult in act.fixed_types():
            fixed_counts[key] = fixed_counts.get(key, 0) + mult
    return PairContext(
        niemeier_name=nl.name, class_label=class_label, word=word,
        niemeier=nl, tau=tau, ell=nm.CLASS_LIFT_ORDERS[class_label],
        h=nl.h, fixed_part=fixed, coinvariant_part=coinv,
        hole_root=hole_root, fixed_system=tuple(sorted(fixed_counts.items())),
        actions=combo,
        frame_matches_class=(fs.exponents == target and tau.order == order))


# ---------------------------------------------------------------------------
# derived columns

@dataclass(frozen=True)
class LieAlgebraSpec:
    """Semisimple algebra with one level per simple component."""
    components: tuple       # ((letter, rank, level), ...) with repetition
    total_rank: int
    total_dim: int
    ratio: Fraction         # common h_dual / level

    def symbol(self):
        counts = {}
        for key in self.components:
            counts[key] = counts.get(key, 0) + 1
        parts = []
        for (letter, rank, level) in sorted(
                counts, key=lambda k: (-k[1], k[0], k[2])):
            mult = counts[(letter, rank, level)]
            txt = "%s%d,%d" % (letter, rank, level)
            parts.append(txt if mult == 1 else "%s^%d" % (txt, mult))
        return " ".join(parts)


def lie_algebra_v1(ctx):
    """Level-graded algebra of the pair, from the folded diagrams.

    Untouched components keep their type at level ell * h_dual / h;
    folded ones contribute the quotient diagram's type.  Levels must be
    integers, all h_dual / level ratios must agree, and rank and
    dimension identities are enforced; violations raise
    InconsistentPairError.
    """
    if ctx._v1 is not None:
        return ctx._v1
    comps = []
    for act in ctx.actions:
        if act.quotient is None:
            continue
        letter, rank = act.quotient
        level = Fraction(ctx.ell * rs.coxeter_data(letter, rank).h_dual,
                         ctx.h)
        if level.denominator != 1:
            raise InconsistentPairError(
                "level %s of %s%d is not an integer" % (level, letter, rank))
        # B2/C2 and C1/A1 folds have equal h_dual and dimension
        comps.append(_canon_level(letter, rank, int(level)))
    ratios = {Fraction(rs.coxeter_data(l, r).h_dual, k) for l, r, k in comps}
    if len(ratios) > 1:
        raise InconsistentPairError("h_dual / level differs across components")
    ratio = ratios.pop() if ratios else Fraction(0)
    rank = sum(r for _, r, _ in comps)
    if rank != ctx.fixed_part.rank:
        raise InconsistentPairError(
            "V1 rank %d differs from the fixed part rank %d"
            % (rank, ctx.fixed_part.rank))
    dim = sum(rs.coxeter_data(l, r).dim for l, r, _ in comps)
    if Fraction(dim) != 24 + 24 * ratio:
        raise InconsistentPairError(
            "V1 dimension %d is not 24 + 24 h_dual/level" % (dim,))
    ctx._v1 = LieAlgebraSpec(tuple(sorted(comps)), rank, dim, ratio)
    return ctx._v1


def fixed_root_data(ctx):
    """Componentwise scaled root system of the fixed part,
    as a sorted ((letter, rank, scale), multiplicity) tuple."""
    return ctx.fixed_system


def embedding_groups(ctx):
    """How the coinvariant part meets the components, one group per acted
    component: (coinvariant type multiset, host type) -> multiplicity."""
    groups = {}
    for act in ctx.actions:
        if not act.acted:
            continue
        key = (act.coinvariant_types(), (act.letter, act.rank))
        groups[key] = groups.get(key, 0) + 1
    return groups


def format_embedding(groups):
    parts = []
    for (coinv, (letter, rank)), mult in sorted(
            groups.items(), key=lambda kv: (-kv[0][1][1], kv[0][1][0], kv[0][0])):
        inner = []
        for (l, r), m in coinv:
            inner.append("%s%d" % (l, r) if m == 1 else "%s%d^%d" % (l, r, m))
        body = " ".join(inner)
        if len(coinv) == 1 and coinv[0][1] == 1:
            left = body if mult == 1 else "%s^%d" % (body, mult)
        else:
            left = "(%s)" % body if mult == 1 else "(%s)^%d" % (body, mult)
        host = "%s%d" % (letter, rank)
        if mult > 1:
            host = "%s^%d" % (host, mult)
        parts.append("%s>%s" % (left, host))
    return "+".join(parts)


# ---------------------------------------------------------------------------
# conditions

def check_conditions(ctx):
    """The three class conditions for a built pair.

    C1: a tau-invariant deep hole exists (the hole walk succeeds with a
        tau-fixed centre, the certificate verifies, and tau descends to
        the rootless neighbour).
    C2: the class order divides the Coxeter number.
    C3: the coinvariant lattice is isometric to the class's code model.
    """
    report = {}

    order = class_order(ctx.class_label)
    report["C2"] = {"holds": ctx.h % order == 0,
                    "detail": "order %d vs Coxeter number %d" % (order, ctx.h)}

    report["C3"] = _check_coinvariant(ctx)

    try:
        hole = nm.hole_from_niemeier(ctx.niemeier, fixed_by=ctx.tau)
    except nm.HoleError as err:
        report["C1"] = {"holds": False, "detail": str(err)}
        return report
    tmat = [list(r) for r in ctx.tau.matrix]
    fixed = tuple(ex.mat_vec(list(hole.beta_n), tmat)) == hole.beta_n
    ok, cert = nm.verify_deep_hole(hole.leech, hole.beta_leech)
    try:
        nm.twist_on_neighbour(hole, ctx.tau)
        descends = True
    except nm.HoleError:
        descends = False
    report["C1"] = {
        "holds": fixed and ok and descends,
        "detail": "centre fixed: %s, certificate: %s, descends: %s"
                  % (fixed, cert if not ok else "ok", descends)}
    return report


@lru_cache(maxsize=None)
def _coinvariant_overlattice(label):
    """Index-|tau| overlattice of the class coinvariant model.

    The coinvariant part of a pair is an overlattice of the rescaled
    class lattice, with index the class order, and equals the code
    lattice L_A on the class moduli.
    """
    moduli, word, _ = ca.COINVARIANT_TABLE[label]
    return ca.construction_a(moduli, ca.GlueCode(moduli, (word,)))


def _check_coinvariant(ctx):
    coinv = ctx.coinvariant_part
    label = ctx.class_label
    if label == "1A":
        return {"holds": coinv.rank == 0, "detail": "trivial coinvariant"}
    model = _coinvariant_overlattice(label)
    if coinv.rank != model.rank:
        return {"holds": False,
                "detail": "rank %d vs model rank %d" % (coinv.rank, model.rank)}
    if coinv.det != model.det:
        return {"holds": False,
                "detail": "determinant %s vs model %s" % (coinv.det, model.det)}
    if (ex.discriminant_group(coinv).invariant_factors
            != ex.discriminant_group(model).invariant_factors):
        return {"holds": False, "detail": "discriminant groups differ"}
    iso = ex.is_isometric(coinv, model)
    return {"holds": iso is not None,
            "detail": "isometric to the %s code lattice" % (label,)
                      if iso else "no isometry onto the %s model" % (label,)}


# ---------------------------------------------------------------------------
# fingerprints

def fingerprint(ctx):
    """Conjugacy-invariant data of a pair, comparable across contexts."""
    coinv = ctx.coinvariant_part
    try:
        v1_part = tuple(sorted(_level_multiset(lie_algebra_v1(ctx)).items()))
    except InconsistentPairError:
        v1_part = "inconsistent"
    roots = len(ex.short_vectors(coinv, 2)) if coinv.rank else 0
    return (ctx.niemeier_name,
            str(ctx.tau.frame_shape),
            (coinv.rank, coinv.det,
             tuple(ex.discriminant_group(coinv).invariant_factors), roots),
            ctx.fixed_system,
            v1_part)


def pair_invariants(ctx1, ctx2):
    """Fingerprints of two pairs and whether they agree."""
    f1, f2 = fingerprint(ctx1), fingerprint(ctx2)
    return f1, f2, f1 == f2


# ---------------------------------------------------------------------------
# the stored tables

def _canon_scaled(letter, rank, scale):
    scale = ex.frac(scale)
    if letter == "B" and rank == 2:
        return ("C", 2, scale / 2)
    if letter == "C" and rank == 1:
        return ("A", 1, scale)
    return (letter, rank, scale)


def _canon_level(letter, rank, level):
    if letter == "B" and rank == 2:
        return ("C", 2, level)
    if letter == "C" and rank == 1:
        return ("A", 1, level)
    return (letter, rank, level)


_TOKEN = re.compile(r"(?:r(\d+))?([A-G])(\d+)(?:\^(\d+))?$")


def _parse_scaled(text):
    """Multiset of (letter, rank, scale) from 'A3^4 r2A1^4' style text."""
    out = {}
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ClassifyError("bad type token %r" % (tok,))
        rel = int(m.group(1) or 1)
        letter, rank = m.group(2), int(m.group(3))
        mult = int(m.group(4) or 1)
        scale = Fraction(2 * rel if letter == "B" else rel)
        key = _canon_scaled(letter, rank, scale)
        out[key] = out.get(key, 0) + mult
    return tuple(sorted(out.items()))


_LEVEL = re.compile(r"([A-G])(\d+),(\d+)(?:\^(\d+))?$")


def _parse_levels(text):
    """Multiset of (letter, rank, level) from 'A3,2^4 A1,1^4' style text."""
    out = {}
    for tok in text.split():
        m = _LEVEL.match(tok)
        if not m:
            raise ClassifyError("bad level token %r" % (tok,))
        key = _canon_level(m.group(1), int(m.group(2)), int(m.group(3)))
        out[key] = out.get(key, 0) + int(m.group(4) or 1)
    return tuple(sorted(out.items()))


def _parse_embedding(text):
    """Groups of 'coinvariant>host' joined by '+'."""
    groups = {}
    for part in text.split("+"):
        left, right = part.split(">")
        m = re.match(r"\((.*)\)(?:\^(\d+))?$", left)
        if m:
            body, mult = m.group(1), int(m.group(2) or 1)
        else:
            m = _TOKEN.match(left)
            body = "%s%s" % (m.group(2), m.group(3))
            mult = int(m.group(4) or 1)
        coinv = {}
        for tok in body.split():
            t = _TOKEN.match(tok)
            key = (t.group(2), int(t.group(3)))
            coinv[key] = coinv.get(key, 0) + int(t.group(4) or 1)
        host = _TOKEN.match(right)
        hmult = int(host.group(4) or 1)
        if hmult % mult:
            raise ClassifyError("host multiplicity mismatch in %r" % (part,))
        key = (tuple(sorted(coinv.items())),
               (host.group(2), int(host.group(3))))
        groups[key] = groups.get(key, 0) + hmult
    return groups


# Stored classification of fixed-point-free pairs: class, lattice,
# codeword, embedded coinvariant roots, scaled fixed root system, V1.
TABLE_ROWS = (
    ("2A", "A1^24", (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1),
     "A1^8>A1^8", "A1^16", "A1,2^16"),
    ("2A", "A3^8", (0, 0, 0, 2, 2, 2, 0, 2),
     "(A1^2)^4>A3^4", "A3^4 r2A1^4", "A3,2^4 A1,1^4"),
    ("2A", "D4^6", (0, 0, 1, 1, 1, 1),
     "(A1^2)^4>D4^4", "D4^2 C2^4", "D4,2^2 C2,1^4"),
    ("2A", "A5^4D4", (3, 3, 0, 0, 1),
     "(A1^3)^2>A5^2+(A1^2)>D4", "A5^2 C2 r2A2^2", "A5,2^2 C2,1 A2,1^2"),
    ("2A", "A7^2D5^2", (4, 4, 0, 0),
     "(A1^4)^2>A7^2", "D5^2 r2A3^2", "D5,2^2 A3,1^2"),
    ("2A", "A7^2D5^2", (4, 0, 2, 2),
     "(A1^4)>A7+(A1^2)^2>D5^2", "A7 C3^2 r2A3", "A7,2 C3,1^2 A3,1"),
    ("2A", "D6^4", (2, 2, 2, 2),
     "(A1^2)^4>D6^4", "C4^4", "C4,1^4"),
    ("2A", "D6^4", (0, 1, 2, 3),
     "(A1^2)>D6+(A1^3)^2>D6^2", "D6 C4 B3^2", "D6,2 C4,1 B3,1^2"),
    ("2A", "A9^2D6", (0, 5, 3),
     "(A1^5)>A9+(A1^3)>D6", "A9 r2A4 B3", "A9,2 A4,1 B3,1"),
    ("2A", "A11D7E6", (6, 2, 0),
     "(A1^6)>A11+(A1^2)>D7", "E6 C5 r2A5", "E6,2 C5,1 A5,1"),
    ("2A", "D8^3", (0, 3, 3),
     "(A1^4)^2>D8^2", "D8 B4^2", "D8,2 B4,1^2"),
    ("2A", "D8^3", (2, 2, 1),
     "(A1^2)^2>D8^2+(A1^4)>D8", "C6^2 B4", "C6,1^2 B4,1"),
    ("2A", "A15D9", (8, 0),
     "(A1^8)>A15", "D9 r2A7", "D9,2 A7,1"),
    ("2A", "E7^2D10", (1, 1, 2),
     "(A1^3)^2>E7^2+(A1^2)>D10", "C8 F4^2", "C8,1 F4,1^2"),
    ("2A", "E7^2D10", (1, 0, 1),
     "(A1^3)>E7+(A1^5)>D10", "E7 B5 F4", "E7,2 B5,1 F4,1"),
    ("2A", "D12^2", (2, 1),
     "(A1^2)>D12+(A1^6)>D12", "C10 B6", "C10,1 B6,1"),
    ("2A", "E8D16", (0, 1),
     "(A1^8)>D16", "B8 E8", "B8,1 E8,2"),
    ("3B", "A2^12", (0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 1, 0),
     "A2^6>A2^6", "A2^6", "A2,3^6"),
    ("3B", "A5^4D4", (0, 2, 2, 2, 0),
     "(A2^2)^3>A5^3", "A5 D4 r3A1^3", "A5,3 D4,3 A1,1^3"),
    ("3B", "A8^3", (6, 3, 0),
     "(A2^3)^2>A8^2", "A8 r3A2^2", "A8,3 A2,1^2"),
    ("3B", "E6^4", (0, 1, 1, 1),
     "(A2^2)^3>E6^3", "E6 G2^3", "E6,3 G2,1^3"),
    ("3B", "A11D7E6", (4, 0, 1),
     "(A2^4)>A11+(A2^2)>E6", "D7 r3A3 G2", "D7,3 A3,1 G2,1"),
    ("3B", "A17E7", (6, 0),
     "(A2^6)>A17", "E7 r3A5", "E7,3 A5,1"),
    ("5B", "A4^6", (0, 0, 1, 2, 3, 4),
     "A4^4>A4^4", "A4^2", "A4,5^2"),
    ("5B", "A9^2D6", (2, 4, 0),
     "(A4^2)^2>A9^2", "D6 r5A1^2", "D6,5 A1,1^2"),
    ("7B", "A6^4", (0, 1, 2, 4),
     "A6^3>A6^3", "A6", "A6,7"),
    ("2C", "A1^24", (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0),
     "A1^12>A1^12", "A1^12", "A1,4^12"),
    ("2C", "D4^6", (1, 1, 2, 2, 3, 3),
     "(A1^2)^6>D4^6", "C2^6", "C2,2^6"),
    ("2C", "D6^4", (1, 1, 1, 1),
     "(A1^3)^4>D6^4", "B3^4", "B3,2^4"),
    ("2C", "D8^3", (1, 1, 1),
     "(A1^4)^3>D8^3", "B4^3", "B4,2^3"),
    ("2C", "D12^2", (3, 3),
     "(A1^6)^2>D12^2", "B6^2", "B6,2^2"),
    ("2C", "D24", (1,),
     "(A1^12)>D24", "B12", "B12,2"),
    ("2C", "A5^4D4", (3, 3, 3, 3, 0),
     "(A1^3)^4>A5^4", "D4 r2A2^4", "D4,4 A2,2^4"),
    ("2C", "A9^2D6", (5, 5, 2),
     "(A1^5)^2>A9^2+(A1^2)>D6", "C4 r2A4^2", "C4,2 A4,2^2"),
    ("2C", "A17E7", (9, 1),
     "(A1^9)>A17+(A1^3)>E7", "F4 r2A8", "A8,2 F4,2"),
    ("4C", "A3^8", (3, 2, 0, 0, 1, 0, 1, 1),
     "A3^4>A3^4+(A1^2)>A3", "A3^3 r2A1", "A3,4^3 A1,2"),
    ("4C", "A7^2D5^2", (2, 0, 3, 3),
     "(A3^2)>A7+(A3 A1)^2>D5^2", "A7 r4A1 A1^2", "A7,4 A1,1^3"),
    ("4C", "A7^2D5^2", (2, 2, 2, 0),
     "(A3^2)^2>A7^2+(A1^2)>D5", "D5 C3 r4A1^2", "D5,4 C3,2 A1,1^2"),
    ("4C", "A11D7E6", (3, 3, 0),
     "(A3^3)>A11+(A3 A1^2)>D7", "E6 C2 r4A2", "E6,4 C2,1 A2,1"),
    ("4C", "A15D9", (4, 2),
     "(A3^4)>A15+(A1^2)>D9", "C7 r4A3", "C7,2 A3,1"),
    ("6E", "A5^4D4", (0, 2, 5, 5, 1),
     "A5^2>A5^2+(A2^2)>A5+(A1^2)>D4", "A5 C2 r3A1", "A5,6 C2,3 A1,2"),
    ("6E", "A11D7E6", (2, 2, 2),
     "(A5^2)>A11+(A1^2)>D7+(A2^2)>E6", "C5 G2 r6A1", "C5,3 G2,2 A1,1"),
    ("8E", "A7^2D5^2", (3, 7, 1, 0),
     "A7^2>A7^2+(A3 A1)>D5", "D5 A1", "D5,8 A1,2"),
    ("6G", "A5^4D4", (3, 1, 1, 1, 0),
     "A5^3>A5^3+(A1^3)>A5", "D4 r2A2", "D4,12 A2,6"),
    ("6G", "A17E7", (3, 1),
     "(A5^3)>A17+(A1^3)>E7", "F4 r6A2", "F4,6 A2,2"),
    ("10F", "A9^2D6", (7, 9, 2),
     "A9^2>A9^2+(A1^2)>D6", "C4", "C4,10"),
)


@dataclass
class TableRow:
    """One recomputed classification row."""
    class_label: str
    niemeier_name: str
    codeword: str
    embedding: str
    fixed_symbol: str
    v1_symbol: str
    context: object = field(repr=False, default=None)


def format_fixed(multiset):
    """Scaled-type text in the tables' style, e.g. 'A3^4 r2A1^4'."""
    parts = []
    for (letter, rank, scale), mult in sorted(
            multiset, key=lambda km: (-km[0][1], km[0][0], km[0][2])):
        rel = scale / 2 if letter == "B" else scale
        txt = "%s%d" % (letter, rank)
        if rel != 1:
            txt = "r%s%s" % (rel, txt)
        parts.append(txt if mult == 1 else "%s^%d" % (txt, mult))
    return " ".join(parts)


def _level_multiset(spec):
    out = {}
    for l, r, k in spec.components:
        key = _canon_level(l, r, k)
        out[key] = out.get(key, 0) + 1
    return out


def _recompute_row(index, row):
    label, name, word, emb_text, fixed_text, v1_text = row
    ctx = build_pair(name, word, label)
    where = "row %d (%s %s %s)" % (index, label, name, ctx.codeword)
    if not ctx.frame_matches_class:
        raise TableRegressionError(
            "%s: frame shape %s is not the class frame"
            % (where, ctx.tau.frame_shape))
    if ctx.hole_root is None:
        raise TableRegressionError("%s: no fixed simple root" % (where,))

    groups = embedding_groups(ctx)
    want = _parse_embedding(emb_text)
    if groups != want:
        raise TableRegressionError(
            "%s: embedding %s, expected %s"
            % (where, format_embedding(groups), emb_text))

    got_fixed = ctx.fixed_system
    if got_fixed != _parse_scaled(fixed_text):
        raise TableRegressionError(
            "%s: fixed roots %s, expected %s"
            % (where, format_fixed(got_fixed), fixed_text))

    v1 = lie_algebra_v1(ctx)
    got_v1 = tuple(sorted(_level_multiset(v1).items()))
    if got_v1 != _parse_levels(v1_text):
        raise TableRegressionError(
            "%s: V1 %s, expected %s" % (where, v1.symbol(), v1_text))

    return TableRow(label, name, ctx.codeword, format_embedding(groups),
                    format_fixed(got_fixed), v1.symbol(), ctx)


def reproduce_tables(threads=None):
    """Rebuild every stored classification row and cross-check it.

    Each row is recomputed from (lattice, codeword, class) alone; any
    disagreement with the stored columns raises TableRegressionError
    naming the row.  Returns the rows in table order.
    """
    if threads and threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_recompute_row, i, row)
                       for i, row in enumerate(TABLE_ROWS)]
            return [f.result() for f in futures]
    return [_recompute_row(i, row) for i, row in enumerate(TABLE_ROWS)]
