"""Root systems of even lattices: recognition, bases, affine diagrams, folding.

Roots of an even lattice K are the primitive v with 2<v,K>/<v,v> in Z.  A
component with short-root norm alpha is reported as the scaled type
(letter, rank, alpha): for A/D/E all roots have norm 2*alpha; for B the
short roots have norm alpha; for C and F4 the short roots have norm
2*alpha; for G2 the short roots have norm 2*alpha and the long 6*alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import exactlat as ex

F = Fraction


class RecognitionError(ex.LatticeError):
    pass


class UnsupportedFoldingError(ex.LatticeError):
    pass


class MixedCoxeterError(ex.LatticeError):
    pass


# ---------------------------------------------------------------------------
# Coxeter data

_DIMS = {
    "A": lambda n: n * (n + 2),
    "B": lambda n: n * (2 * n + 1),
    "C": lambda n: n * (2 * n + 1),
    "D": lambda n: n * (2 * n - 1),
    "E": {6: 78, 7: 133, 8: 248},
    "F": {4: 52},
    "G": {2: 14},
}

_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": {6: 72, 7: 126, 8: 240},
    "F": {4: 48},
    "G": {2: 12},
}


@dataclass(frozen=True)
class CoxeterData:
    letter: str
    rank: int
    h: int
    h_dual: int
    lace: int
    dim: int


def coxeter_data(letter, rank):
    if letter == "A":
        return CoxeterData("A", rank, rank + 1, rank + 1, 1, rank * (rank + 2))
    if letter == "B":
        return CoxeterData("B", rank, 2 * rank, 2 * rank - 1, 2, rank * (2 * rank + 1))
    if letter == "C":
        return CoxeterData("C", rank, 2 * rank, rank + 1, 2, rank * (2 * rank + 1))
    if letter == "D":
        return CoxeterData("D", rank, 2 * rank - 2, 2 * rank - 2, 1, rank * (2 * rank - 1))
    if letter == "E" and rank in (6, 7, 8):
        return CoxeterData("E", rank, {6: 12, 7: 18, 8: 30}[rank],
                           {6: 12, 7: 18, 8: 30}[rank], 1, _DIMS["E"][rank])
    if letter == "F" and rank == 4:
        return CoxeterData("F", 4, 12, 9, 2, 52)
    if letter == "G" and rank == 2:
        return CoxeterData("G", 2, 6, 4, 3, 14)
    raise RecognitionError(f"unknown type {letter}{rank}")


def root_count(letter, rank):
    rc = _ROOT_COUNTS[letter]
    return rc(rank) if callable(rc) else rc[rank]


def template_gram(letter, rank, alpha=F(1)):
    """Gram matrix of the canonical simple-root ordering of a scaled type.

    Orderings: A_n a path 1..n; D_n a path 1..n-1 with node n attached to
    n-2; E_n per the stored adjacency; B_n path with the short root last;
    C_n path with the long root last; F4 long-long-short-short; G2
    short-long.
    """
    a = ex.frac(alpha)
    n = rank
    g = [[F(0)] * n for _ in range(n)]

    def path(idxs, diag):
        for i in idxs:
            g[i][i] = diag
        for i, j in zip(idxs, idxs[1:]):
            g[i][j] = g[j][i] = -a

    if letter == "A":
        path(list(range(n)), 2 * a)
    elif letter == "D":
        if n < 3:
            raise RecognitionError("D rank must be >= 3")
        path(list(range(n - 1)), 2 * a)
        g[n - 1][n - 1] = 2 * a
        g[n - 1][n - 3] = g[n - 3][n - 1] = -a
    elif letter == "E":
        # chain 1-3-4-5-6(-7(-8)), node 2 on node 4 (1-indexed)
        chain = [0] + list(range(2, n))
        path(chain, 2 * a)
        g[1][1] = 2 * a
        g[1][3] = g[3][1] = -a
    elif letter == "B":
        path(list(range(n - 1)), 2 * a)
        g[n - 1][n - 1] = a
        if n >= 2:
            g[n - 1][n - 2] = g[n - 2][n - 1] = -a
    elif letter == "C":
        path(list(range(n - 1)), 2 * a)
        g[n - 1][n - 1] = 4 * a
        if n >= 2:
            g[n - 1][n - 2] = g[n - 2][n - 1] = -2 * a
    elif letter == "F":
        g = [[4 * a, -2 * a, 0, 0],
             [-2 * a, 4 * a, -2 * a, 0],
             [0, -2 * a, 2 * a, -a],
             [0, 0, -a, 2 * a]]
    elif letter == "G":
        g = [[2 * a, -3 * a], [-3 * a, 6 * a]]
    else:
        raise RecognitionError(f"unknown type {letter}{rank}")
    return g


def affine_marks(letter, rank):
    """Marks (m_0; m_1..m_n) of the untwisted affine diagram, ADE only."""
    if letter == "A":
        return [1] * (rank + 1)
    if letter == "D":
        return [1, 1] + [2] * (rank - 3) + [1, 1]
    if letter == "E" and rank == 6:
        return [1, 1, 2, 2, 3, 2, 1]
    if letter == "E" and rank == 7:
        return [1, 2, 2, 3, 4, 3, 2, 1]
    if letter == "E" and rank == 8:
        return [1, 2, 3, 4, 6, 5, 4, 3, 2]
    raise UnsupportedFoldingError(f"no affine marks stored for {letter}{rank}")


# ---------------------------------------------------------------------------
# root data


@dataclass
class RootComponent:
    letter: str
    rank: int
    scale: Fraction
    roots: list  # one representative per +- pair, rows in lattice coordinates
    base: list   # simple roots in canonical template order

    @property
    def type_name(self):
        return f"{self.letter}{self.rank}"

    @property
    def coxeter(self):
        return coxeter_data(self.letter, self.rank)


@dataclass
class RootDatum:
    lattice: object
    components: list = field(default_factory=list)

    @property
    def total_rank(self):
        return sum(c.rank for c in self.components)

    @property
    def root_count(self):
        return 2 * sum(len(c.roots) for c in self.components)

    def type_symbol(self):
        """Multiset name like 'A5^4 D4' in (letter asc, rank desc) order."""
        counts = {}
        for c in self.components:
            key = (c.letter, c.rank, c.scale)
            counts[key] = counts.get(key, 0) + 1
        parts = []
        for (letter, rank, scale) in sorted(counts, key=lambda k: (k[0], -k[1], k[2])):
            mult = counts[(letter, rank, scale)]
            txt = f"{letter}{rank}"
            if scale != 1:
                txt = f"sqrt({scale}){txt}"
            parts.append(txt if mult == 1 else f"{txt}^{mult}")
        return " ".join(parts)


def _lex_positive(v):
    for x in v:
        if x:
            return x > 0
    return False


def _components_of(lat, reps):
    """Partition +-classes of roots into orthogonality-connected components."""
    n = len(reps)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    gram = [list(r) for r in lat.gram]
    prods = [ex.mat_vec(list(v), gram) for v in reps]
    for i in range(n):
        for j in range(i + 1, n):
            if ex.dot(prods[i], list(reps[j])) != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    buckets = {}
    for i in range(n):
        buckets.setdefault(find(i), []).append(reps[i])
    return [sorted(b) for b in buckets.values()]


def _simple_system(lat, reps):
    """Base of a component: positives not expressible as sums of two positives."""
    pos = []
    for v in reps:
        pos.append(tuple(v) if _lex_positive(v) else tuple(-x for x in v))
    posset = set(pos)
    base = []
    for v in pos:
        is_sum = False
        for u in pos:
            w = tuple(a - b for a, b in zip(v, u))
            if w in posset:
                is_sum = True
                break
        if not is_sum:
            base.append(v)
    return sorted(base)


def _arrange_to_template(lat, base, tgram):
    """Order base roots to match a template Gram exactly; None if impossible."""
    r = len(base)
    if len(tgram) != r:
        return None
    pair = [[lat.inner(a, b) for b in base] for a in base]
    out = [None] * r
    used = [False] * r

    def rec(i):
        if i == r:
            return True
        for k in range(r):
            if used[k] or pair[k][k] != tgram[i][i]:
                continue
            if any(pair[k][out[j]] != tgram[i][j] for j in range(i)):
                continue
            used[k] = True
            out[i] = k
            if rec(i + 1):
                return True
            used[k] = False
            out[i] = None
        return False

    if not rec(0):
        return None
    return [list(base[k]) for k in out]


def _classify_component(lat, reps):
    """Identify one orthogonality-component of roots as a scaled type."""
    norms = {}
    for v in reps:
        nv = lat.norm(v)
        norms[nv] = norms.get(nv, 0) + 2  # count both signs
    base = _simple_system(lat, reps)
    rank = len(base)
    total = 2 * len(reps)
    kinds = sorted(norms)
    if len(kinds) == 1:
        alpha = kinds[0] / 2
        for letter in ("A", "D", "E"):
            try:
                expect = root_count(letter, rank)
            except KeyError:
                continue
            if letter == "D" and rank < 4:
                continue
            if letter == "E" and rank not in (6, 7, 8):
                continue
            if expect == total:
                arranged = _arrange_to_template(lat, base,
                                                template_gram(letter, rank, alpha))
                if arranged is not None:
                    return RootComponent(letter, rank, alpha, sorted(reps), arranged)
        raise RecognitionError(
            f"no simply-laced type of rank {rank} with {total} roots")
    if len(kinds) == 2:
        lo, hi = kinds
        if hi == 2 * lo:
            if norms[lo] < norms[hi]:
                letter, alpha = "B", lo
            elif norms[lo] > norms[hi]:
                letter, alpha = "C", lo / 2
            else:
                letter, alpha = ("F", lo / 2) if rank == 4 else ("B", lo)
            if letter == "F":
                rank = 4
        elif hi == 3 * lo:
            letter, alpha = "G", lo / 2
            rank = 2
        else:
            raise RecognitionError(f"root norm ratio {hi}/{lo} not 2 or 3")
        if total != root_count(letter, rank):
            raise RecognitionError(
                f"{letter}{rank} expects {root_count(letter, rank)} roots, got {total}")
        arranged = _arrange_to_template(lat, base, template_gram(letter, rank, alpha))
        if arranged is None:
            raise RecognitionError(f"base does not match the {letter}{rank} diagram")
        if letter == "B":
            _check_no_half_sum(lat, reps, alpha)
        return RootComponent(letter, rank, alpha, sorted(reps), arranged)
    raise RecognitionError(f"{len(kinds)} root lengths in one component")


def _check_no_half_sum(lat, reps, alpha):
    # a B-type component rejects lattices containing half the sum of the
    # orthogonal short-root frame: that vector would extend the root system
    shorts = [v for v in reps if lat.norm(v) == alpha]
    frame = []
    for v in shorts:
        if all(lat.inner(v, w) == 0 for w in frame):
            frame.append(v)
    half = [sum(ex.frac(x) for x in col) / 2 for col in zip(*frame)]
    if all(ex.frac(x).denominator == 1 for x in half):
        raise RecognitionError("lattice contains half the short-root frame sum")


def decompose_norm2_roots(lat, vectors=None):
    """ADE decomposition of the norm-2 roots of an even lattice."""
    if vectors is None:
        vectors = ex.short_vectors(lat, 2)
    reps = []
    seen = set()
    for v in vectors:
        if lat.norm(v) != 2:
            raise RecognitionError("vector of norm != 2 passed to ADE decomposition")
        w = tuple(v) if _lex_positive(v) else tuple(-x for x in v)
        if w not in seen:
            seen.add(w)
            reps.append(w)
    comps = [
        _classify_component(lat, c) for c in _components_of(lat, sorted(reps))
    ]
    for c in comps:
        if c.letter not in "ADE":
            raise RecognitionError(f"non-ADE component {c.type_name} in norm-2 set")
    comps.sort(key=lambda c: (c.letter, -c.rank, c.scale, c.roots[0]))
    return RootDatum(lat, comps)


def decompose_root_vectors(lat, vectors):
    """Scaled-type decomposition of an explicit closed set of roots.

    Unlike root_system_of_even_lattice this trusts the caller's set and
    does not gather further eligible norms from the lattice.
    """
    reps = []
    seen = set()
    for v in vectors:
        w = tuple(v) if _lex_positive(v) else tuple(-x for x in v)
        if w not in seen:
            seen.add(w)
            reps.append(w)
    comps = [
        _classify_component(lat, c) for c in _components_of(lat, sorted(reps))
    ]
    comps.sort(key=lambda c: (c.letter, -c.rank, c.scale, c.roots[0]))
    return RootDatum(lat, comps)


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def root_system_of_even_lattice(lat):
    """Scaled root system of an even lattice (all norms, per the divisor bound)."""
    if not lat.is_even:
        raise RecognitionError("root recognition needs an even lattice")
    if lat.rank == 0:
        return RootDatum(lat, [])
    disc = discriminant_exponent(lat)
    reps = []
    seen = set()
    n = lat.rank
    for m in _divisors(disc):
        if m == 1:
            sub_basis = ex.int_identity(n)
        else:
            gi, s = ex.int_matrix(lat.gram)
            stack = [row[:] for row in gi]
            for i in range(n):
                stack.append([m * s * (i == j) for j in range(n)])
            kern = ex.left_kernel_int(stack)
            sub_basis = ex.hnf([row[:n] for row in kern])
        sub = ex.lattice_from_rows(sub_basis, [list(r) for r in lat.gram])
        for vec, nv in ex.short_vectors_with_norms(sub, 2 * m):
            if nv != 2 * m:
                continue
            w = [int(x) for x in ex.mat_vec(list(vec), [list(r) for r in sub.basis])]
            g = 0
            for x in w:
                g = gcd(g, x)
            if g != 1:
                continue
            t = tuple(w) if _lex_positive(w) else tuple(-x for x in w)
            if t not in seen:
                seen.add(t)
                reps.append(t)
    comps = [_classify_component(lat, c) for c in _components_of(lat, sorted(reps))]
    comps.sort(key=lambda c: (c.letter, -c.rank, c.scale, c.roots[0]))
    return RootDatum(lat, comps)


def discriminant_exponent(lat):
    disc = ex.discriminant_group(lat)
    return disc.invariant_factors[-1] if disc.invariant_factors else 1


def simple_root_basis(lat, component_reps):
    """Base of one irreducible component, in canonical template order."""
    comp = _classify_component(lat, [tuple(v) for v in component_reps])
    return comp.base


def weyl_vector(lat, simple_roots):
    """rho with <rho, alpha^dual> = 1 for each simple root, inside their span."""
    base = [[ex.frac(x) for x in r] for r in simple_roots]
    t = len(base)
    gb = [[lat.inner(a, b) for b in base] for a in base]
    try:
        inv = ex.mat_inv(gb)
    except ex.MalformedLatticeError as exc:
        raise ex.MalformedLatticeError("simple-root system is degenerate") from exc
    rhs = [gb[i][i] / 2 for i in range(t)]
    coeffs = ex.mat_vec(rhs, inv)
    out = [F(0)] * lat.rank
    for c, a in zip(coeffs, base):
        for k in range(lat.rank):
            out[k] += c * a[k]
    return out


@dataclass
class AffineDiagram:
    component: RootComponent
    nodes: list   # [alpha_0] + base, vectors in lattice coordinates
    marks: list   # [1] + finite marks

    @property
    def coxeter_number(self):
        return sum(self.marks)


def highest_root(lat, component):
    """The positive root with all others <= it coefficient-wise."""
    base = component.base
    gb_inv = ex.mat_inv([[lat.inner(a, b) for b in base] for a in base])
    best = None
    best_height = None
    for v in component.roots:
        for w in (list(v), [-x for x in v]):
            pair = [lat.inner(w, b) for b in base]
            coeffs = ex.mat_vec(pair, gb_inv)
            if any(c < 0 for c in coeffs):
                continue
            ht = sum(coeffs)
            if best is None or ht > best_height:
                best, best_height = w, ht
    return best


def affine_diagram(lat, component):
    theta = highest_root(lat, component)
    alpha0 = [-x for x in theta]
    marks = affine_marks(component.letter, component.rank)
    if sum(marks) != component.coxeter.h:
        raise RecognitionError("marks do not sum to the Coxeter number")
    nodes = [alpha0] + [list(b) for b in component.base]
    acc = [F(0)] * lat.rank
    for m, v in zip(marks, nodes):
        for k in range(lat.rank):
            acc[k] += m * v[k]
    if any(acc):
        raise RecognitionError("affine relation sum marks * nodes != 0 failed")
    return AffineDiagram(component, nodes, marks)


# ---------------------------------------------------------------------------
# folding catalog


@dataclass(frozen=True)
class FoldInfo:
    quotient: tuple          # (letter, rank) of the quotient diagram, or None
    coinvariant: tuple       # (((letter, rank), mult), ...) subsystem absorbed
    frame: tuple             # frame shape exponent pairs on the component
    fixed_sublattice: str    # printed form of the fixed sublattice
    fixed_simple: tuple      # ((letter, rank), mult) of tau-fixed simple roots


def _frame(*pairs):
    return tuple((n, a) for n, a in pairs if a)


def fold_affine_diagram(diagram, orbits):
    """Catalog row for a diagram automorphism given by its node orbits.

    Nodes are indexed 0 (affine) .. rank; orbits is a partition of those
    indices.  Matches the stored table of affine diagram automorphisms.
    """
    comp = diagram.component
    letter, n = comp.letter, comp.rank
    nnodes = n + 1
    cover = sorted(i for orb in orbits for i in orb)
    if cover != list(range(nnodes)):
        raise UnsupportedFoldingError("orbits do not partition the diagram nodes")
    sizes = sorted(len(o) for o in orbits)
    marks = diagram.marks
    for orb in orbits:
        if len({marks[i] for i in orb}) != 1:
            raise UnsupportedFoldingError("orbit mixes different marks")

    counts = {}
    for s in sizes:
        counts[s] = counts.get(s, 0) + 1
    c1 = counts.get(1, 0)
    c2 = counts.get(2, 0)
    c4 = counts.get(4, 0)

    if letter == "A":
        m = n + 1
        k = len(orbits)
        if m % k or any(len(o) != m // k for o in orbits):
            raise UnsupportedFoldingError("A-type orbits must be balanced")
        step = m // k
        if step == 1:
            raise UnsupportedFoldingError("identity folding")
        return FoldInfo(
            quotient=("A", k - 1) if k > 1 else None,
            coinvariant=((("A", step - 1), k),),
            frame=_frame((1, -1), (step, k)),
            fixed_sublattice=f"sqrt({step})A{k - 1}" if k > 1 else "0",
            fixed_simple=None,
        )

    if letter == "D":
        if n % 2 == 0 and c1 == 1 and c2 == n // 2 and c1 + c2 == len(orbits):
            # full flip of D_{2k}: every leaf pair and chain pair swapped
            k = n // 2
            return FoldInfo(
                quotient=("B", k),
                coinvariant=((("A", 1), k),),
                frame=_frame((2, k)),
                fixed_sublattice=f"A1^{k}" if k > 1 else "A1",
                fixed_simple=(("A", 1), 1),
            )
        if c2 == 2 and c1 == nnodes - 4 and c1 + c2 == len(orbits):
            # swap the two leaf pairs only
            if n % 2 == 0:
                k = n // 2
                return FoldInfo(
                    quotient=("C", 2 * k - 2),
                    coinvariant=((("A", 1), 2),),
                    frame=_frame((1, 2 * k - 4), (2, 2)),
                    fixed_sublattice=f"D{2 * k - 2}",
                    fixed_simple=(("A", 2 * k - 3), 1),
                )
            k = (n - 1) // 2
            return FoldInfo(
                quotient=("C", 2 * k - 1),
                coinvariant=((("A", 1), 2),),
                frame=_frame((1, 2 * k - 3), (2, 2)),
                fixed_sublattice=f"D{2 * k - 1}",
                fixed_simple=(("A", 2 * k - 2), 1),
            )
        if n % 2 == 1 and c4 == 1 and c2 == (n - 3) // 2 and c1 == 0 \
                and c2 + c4 == len(orbits):
            # order-4 twist of D_{2k+1}
            k = (n - 1) // 2
            coin = ((("A", 3), 1),)
            if k > 1:
                coin = coin + ((("A", 1), k - 1),)
            return FoldInfo(
                quotient=("C", k - 1),
                coinvariant=coin,
                frame=_frame((1, -1), (2, k - 1), (4, 1)),
                fixed_sublattice=f"A1^{k - 1}" if k > 1 else "0",
                fixed_simple=None,
            )
        raise UnsupportedFoldingError("unrecognized D-type orbit pattern")

    if letter == "E" and n == 6:
        if sizes == [1, 3, 3]:
            return FoldInfo(
                quotient=("G", 2),
                coinvariant=((("A", 2), 2),),
                frame=_frame((3, 2)),
                fixed_sublattice="A2",
                fixed_simple=(("A", 1), 1),
            )
        raise UnsupportedFoldingError("unrecognized E6 orbit pattern")

    if letter == "E" and n == 7:
        if sizes == [1, 1, 2, 2, 2]:
            return FoldInfo(
                quotient=("F", 4),
                coinvariant=((("A", 1), 3),),
                frame=_frame((1, 1), (2, 3)),
                fixed_sublattice="D4",
                fixed_simple=(("A", 2), 1),
            )
        raise UnsupportedFoldingError("unrecognized E7 orbit pattern")

    raise UnsupportedFoldingError(f"no foldings stored for {letter}{n}")


def coxeter_number_of_niemeier(datum):
    """Common Coxeter number of a rank-24 root datum; error when mixed."""
    hs = {c.coxeter.h for c in datum.components}
    if len(hs) != 1:
        raise MixedCoxeterError(f"components disagree on Coxeter number: {sorted(hs)}")
    return hs.pop()


def write_root_datum(datum, fh):
    for c in datum.components:
        fh.write(f"COMPONENT {c.letter} {c.rank} scale "
                 f"{c.scale.numerator}/{c.scale.denominator}\n")
        for v in c.roots:
            fh.write(" ".join(str(x) for x in v) + "\n")
