"""Code lattices over products of A-type components.

A moduli list (k_1, ..., k_t) fixes R = A_{k_1-1} + ... + A_{k_t-1} in Cartan
coordinates.  A code C over Z_{k_1} x ... x Z_{k_t} lifts to the lattice
L_A(C) generated by R and the glue vectors lambda_c, and L_B(C) is the kernel
of the pairing with chi = (rho_1/k_1, ..., rho_t/k_t) inside L_A(C).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import exactlat as ex

F = Fraction


class CodeError(ex.LatticeError):
    pass


class NotAnIsometryError(ex.LatticeError):
    pass


@dataclass(frozen=True)
class GlueCode:
    moduli: tuple
    generators: tuple  # tuples reduced mod the moduli

    def __post_init__(self):
        for g in self.generators:
            if len(g) != len(self.moduli):
                raise CodeError("generator length does not match moduli")
            if any(x % k != x for x, k in zip(g, self.moduli)):
                raise CodeError("generator entries must be reduced mod k_i")

    def elements(self):
        zero = tuple(0 for _ in self.moduli)
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for w in frontier:
                for g in self.generators:
                    s = tuple((a + b) % k for a, b, k in zip(w, g, self.moduli))
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return sorted(seen)

    @property
    def size(self):
        return len(self.elements())

    def __contains__(self, word):
        w = tuple(x % k for x, k in zip(word, self.moduli))
        return w in set(self.elements())


def parse_codeword(text, moduli):
    """Digits in component order; bars, commas, parens and spaces ignored."""
    digits = re.sub(r"[|,()\s]", "", text)
    if not digits.isdigit():
        raise CodeError(f"malformed codeword {text!r}")
    if len(digits) != len(moduli):
        raise CodeError(
            f"codeword {text!r} has {len(digits)} entries for {len(moduli)} components")
    word = tuple(int(ch) for ch in digits)
    for x, k in zip(word, moduli):
        if x >= k:
            raise CodeError(f"entry {x} out of range for modulus {k}")
    return word


def read_glue_code(fh):
    moduli = None
    gens = []
    for raw in fh:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "MODULI":
            moduli = tuple(int(x) for x in rest)
        elif head == "GEN":
            gens.append(tuple(int(x) for x in rest))
        else:
            raise CodeError(f"unknown directive {head!r}")
    if moduli is None:
        raise CodeError("missing MODULI line")
    return GlueCode(moduli, tuple(gens))


def write_glue_code(code, fh):
    fh.write("MODULI " + " ".join(str(k) for k in code.moduli) + "\n")
    for g in code.generators:
        fh.write("GEN " + " ".join(str(x) for x in g) + "\n")


# ---------------------------------------------------------------------------
# the root lattice R and its weight data


def _cartan_a(n):
    return [[F(2 if i == j else -1 if abs(i - j) == 1 else 0) for j in range(n)]
            for i in range(n)]


def root_lattice(moduli):
    """R = sum of A_{k-1} in Cartan coordinates; k = 1 contributes nothing."""
    blocks = [ex.Lattice(_cartan_a(k - 1)) for k in moduli if k > 1]
    if not blocks:
        return ex.ZERO_LATTICE
    return ex.direct_sum(*blocks)


def _offsets(moduli):
    offs = []
    pos = 0
    for k in moduli:
        offs.append(pos)
        pos += k - 1
    return offs, pos


def glue_vector(moduli, word):
    """lambda_word: the word's fundamental weights, zero where the entry is 0."""
    if len(word) != len(moduli):
        raise CodeError("word length does not match moduli")
    offs, rank = _offsets(moduli)
    out = [F(0)] * rank
    for (x, k, off) in zip(word, moduli, offs):
        x %= k
        if x == 0:
            continue
        cinv = ex.mat_inv(_cartan_a(k - 1))
        for j in range(k - 1):
            out[off + j] = cinv[x - 1][j]
    return out


def chi_delta(moduli):
    """chi = (rho_1/k_1, ..., rho_t/k_t) in Cartan coordinates."""
    offs, rank = _offsets(moduli)
    out = [F(0)] * rank
    for (k, off) in zip(moduli, offs):
        if k == 1:
            continue
        cinv = ex.mat_inv(_cartan_a(k - 1))
        for j in range(k - 1):
            out[off + j] = sum(cinv[i][j] for i in range(k - 1)) / k
    return out


def construction_a(moduli, code):
    """L_A(C): the preimage of C in R*, generated by R and the lambda_c."""
    if code.moduli != tuple(moduli):
        raise CodeError("code moduli disagree with the requested moduli")
    r = root_lattice(moduli)
    if r.rank == 0:
        return r
    rows = [list(row) for row in ex.int_identity(r.rank)]
    for g in code.generators:
        rows.append(glue_vector(moduli, g))
    basis = ex.hnf_rational(rows)
    return ex.Lattice.from_basis(basis, ambient_gram=[list(q) for q in r.gram])


def construction_b(moduli, code):
    """L_B(C) = {v in L_A(C) : <v, chi> in Z}."""
    la = construction_a(moduli, code)
    chi = chi_delta(moduli)
    gram_amb = [[ex.frac(x) for x in row] for row in _ambient_gram(moduli)]
    pair = []
    for row in la.basis:
        p = ex.dot(ex.mat_vec(list(row), gram_amb), chi)
        pair.append(p)
    den = 1
    for p in pair:
        den = den * p.denominator // gcd(den, p.denominator)
    cols = [int(p * den) for p in pair]
    n = la.rank
    stack = [[cols[i]] for i in range(n)] + [[den]]
    kern = ex.left_kernel_int(stack)
    combo = ex.hnf([row[:n] for row in kern])
    basis = ex.mat_mul([[F(x) for x in row] for row in combo],
                       [list(r) for r in la.basis])
    return ex.Lattice.from_basis(basis, ambient_gram=gram_amb)


def _ambient_gram(moduli):
    r = root_lattice(moduli)
    return [list(row) for row in r.gram]


def coxeter_block(k):
    """Rotation of the affine A_{k-1} base: alpha_i -> alpha_{i+1} -> -theta."""
    n = k - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
    for j in range(n):
        rows[n - 1][j] = -1
    return rows


def coxeter_matrix(moduli, word):
    """g_{Delta,word} on the ambient R coordinates (block powers)."""
    if len(word) != len(moduli):
        raise CodeError("word length does not match moduli")
    offs, rank = _offsets(moduli)
    out = [[F(0)] * rank for _ in range(rank)]
    for (e, k, off) in zip(word, moduli, offs):
        n = k - 1
        if n == 0:
            continue
        block = ex.int_identity(n)
        step = coxeter_block(k)
        for _ in range(e % k):
            block = ex.mat_mul(block, step)
        for i in range(n):
            for j in range(n):
                out[off + i][off + j] = F(block[i][j])
    return out


def coxeter_isometry(moduli, word, lattice):
    """Restrict g_{Delta,word} to a lattice given in R-ambient coordinates.

    Raises NotAnIsometryError when the lattice is not preserved (for L_B
    this happens exactly when lambda_word is outside L_A(C)*).
    """
    g = coxeter_matrix(moduli, word)
    b = [list(r) for r in lattice.basis]
    m = ex.mat_mul(ex.mat_mul(b, g), ex.mat_inv(b))
    for row in m:
        for x in row:
            if ex.frac(x).denominator != 1:
                raise NotAnIsometryError(
                    "rotation does not preserve the lattice (lambda_e outside the dual)")
    mi = [[int(x) for x in row] for row in m]
    return ex.Isometry(mi, lattice=lattice)


def in_dual(moduli, word, lattice):
    """Whether lambda_word pairs integrally with every basis vector."""
    lam = glue_vector(moduli, word)
    gram_amb = [[ex.frac(x) for x in row] for row in _ambient_gram(moduli)]
    for row in lattice.basis:
        if ex.dot(ex.mat_vec(list(row), gram_amb), lam).denominator != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# the ten stored coinvariant models

COINVARIANT_TABLE = {
    "2A": ((2,) * 8, (1,) * 8, (2,) * 8),
    "2C": ((2,) * 12, (1,) * 12, (2,) * 12),
    "3B": ((3,) * 6, (1,) * 6, (3,) * 6),
    "4C": ((4, 4, 4, 4, 2, 2), (1, 1, 1, 1, 1, 1), (2, 2, 4, 4, 4, 4)),
    "5B": ((5,) * 4, (1, 2, 3, 4), (5,) * 4),
    "6E": ((6, 6, 3, 3, 2, 2), (1, 1, 1, 1, 1, 1), (6, 6, 6, 6)),
    "6G": ((6, 6, 6, 2, 2, 2), (1, 1, 1, 1, 1, 1), (2, 2, 2, 6, 6, 6)),
    "7B": ((7,) * 3, (1, 2, 4), (7,) * 3),
    "8E": ((8, 8, 4, 2), (1, 3, 1, 1), (2, 4, 8, 8)),
    "10F": ((10, 10, 2, 2), (1, 3, 1, 1), (2, 2, 10, 10)),
}


@dataclass
class CoinvariantModel:
    label: str
    moduli: tuple
    codeword: tuple
    lattice: object
    tau: ex.Isometry


def coinvariant_model(label):
    """Validated (L_B(<c>), g_{Delta,c}) for one of the ten stored classes."""
    if label not in COINVARIANT_TABLE:
        raise CodeError(f"unknown class label {label!r}")
    moduli, word, expect_disc = COINVARIANT_TABLE[label]
    code = GlueCode(moduli, (word,))
    lb = construction_b(moduli, code)
    tau = coxeter_isometry(moduli, word, lb)
    n = lcm(*moduli)
    got_disc = tuple(ex.discriminant_group(lb).invariant_factors)
    if got_disc != expect_disc:
        raise CodeError(f"{label}: discriminant {got_disc} != {expect_disc}")
    if not lb.is_even:
        raise CodeError(f"{label}: model lattice is not even")
    if ex.fixed_sublattice(lb, tau).rank != 0:
        raise CodeError(f"{label}: rotation has fixed vectors")
    if tau.order != n:
        raise CodeError(f"{label}: order {tau.order} != lcm {n}")
    if not one_minus_tau_maps_dual_onto(lb, tau):
        raise CodeError(f"{label}: (1 - tau) does not map the dual onto the lattice")
    return CoinvariantModel(label, moduli, word, lb, tau)


def one_minus_tau_maps_dual_onto(lat, tau):
    """(1 - tau) L* = L, computed in lattice coordinates."""
    n = lat.rank
    ginv = ex.mat_inv([list(r) for r in lat.gram])
    one_minus = [[F(int(i == j)) - tau.matrix[i][j] for j in range(n)]
                 for i in range(n)]
    rows = ex.mat_mul(ginv, one_minus)
    h = ex.hnf_rational(rows)
    ident = [[F(int(i == j)) for j in range(n)] for i in range(n)]
    return h == ident
