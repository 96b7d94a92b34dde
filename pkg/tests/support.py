"""Shared randomized-instance helpers for the code-lattice property suites."""

from math import gcd, lcm

from deephole import consab as ca
from deephole import exactlat as ex


def random_moduli(rng, tmax=5, kmax=8):
    t = rng.randint(1, tmax)
    return tuple(rng.randint(2, kmax) for _ in range(t))


def random_word(rng, moduli):
    return tuple(rng.randrange(k) for k in moduli)


def random_code(rng, moduli, max_gens=2):
    gens = tuple(random_word(rng, moduli) for _ in range(rng.randint(0, max_gens)))
    return ca.GlueCode(moduli, gens)


def random_integral_code(rng, moduli, max_gens=2, tries=200):
    """A code whose glue vectors pair integrally, so L_A(C) is integral.

    The Coxeter-restriction statement lives on this domain; arbitrary codes
    produce L_A outside its own dual where the equivalence has no content.
    """
    for _ in range(tries):
        code = random_code(rng, moduli, max_gens)
        lams = [ca.glue_vector(moduli, g) for g in code.generators]
        if all(pairing(moduli, lams[i], lams[j]).denominator == 1
               for i in range(len(lams)) for j in range(i, len(lams))):
            return code
    return ca.GlueCode(moduli, ())


def norm_of(moduli, vec):
    r = ca.root_lattice(moduli)
    g = [list(row) for row in r.gram]
    return ex.dot(ex.mat_vec(list(vec), g), list(vec))


def pairing(moduli, u, v):
    r = ca.root_lattice(moduli)
    g = [list(row) for row in r.gram]
    return ex.dot(ex.mat_vec(list(u), g), list(v))


def check_even_norm_lemma(moduli, word):
    """<lambda_x, lambda_x> in 2Z iff <lambda_x, chi> in Z."""
    lam = ca.glue_vector(moduli, word)
    chi = ca.chi_delta(moduli)
    even = norm_of(moduli, lam) % 2 == 0
    integral = pairing(moduli, lam, chi).denominator == 1
    return even == integral


def check_index_lemma(moduli, code):
    """|L_A : L_B| = lcm(k_i) iff chi in (1/n) L_A(C)*."""
    n = lcm(*moduli)
    la = ca.construction_a(moduli, code)
    lb = ca.construction_b(moduli, code)
    index = ex.quotient_index(lb, la)
    chi = ca.chi_delta(moduli)
    g = [list(row) for row in ca.root_lattice(moduli).gram]
    member = all(
        (n * ex.dot(ex.mat_vec(list(row), g), chi)).denominator == 1
        for row in la.basis)
    return (index == n) == member


def check_restriction_lemma(moduli, word, code):
    """g restricts to L_B(C) iff lambda_word is in L_A(C)*."""
    la = ca.construction_a(moduli, code)
    lb = ca.construction_b(moduli, code)
    try:
        ca.coxeter_isometry(moduli, word, lb)
        restricts = True
    except ca.NotAnIsometryError:
        restricts = False
    return restricts == ca.in_dual(moduli, word, la)


def check_fixed_point_lemma(moduli, word, code):
    """g_{Delta,word} on L_A is fixed-point free of order lcm(k_i)
    iff gcd(word_i, k_i) = 1 for every component."""
    la = ca.construction_a(moduli, code)
    tau = ca.coxeter_isometry(moduli, word, la)
    n = lcm(*moduli)
    fpf = ex.fixed_sublattice(la, tau).rank == 0 and tau.order == n
    coprime = all(gcd(e, k) == 1 for e, k in zip(word, moduli))
    return fpf == coprime
