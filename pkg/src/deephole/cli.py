"""Command line front end: lattice info, constructions, catalogues, tables.

Exit codes: 0 success, 1 computational mismatch, 2 usage error,
3 data validation failure.
"""

import argparse
import csv
import itertools
import json
import math
import random
import sys
import time
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from . import classify as cl
from . import consab as ca
from . import exactlat as ex
from . import niemeier as nm
from . import rootsys as rs

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_DATA = 3


class SelfTestFailure(Exception):
    """A fixture recomputation disagreed with its stored value."""


def _fmt_q(x):
    x = ex.frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def _q_json(x):
    x = ex.frac(x)
    return x.numerator if x.denominator == 1 else _fmt_q(x)


def _open_in(path):
    if path == "-":
        return sys.stdin
    return open(path)


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout
    return open(path, "w", newline="")


# ---------------------------------------------------------------------------
# lattice and isometry inspection


def _cmd_lattice_info(args):
    with _open_in(args.file) as fh:
        lat = ex.read_lattice(fh)
    info = {
        "rank": lat.rank,
        "det": _q_json(lat.det),
        "integral": lat.is_integral,
        "even": lat.is_even,
    }
    if lat.rank:
        pairs = ex.short_vectors_with_norms(lat, ex.minimum(lat))
        m = min(n for _, n in pairs)
        info["minimum"] = _q_json(m)
        info["minimal_vectors"] = 2 * sum(1 for _, n in pairs if n == m)
        info["discriminant"] = list(ex.discriminant_group(lat).invariant_factors)
    if args.json:
        print(json.dumps(info, sort_keys=True))
        return EXIT_OK
    for key in ("rank", "det", "integral", "even",
                "minimum", "minimal_vectors", "discriminant"):
        if key in info:
            val = info[key]
            if key == "discriminant":
                val = " x ".join("Z%d" % d for d in val) if val else "trivial"
            print("%s: %s" % (key, str(val).lower()
                              if isinstance(val, bool) else val))
    return EXIT_OK


def _cmd_frameshape(args):
    with _open_in(args.isometry) as fh:
        rows = ex.read_isometry(fh)
    with _open_in(args.lattice) as fh:
        lat = ex.read_lattice(fh)
    iso = ex.Isometry(rows, lattice=lat)
    fs = iso.frame_shape
    if args.json:
        print(json.dumps({"frameshape": str(fs), "order": iso.order,
                          "fixed_dim": fs.fixed_dim}, sort_keys=True))
    else:
        print(fs)
    return EXIT_OK


def _cmd_phi(args):
    fs = ex.parse_frame_shape(args.frameshape)
    weight = nm.twisted_conformal_weight(fs)
    if args.json:
        print(json.dumps({"frameshape": str(fs), "phi": _fmt_q(weight),
                          "fixed_dim": fs.fixed_dim}, sort_keys=True))
    else:
        print(_fmt_q(weight))
    return EXIT_OK


# ---------------------------------------------------------------------------
# code lattices


def _parse_ints(text):
    return tuple(int(t) for t in text.replace(",", " ").split())


def _cmd_construct(args):
    moduli = _parse_ints(args.moduli)
    gens = tuple(_parse_ints(g) for g in args.code or ())
    code = ca.GlueCode(moduli, gens)
    build = ca.construction_a if args.which == "construct-a" else ca.construction_b
    lat = build(moduli, code)
    with _open_out(args.out) as fh:
        ex.write_lattice(lat, fh)
    return EXIT_OK


# ---------------------------------------------------------------------------
# catalogue


def _cmd_niemeier(args):
    if args.action == "list":
        names = nm.niemeier_names()
        if args.json:
            print(json.dumps(list(names)))
            return EXIT_OK
        for name in names:
            letter, rank = nm._parse_components(name)[0]
            print("%-12s h=%d" % (name, rs.coxeter_data(letter, rank).h))
        return EXIT_OK
    if not args.name:
        raise ex.MalformedLatticeError("niemeier build needs a lattice name")
    nl = nm.niemeier_from_spec(args.name)
    with _open_out(args.out) as fh:
        ex.write_lattice(nl.lattice, fh)
    return EXIT_OK


def _cmd_deephole(args):
    nl = nm.niemeier_from_spec(args.niemeier)
    hole = nm.hole_from_niemeier(nl)
    neighbour = hole.leech
    report = {
        "niemeier": nl.name,
        "coxeter_number": nl.h,
        "quotient_index": nm.hole_stabiliser_index(hole),
        "neighbour_det": _q_json(neighbour.det),
        "neighbour_even": neighbour.is_even,
        "neighbour_roots": 2 * len(ex.short_vectors(neighbour, 2)),
    }
    status = EXIT_OK
    if args.verify:
        ok, cert = nm.verify_deep_hole(neighbour, hole.beta_leech)
        report["deep_hole"] = ok
        if ok:
            report["hole_components"] = sorted(t for t, _ in cert["components"])
            report["hole_nodes"] = cert["node_count"]
        if not (ok and report["quotient_index"] == nl.h
                and report["neighbour_roots"] == 0):
            status = EXIT_MISMATCH
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for key in sorted(report):
            print("%s: %s" % (key, report[key]))
    return status


# ---------------------------------------------------------------------------
# classification


def _word_arg(text):
    if "," in text:
        return tuple(int(t) for t in text.split(","))
    return text


TABLE_HEADER = ("Class", "Type", "Codeword", "Embedding", "FixedRoots", "V1")


def _cmd_classify(args):
    ctx = cl.build_pair(args.niemeier, _word_arg(args.code), args.cls)
    emb = cl.format_embedding(cl.embedding_groups(ctx))
    fixed = cl.format_fixed(ctx.fixed_system)
    try:
        v1 = cl.lie_algebra_v1(ctx).symbol()
    except cl.InconsistentPairError as err:
        v1 = "inconsistent (%s)" % err
    conds = cl.check_conditions(ctx)
    if args.csv:
        w = csv.writer(sys.stdout)
        w.writerow(TABLE_HEADER)
        w.writerow((ctx.class_label, ctx.niemeier_name, ctx.codeword,
                    emb, fixed, v1))
        return EXIT_OK
    if args.json:
        print(json.dumps({
            "class": ctx.class_label,
            "type": ctx.niemeier_name,
            "codeword": ctx.codeword,
            "frameshape": str(ctx.tau.frame_shape),
            "frame_matches_class": ctx.frame_matches_class,
            "embedding": emb,
            "fixed_roots": fixed,
            "v1": v1,
            "conditions": conds,
        }, sort_keys=True))
        return EXIT_OK
    print("class: %s" % ctx.class_label)
    print("type: %s" % ctx.niemeier_name)
    print("codeword: %s" % ctx.codeword)
    print("frameshape: %s" % ctx.tau.frame_shape)
    print("frame_matches_class: %s" % str(ctx.frame_matches_class).lower())
    print("embedding: %s" % emb)
    print("fixed_roots: %s" % fixed)
    print("v1: %s" % v1)
    for key in ("C1", "C2", "C3"):
        rep = conds[key]
        print("%s: %s (%s)" % (key, "pass" if rep["holds"] else "fail",
                               rep["detail"]))
    return EXIT_OK


def _cmd_tables(args):
    if not args.all:
        raise ex.MalformedLatticeError("tables needs --all")
    rows = cl.reproduce_tables(threads=args.threads)
    records = [(r.class_label, r.niemeier_name, r.codeword,
                r.embedding, r.fixed_symbol, r.v1_symbol) for r in rows]
    if args.csv is not None:
        with _open_out(args.csv) as fh:
            w = csv.writer(fh)
            w.writerow(TABLE_HEADER)
            w.writerows(records)
        return EXIT_OK
    widths = [max(len(str(rec[i])) for rec in records + [TABLE_HEADER])
              for i in range(len(TABLE_HEADER))]
    for rec in [TABLE_HEADER] + records:
        print("  ".join(str(x).ljust(w) for x, w in zip(rec, widths)).rstrip())
    return EXIT_OK


# ---------------------------------------------------------------------------
# self test: recompute every stored fixture


def _crit_conformal_weights(threads=None):
    for label, text, dim, weight in nm.CONFORMAL_TABLE:
        fs = ex.parse_frame_shape(text)
        if fs.rank != 24:
            raise SelfTestFailure("%s: frame %s has rank %d" % (label, fs, fs.rank))
        if fs.fixed_dim != dim:
            raise SelfTestFailure("%s: fixed dim %d, stored %d"
                                  % (label, fs.fixed_dim, dim))
        got = nm.twisted_conformal_weight(fs)
        if got != weight:
            raise SelfTestFailure("%s: weight %s, stored %s"
                                  % (label, got, weight))
    return "%d frame shapes" % len(nm.CONFORMAL_TABLE)


def _crit_code_models(threads=None):
    for label in nm.P0_CLASSES[1:]:
        model = ca.coinvariant_model(label)
        got = ex.discriminant_group(model.lattice).invariant_factors
        want = ca.COINVARIANT_TABLE[label][2]
        if tuple(got) != tuple(want):
            raise SelfTestFailure("%s: discriminant %s, stored %s"
                                  % (label, got, want))
    return "10 coinvariant code models"


def _crit_unimodular_catalogue(threads=None):
    leech = nm.leech_lattice()
    if not leech.is_even or leech.det != 1:
        raise SelfTestFailure("leech gates: even=%s det=%s"
                              % (leech.is_even, leech.det))
    shell = ex.short_vectors_with_norms(leech, 4)
    if any(n < 4 for _, n in shell):
        raise SelfTestFailure("leech contains a vector of norm < 4")
    kissing = 2 * sum(1 for _, n in shell if n == 4)
    if kissing != 196560:
        raise SelfTestFailure("leech kissing number %d" % kissing)
    for name in nm.niemeier_names():
        nl = nm.niemeier_from_spec(name)
        lat = nl.lattice
        if not lat.is_even or lat.det != 1:
            raise SelfTestFailure("%s gates: even=%s det=%s"
                                  % (name, lat.is_even, lat.det))
        roots = 2 * len(ex.short_vectors(lat, 2))
        if roots != 24 * nl.h:
            raise SelfTestFailure("%s: %d roots, 24h = %d"
                                  % (name, roots, 24 * nl.h))
    return "leech + 23 root lattices"


@lru_cache(maxsize=1)
def _class_representatives():
    return tuple((label, nm.isometry_representative(label))
                 for label in nm.P0_CLASSES)


def _crit_duality(threads=None):
    for label, rep in _class_representatives():
        ell = nm.CLASS_LIFT_ORDERS[label]
        fixed = ex.fixed_sublattice(rep.lattice, rep)
        if fixed.rank % 2:
            raise SelfTestFailure("%s: odd fixed rank %d" % (label, fixed.rank))
        if fixed.det != Fraction(ell) ** (fixed.rank // 2):
            raise SelfTestFailure("%s: det %s is not %d^%d"
                                  % (label, fixed.det, ell, fixed.rank // 2))
        if ell == 1:
            if not fixed.is_integral:
                raise SelfTestFailure("1A fixed part not integral")
            continue
        rescaled = ex.rescale(ex.dual_lattice(fixed), ell)
        if ex.is_isometric(rescaled, fixed) is None:
            raise SelfTestFailure("%s: %d-rescaled dual not isometric"
                                  % (label, ell))
    return "11 isometry classes"


def _crit_deep_holes(threads=None):
    for name in nm.niemeier_names():
        nl = nm.niemeier_from_spec(name)
        hole = nm.hole_from_niemeier(nl)
        neighbour = hole.leech
        if not neighbour.is_even or neighbour.det != 1:
            raise SelfTestFailure("%s: neighbour gates fail" % name)
        if ex.short_vectors(neighbour, 2):
            raise SelfTestFailure("%s: neighbour has roots" % name)
        ok, cert = nm.verify_deep_hole(neighbour, hole.beta_leech)
        if not ok:
            raise SelfTestFailure("%s: not a deep hole" % name)
        if nm.hole_stabiliser_index(hole) != nl.h:
            raise SelfTestFailure("%s: quotient index is not h" % name)
        types = sorted(t for t, _ in cert["components"])
        want = sorted("%s%d" % c for c in nl.comps)
        if types != want:
            raise SelfTestFailure("%s: hole components %s, expected %s"
                                  % (name, types, want))
        if cert["node_count"] != 24 + len(nl.comps):
            raise SelfTestFailure("%s: %d hole nodes" % (name, cert["node_count"]))
    return "23 deep holes"


def _crit_tables(threads=None):
    rows = cl.reproduce_tables(threads=threads)
    if len(rows) != 46:
        raise SelfTestFailure("%d rows, expected 46" % len(rows))
    counts = {}
    for row in rows:
        counts[row.class_label] = counts.get(row.class_label, 0) + 1
        ctx = row.context
        v1 = cl.lie_algebra_v1(ctx)
        if v1.total_rank != ctx.fixed_part.rank:
            raise SelfTestFailure("%s %s: V1 rank %d, fixed rank %d"
                                  % (row.class_label, row.niemeier_name,
                                     v1.total_rank, ctx.fixed_part.rank))
        if v1.total_rank != nm.class_fixed_rank(row.class_label):
            raise SelfTestFailure("%s %s: V1 rank %d off the class frame"
                                  % (row.class_label, row.niemeier_name,
                                     v1.total_rank))
    want = {"2A": 17, "3B": 6, "5B": 2, "7B": 1, "2C": 9,
            "4C": 5, "6E": 2, "8E": 1, "6G": 2, "10F": 1}
    if counts != want:
        raise SelfTestFailure("class counts %s, expected %s" % (counts, want))
    return "46 classification rows"


def _pairing(moduli, u, v):
    g = [list(row) for row in ca.root_lattice(moduli).gram]
    return ex.dot(ex.mat_vec(list(u), g), list(v))


def _random_code(rng, moduli):
    gens = tuple(tuple(rng.randrange(k) for k in moduli)
                 for _ in range(rng.randint(0, 2)))
    return ca.GlueCode(moduli, gens)


def _integral_code(rng, moduli, tries=200):
    for _ in range(tries):
        code = _random_code(rng, moduli)
        lams = [ca.glue_vector(moduli, g) for g in code.generators]
        if all(_pairing(moduli, lams[i], lams[j]).denominator == 1
               for i in range(len(lams)) for j in range(i, len(lams))):
            return code
    return ca.GlueCode(moduli, ())


def _crit_lemma_properties(threads=None):
    rng = random.Random(1259)
    chi_fail = index_fail = restrict_fail = fixed_fail = 0
    cases = []
    for _ in range(200):
        moduli = tuple(rng.randint(2, 8) for _ in range(rng.randint(1, 5)))
        word = tuple(rng.randrange(k) for k in moduli)
        cases.append((moduli, word, _random_code(rng, moduli),
                      _integral_code(rng, moduli)))
    for label in nm.P0_CLASSES[1:]:
        moduli, word, _ = ca.COINVARIANT_TABLE[label]
        table_code = ca.GlueCode(moduli, (word,))
        cases.append((tuple(moduli), tuple(word), table_code, table_code))
    for moduli, word, code, icode in cases:
        lam = ca.glue_vector(moduli, word)
        chi = ca.chi_delta(moduli)
        even = _pairing(moduli, lam, lam) % 2 == 0
        if even != (_pairing(moduli, lam, chi).denominator == 1):
            chi_fail += 1
        n = lcm(*moduli)
        la = ca.construction_a(moduli, code)
        lb = ca.construction_b(moduli, code)
        gram = [list(row) for row in ca.root_lattice(moduli).gram]
        member = all(
            (n * ex.dot(ex.mat_vec(list(row), gram), chi)).denominator == 1
            for row in la.basis)
        if (ex.quotient_index(lb, la) == n) != member:
            index_fail += 1
        ila = ca.construction_a(moduli, icode)
        ilb = ca.construction_b(moduli, icode)
        try:
            ca.coxeter_isometry(moduli, word, ilb)
            restricts = True
        except ca.NotAnIsometryError:
            restricts = False
        if restricts != ca.in_dual(moduli, word, ila):
            restrict_fail += 1
        tau = ca.coxeter_isometry(moduli, word, la)
        fpf = ex.fixed_sublattice(la, tau).rank == 0 and tau.order == n
        coprime = all(gcd(e, k) == 1 for e, k in zip(word, moduli))
        if fpf != coprime:
            fixed_fail += 1
    if chi_fail or index_fail or restrict_fail or fixed_fail:
        raise SelfTestFailure(
            "failures: norm/chi %d, index %d, restriction %d, fixed-point %d"
            % (chi_fail, index_fail, restrict_fail, fixed_fail))
    return "%d property instances" % len(cases)


def _box_short_vectors(gram, max_norm):
    n = len(gram)
    ginv = ex.mat_inv(gram)
    bounds = []
    for i in range(n):
        b2 = Fraction(max_norm) * ginv[i][i]
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


def _brute_isometry(g1, g2):
    n = len(g1)
    if ex.mat_det(g1) != ex.mat_det(g2):
        return None
    diag = [g1[i][i] for i in range(n)]
    cands = []
    for v in _box_short_vectors(g2, max(diag)):
        nv = ex.gram_apply(g2, list(v), list(v))
        if nv in set(diag):
            cands.append((list(v), nv))
    cands += [([-x for x in v], nv) for v, nv in cands]

    def rec(rows):
        t = len(rows)
        if t == n:
            return rows if abs(ex.mat_det(rows)) == 1 else None
        for v, nv in cands:
            if nv != diag[t]:
                continue
            if any(ex.gram_apply(g2, v, r) != g1[t][k]
                   for k, r in enumerate(rows)):
                continue
            got = rec(rows + [v])
            if got:
                return got
        return None

    return rec([])


def _random_even_gram(rng, n, spread=2):
    while True:
        b = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
        g = ex.mat_mul(b, ex.transpose(b))
        if ex.mat_det(g) > 0:
            return [[2 * x for x in row] for row in g]


def _random_unimodular(rng, n, steps=4):
    if n == 1:
        return [[rng.choice([1, -1])]]
    u = ex.int_identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q = rng.choice([-2, -1, 1, 2])
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]
    return u


def _crit_oracle_equivalence(threads=None):
    rng = random.Random(1721)
    pairs = 0
    while pairs < 100:
        n = rng.randint(1, 4)
        g1 = _random_even_gram(rng, n)
        if max(abs(x) for row in g1 for x in row) > 40:
            continue
        if rng.random() < 0.5:
            u = _random_unimodular(rng, n)
            g2 = ex.mat_mul(ex.mat_mul(u, g1), ex.transpose(u))
            if max(abs(x) for row in g2 for x in row) > 60:
                continue
        else:
            g2 = _random_even_gram(rng, n)
            if max(abs(x) for row in g2 for x in row) > 40:
                continue
        fast = ex.is_isometric(ex.Lattice(g1), ex.Lattice(g2))
        slow = _brute_isometry(g1, g2)
        if (fast is None) != (slow is None):
            raise SelfTestFailure("isometry oracle split on %s vs %s" % (g1, g2))
        pairs += 1
    boxes = 0
    for _ in range(40):
        n = rng.randint(1, 6)
        g = _random_even_gram(rng, n)
        bound = rng.randint(1, 12)
        if ex.short_vectors(ex.Lattice(g), bound) != _box_short_vectors(g, bound):
            raise SelfTestFailure("short-vector oracle split on %s" % (g,))
        boxes += 1
    return "%d isometry pairs + %d box enumerations" % (pairs, boxes)


CRITERIA = (
    ("conformal-weights", _crit_conformal_weights),
    ("code-models", _crit_code_models),
    ("unimodular-catalogue", _crit_unimodular_catalogue),
    ("fixed-part-duality", _crit_duality),
    ("deep-holes", _crit_deep_holes),
    ("classification-tables", _crit_tables),
    ("lemma-properties", _crit_lemma_properties),
    ("oracle-equivalence", _crit_oracle_equivalence),
)


def _cmd_selftest(args):
    failures = 0
    for name, fn in CRITERIA:
        start = time.time()
        try:
            detail = fn(args.threads)
            verdict = "PASS"
        except SelfTestFailure as err:
            detail = str(err)
            verdict = "FAIL"
            failures += 1
        except (ex.LatticeError, cl.ClassifyError) as err:
            detail = str(err)
            verdict = "FAIL"
            failures += 1
        print("%s %-22s (%6.1fs) %s" % (verdict, name, time.time() - start,
                                        detail))
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser():
    top = argparse.ArgumentParser(prog="deephole")
    sub = top.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice", help="inspect lattice files")
    lat_sub = lat.add_subparsers(dest="action", required=True)
    info = lat_sub.add_parser("info", help="rank, det, minimum, discriminant")
    info.add_argument("file", help="lattice file, or - for stdin")
    info.add_argument("--json", action="store_true")
    info.set_defaults(handler=_cmd_lattice_info)

    fsh = sub.add_parser("frameshape", help="frame shape of an isometry")
    fsh.add_argument("isometry", help="isometry file, or - for stdin")
    fsh.add_argument("lattice", help="lattice file")
    fsh.add_argument("--json", action="store_true")
    fsh.set_defaults(handler=_cmd_frameshape)

    phi = sub.add_parser("phi", help="ground-state weight of a frame shape")
    phi.add_argument("--frameshape", required=True)
    phi.add_argument("--json", action="store_true")
    phi.set_defaults(handler=_cmd_phi)

    for which in ("construct-a", "construct-b"):
        con = sub.add_parser(which, help="code lattice over cyclic moduli")
        con.add_argument("--moduli", required=True,
                         help="comma separated orders, e.g. 2,2,2,2")
        con.add_argument("--code", action="append",
                         help="generator word, repeatable")
        con.add_argument("--out", help="output file (default stdout)")
        con.set_defaults(handler=_cmd_construct, which=which)

    nie = sub.add_parser("niemeier", help="catalogue of rank-24 root lattices")
    nie.add_argument("action", choices=("list", "build"))
    nie.add_argument("name", nargs="?", help="lattice name for build")
    nie.add_argument("--out", help="output file (default stdout)")
    nie.add_argument("--json", action="store_true")
    nie.set_defaults(handler=_cmd_niemeier)

    dh = sub.add_parser("deephole", help="rootless neighbour of a root lattice")
    dh.add_argument("--niemeier", required=True)
    dh.add_argument("--verify", action="store_true")
    dh.add_argument("--json", action="store_true")
    dh.set_defaults(handler=_cmd_deephole)

    cls = sub.add_parser("classify", help="build and check one pair")
    cls.add_argument("--niemeier", required=True)
    cls.add_argument("--code", required=True,
                     help="codeword, digits or comma separated")
    cls.add_argument("--class", dest="cls", required=True)
    cls.add_argument("--json", action="store_true")
    cls.add_argument("--csv", action="store_true")
    cls.set_defaults(handler=_cmd_classify)

    tab = sub.add_parser("tables", help="recompute the classification rows")
    tab.add_argument("--all", action="store_true")
    tab.add_argument("--csv", nargs="?", const="-", default=None,
                     help="write CSV to a file (default stdout)")
    tab.add_argument("--threads", type=int, default=None)
    tab.set_defaults(handler=_cmd_tables)

    st = sub.add_parser("selftest", help="recompute every stored fixture")
    st.add_argument("--threads", type=int, default=None)
    st.set_defaults(handler=_cmd_selftest)

    return top


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except cl.TableRegressionError as err:
        print("regression: %s" % err, file=sys.stderr)
        return EXIT_MISMATCH
    except (ex.LatticeError, cl.ClassifyError, ca.CodeError) as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_DATA
    except OSError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
