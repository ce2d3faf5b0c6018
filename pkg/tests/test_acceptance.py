"""Acceptance criteria 1 to 8, exact arithmetic throughout.

Each test prints one ``PASS``/``FAIL`` line and the lines are repeated in
the terminal summary.
"""
import random
from fractions import Fraction

import sympy

from valtop.closeness import (
    Refutation, Witness, check_P1_failure, check_P2, corrupted_table, exclusion_oracle,
    synthesize_separating_open, t1_counterexample, verify_certificate,
)
from valtop.groups import INF, TRIVIAL, GroupElem, NonNegative, Q, Z, elem, leaves, lex, zero
from valtop.opensets import (
    A1, A2, A3, Interval, OpenSet, closed_points, intersect, is_open_in, member, open_complement,
    tethered,
)
from valtop.rings import QQ, QX, QXY, ZZ, Frac, FractionsOf, parse_elem, random_elem, random_poly
from valtop.spectra import is_normalized, normalize, valspec_member, zariski_member
from valtop.topocompare import (
    SQRT2, cover_incomplete, cover_no_smallest, gamma_prime_equality, is_discrete,
    random_cut_pairs, refines, singleton_open_oracle,
)
from valtop.valuations import (
    Gauss, PAdic, Scaled, Trivial, XAdic, check_axioms, evaluate, evaluate_fraction,
    maximal_ideal_value, monomial, probe_set,
)


def _value(nu, a):
    return evaluate_fraction(nu, a) if isinstance(a, Frac) else evaluate(nu, a)


def _brute_min(p, prime, weights):
    """Min over monomials, with sympy computing the prime multiplicities."""
    best = None
    for exps, c in p.coefficients().items():
        c = Fraction(c)
        val = Fraction(0)
        if prime is not None:
            val += sympy.multiplicity(prime, c.numerator) - sympy.multiplicity(prime, c.denominator)
        val += sum(Fraction(w) * e for w, e in zip(weights, exps))
        best = val if best is None else min(best, val)
    return best


def test_criterion_1_axiom_suite(acceptance):
    rng = random.Random(1001)
    families = {
        "padic": [PAdic(2), PAdic(3), PAdic(7)],
        "xadic": [XAdic()],
        "gauss": [Gauss(2, Fraction(1, 2)), Gauss(3, 2), Gauss(5, Fraction(4, 3))],
        "monomial": [monomial(1, 2), monomial(Fraction(2, 3), 1), monomial((1, 0), (0, 1))],
        "trivial": [Trivial()],
    }
    rings = [ZZ, QQ, QX, QXY, FractionsOf(ZZ)]
    failures, pairs = [], 0
    for name, vals in families.items():
        for R in rings:
            for i in range(1000):
                nu = vals[i % len(vals)]
                a, b = random_elem(R, rng), random_elem(R, rng)
                pairs += 1
                va, vb = _value(nu, a), _value(nu, b)
                if _value(nu, a * b) != va + vb:
                    failures.append(("V1", name, R, a, b))
                if not _value(nu, a + b) >= min(va, vb):
                    failures.append(("V2", name, R, a, b))
            if _value(nu, 1) != zero(nu.group) or _value(nu, 0) is not INF:
                failures.append(("V3", name, R))
    oracle = 0
    for _ in range(500):
        p = random_poly(rng, 1)
        prime = rng.choice([2, 3, 5])
        gamma = Fraction(rng.randint(1, 7), rng.randint(1, 4))
        got = evaluate(Gauss(prime, gamma), p)
        want = INF if p.is_zero() else _brute_min(p, prime, [gamma])
        oracle += 1
        if (got is INF) != (want is INF) or (got is not INF and Fraction(got.coords[0]) != want):
            failures.append(("gauss-oracle", p))
        p = random_poly(rng, 2)
        w = (Fraction(rng.randint(0, 6), rng.randint(1, 3)), Fraction(rng.randint(1, 6), rng.randint(1, 3)))
        got = evaluate(monomial(*w), p)
        want = INF if p.is_zero() else _brute_min(p, None, w)
        oracle += 1
        if (got is INF) != (want is INF) or (got is not INF and Fraction(got.coords[0]) != want):
            failures.append(("monomial-oracle", p))
    ok = acceptance(1, not failures,
                    f"{pairs} element pairs over 5 families x {len(rings)} rings, "
                    f"{oracle} polynomials against the brute-force oracle, {len(failures)} failures")
    assert ok, failures[:5]


def test_criterion_2_certificate_soundness(acceptance):
    rng = random.Random(2002)
    verified, enumerated, excluded_fail, probe_min = 0, 0, [], None
    failures = []
    for _ in range(200):
        f, _nu = corrupted_table(rng)
        v = check_axioms(f)
        if v is None:
            failures.append(("no violation", f))
            continue
        c = synthesize_separating_open(f, v)
        probes = probe_set(c.cylinder.group)
        probe_min = len(probes) if probe_min is None else min(probe_min, len(probes))
        verdict = verify_certificate(c, f, probes)
        if verdict.ok:
            verified += 1
        else:
            failures.append(("verify", verdict.failures))
        if c.cylinder.group == Z:
            n, bad = exclusion_oracle(c, window=6)
            enumerated += n
            excluded_fail += bad
    ok = verified == 200 and not excluded_fail and probe_min >= 50
    acceptance(2, ok, f"{verified}/200 certificates verified against >= {probe_min} probes; "
                      f"{enumerated} enumerated member tables over Z, {len(excluded_fail)} satisfy the axiom")
    assert ok, failures[:3] + excluded_fail[:3]


def _rand_elem(rng, g):
    coords = [rng.randint(-30, 30) if k == "Z" else Fraction(rng.randint(-60, 60), rng.randint(1, 7))
              for k in leaves(g)]
    return GroupElem(g, tuple(coords))


def test_criterion_3_p1_p2_verdicts(acceptance):
    rng = random.Random(3003)
    failures = []
    p2_pairs = 0
    for m in (Z, Q, lex(Z, Z), NonNegative(Q)):
        g = m.group if isinstance(m, NonNegative) else m
        for _ in range(150):
            a, b = _rand_elem(rng, g), _rand_elem(rng, g)
            if isinstance(m, NonNegative):
                a, b = (x if x >= zero(g) else -x for x in (a, b))
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            for top in (b, INF):
                w = check_P2(A1, a, top)
                p2_pairs += 1
                good = (isinstance(w, Witness) and member(w.U, a) and member(w.U2, top)
                        and intersect(w.U, w.U2).is_empty()
                        and is_open_in(w.U, A1) and is_open_in(w.U2, A1))
                if not good:
                    failures.append(("P2", m, a, top))
    refutations = 0
    for g in (Z, Q):
        for top in (A2, A3):
            fail = check_P1_failure(top, g)
            for _ in range(150):
                gm = _rand_elem(rng, g)
                pts = sorted(_rand_elem(rng, g) for _ in range(4))
                if top is A2:
                    V = OpenSet(g, (Interval(None, pts[0]), Interval(pts[1], None, True)))
                    V2 = OpenSet(g, (Interval(None, pts[2]), Interval(pts[3], None, True)))
                else:
                    V = open_complement(closed_points(g, pts[:2]))
                    V2 = open_complement(closed_points(g, pts[2:]))
                r = check_P2(top, gm, INF)
                U = OpenSet(g, (Interval(None, gm + elem(g, 1)),))
                u, u2 = r.counter(U, V)
                if not (isinstance(r, Refutation) and member(V, u2) and u >= u2):
                    failures.append(("P2-refute", top, g, gm, V))
                w = fail.witness(V, V2)
                if not (member(V, w.gamma) and member(V2, -w.gamma) and member(w.hull, zero(g))
                        and not member(fail.U, zero(g))):
                    failures.append(("P1-refute", top, g, V, V2))
                refutations += 2
    ok = not failures
    acceptance(3, ok, f"{p2_pairs} A1 P2 witnesses over Z, Q, lex(Z,Z), nonneg(Q); "
                      f"{refutations} A2/A3 refutations; {len(failures)} failures")
    assert ok, failures[:5]


def test_criterion_4_t1_counterexample(acceptance):
    t = tethered(elem(Z, 2), elem(Z, 1))
    f, rep = t1_counterexample(PAdic(2), 2, elem(Z, 2), t, window=16)
    two_f = f[2] + f[2]
    ok = (f[4] == elem(Z, 2) and two_f == elem(Z, 4) and f[4] != two_f
          and rep.violation.axiom == "V1" and rep.exceptions == 0)
    acceptance(4, ok, f"f(4) = {f[4]}, 2 f(2) = {two_f}; {rep.cylinders_checked} basic cylinders "
                      f"containing f within window 16, {rep.exceptions} without padic(2)")
    assert ok


def test_criterion_5_refinement_lattice(acceptance):
    groups = [Z, Q, lex(Z, Z), lex(Q, Z), lex(Z, Q)]
    failures = []
    for g in groups:
        for fine, coarse in ((A1, A2), (A2, A3), (A1, A3)):
            if not refines(fine, coarse, g).consistent:
                failures.append(("lattice", g, fine, coarse))
    for g in (Z, Q):
        if refines(A1, A2, g).strict is None:
            failures.append(("A2 not strict in A1", g))
    if refines(A2, A3, Q).strict is None:
        failures.append("A3 not strict in A2 over Q")
    z_eq = refines(A2, A3, Z).equal and refines(A3, A2, Z).equal
    if not z_eq:
        failures.append("A2 != A3 over Z")
    for g in groups:
        if not gamma_prime_equality(g).equal:
            failures.append(("nonneg equality", g))
    ok = not failures
    acceptance(5, ok, f"A3 <= A2 <= A1 on {len(groups)} groups; A2 < A1 over Z and Q; A3 < A2 over Q; "
                      f"A2 = A3 over Z on all samples; order = circle over nonneg parts; "
                      f"{len(failures)} failures")
    assert ok, failures


def test_criterion_6_covers(acceptance):
    rng = random.Random(6006)
    fams = {}
    reps = []
    for g in (Q, Z):
        subs = [[_rand_elem(rng, g) for _ in range(rng.randint(1, 6))] for _ in range(120)]
        pts = [_rand_elem(rng, g) for _ in range(120)] + [INF]
        rep = cover_no_smallest(g, pts, subs)
        reps.append(rep)
        fams[str(g)] = (len(rep.covered), len(rep.missed))
    pts = [elem(Q, Fraction(rng.randint(-400, 400), rng.randint(1, 90))) for _ in range(120)] + [INF]
    subs = [random_cut_pairs(SQRT2, rng, rng.randint(1, 5)) for _ in range(120)]
    rep = cover_incomplete(SQRT2, pts, subs)
    reps.append(rep)
    fams["sqrt2 cut"] = (len(rep.covered), len(rep.missed))
    ok = all(r.ok for r in reps) and all(c >= 100 and m >= 100 for c, m in fams.values())
    acceptance(6, ok, "; ".join(f"{k}: {c} points covered, {m} subfamilies with a missed point"
                                for k, (c, m) in fams.items()))
    assert ok, [r.failures[:3] for r in reps]


def test_criterion_7_discreteness(acceptance):
    expected = {Z: True, Q: False, lex(Z, Z): True, lex(Z, Q): False, lex(Q, Q): False,
                lex(Q, Z): True, TRIVIAL: True}
    got = {g: is_discrete(g) for g in expected}
    oracle = {g: singleton_open_oracle(g) for g in expected}
    ok = got == expected == oracle
    agree = "agrees" if got == oracle else "disagrees"
    acceptance(7, ok, ", ".join(f"{g}: {got[g]}" for g in expected) + f"; singleton oracle {agree}")
    assert ok, (got, oracle)


def test_criterion_8_spectra(acceptance):
    rng = random.Random(8008)
    krull = [PAdic(2), PAdic(3), PAdic(5), Gauss(3, Fraction(1, 2)), monomial(2, 3), XAdic(),
             Trivial(), Scaled(PAdic(7), Fraction(3, 2))]
    triples, mismatches = 0, []
    while triples < 600:
        nu = rng.choice(krull)
        R = rng.choice([ZZ, QXY])
        a, b = random_elem(R, rng), random_elem(R, rng)
        if (b == 0) if R == ZZ else b.is_zero():
            continue
        triples += 1
        if valspec_member(nu, a, b) != zariski_member(nu, Frac(R, a, b)):
            mismatches.append((nu, a, b))
    comparisons = 0
    for nu in (monomial(2, 3), monomial(3, 3), Scaled(monomial(1, 4), Fraction(5, 2)), monomial(Fraction(1, 2), 2)):
        n = normalize(nu)
        if not (is_normalized(n) and maximal_ideal_value(n) == GroupElem(n.group, (1,))):
            mismatches.append(("normalize", nu))
        elems = [random_elem(QXY, rng) for _ in range(30)]
        for x in elems:
            for y in elems:
                comparisons += 1
                if (evaluate(nu, x) >= evaluate(nu, y)) != (evaluate(n, x) >= evaluate(n, y)):
                    mismatches.append(("order", nu, x, y))
    h = parse_elem("3/2", FractionsOf(ZZ))
    matrix = [zariski_member(PAdic(p), h) for p in (2, 3, 5, 7)]
    if matrix != [False, True, True, True]:
        mismatches.append(("matrix", matrix))
    ok = not mismatches
    acceptance(8, ok, f"{triples} (nu, a, b) triples agree; normalisation kept {comparisons} comparisons; "
                      f"Zariski matrix at 3/2 for p = 2, 3, 5, 7: {matrix}")
    assert ok, mismatches[:5]
