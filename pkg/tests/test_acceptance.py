"""Acceptance criteria; each test prints one ``criterion N: PASS|FAIL`` line."""

import itertools
import random
import time

import pytest

from kmonoid import fixtures, lattice
from kmonoid.element import Element, enumerate_degree, from_word
from kmonoid.group import (CodeBijection, compose, equal_in_group, identity_element, random_bijection,
                           refine_to)
from kmonoid.ideals import alignment_probe, code_degree, common_upper, expand_code, is_maximal_code
from kmonoid.laws import element_laws, group_laws
from kmonoid.presentation import (validate, validate_associativity, validate_squares)
from kmonoid.selfsim import (act_word, parse_relator, relators_to_squares, validate_selfsimilar,
                             wfp_check, zappa_szep_laws)
from cli_cases import GOLDEN_CASES, GOLDEN_DIR, invoke, populate
from oracles import divisor_index, factorization_counts, slice_by_definition


@pytest.fixture
def verdict(request):
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(number, title, checks):
        """checks: list of (description, ok)."""
        ok = all(passed for _, passed in checks)
        lines = [f"criterion {number}: {'PASS' if ok else 'FAIL'} {title}"]
        lines += [f"    failed: {desc}" for desc, passed in checks if not passed]
        for line in lines:
            if reporter is not None:
                reporter.write_line(line)
            else:
                print(line)
        assert ok, "; ".join(desc for desc, passed in checks if not passed)

    return emit


def test_criterion_01_counterexample_rejected(verdict):
    p = fixtures.counterexample3()
    start = time.perf_counter()
    squares, cubes = validate(p)
    elapsed = time.perf_counter() - start
    first = cubes.failures[0] if cubes.failures else None
    verdict(1, "counterexample fails the cube check at (a, b, c)", [
        ("squares complete and involutive", squares.ok),
        ("cube check fails", not cubes.ok),
        ("witness (a,b,c): (c3,b4,a2) vs (c3,b3,a2)",
         first == ("cube", ("a", "b", "c", "c3", "b4", "a2", "c3", "b3", "a2"))),
        (f"runtime {elapsed:.3f}s < 1s", elapsed < 1.0),
    ])


def test_criterion_02_interleavings(verdict):
    p = fixtures.prod22()
    target = Element(p, [["a", "b"], ["α", "β", "β"]])
    forms = set()
    for spots in itertools.combinations(range(5), 2):
        latin, greek = iter("ab"), iter(["α", "β", "β"])
        forms.add(from_word(p, [next(latin) if i in spots else next(greek) for i in range(5)]))
    verdict(2, "all 10 interleavings of ab through αββ agree", [
        ("single normal form (ab, αββ)", forms == {target}),
        ("degree (2,3)", target.degree == (2, 3)),
    ])


def test_criterion_03_unique_factorization(verdict):
    cases = [("prod22", fixtures.prod22(), (2, 2))]
    cases += [(f"face{i}{j}", fixtures.counterexample3_face(i, j), (2, 2, 2))
              for i, j in [(1, 2), (1, 3), (2, 3)]]
    cases += [("random3", fixtures.random_presentation(0), (2, 2, 2))]
    start = time.perf_counter()
    checks = []
    for name, p, bound in cases:
        assert all(r.ok for r in validate(p))
        slices, good = {}, True
        for d in lattice.below(bound):
            for hits, target in factorization_counts(p, d, slices).values():
                good &= set(hits) == set(target) and set(hits.values()) == {1}
        checks.append((f"{name}: every element and split has exactly one factorization", good))
    elapsed = time.perf_counter() - start
    checks.append((f"runtime {elapsed:.1f}s < 30s", elapsed < 30))
    verdict(3, "brute-force factorization counts are all 1", checks)


def test_criterion_04_law_suite(verdict):
    cases = {"prod22": fixtures.prod22(), "n3": fixtures.nk(3), "rsv": fixtures.rsv_base(),
             "random3": fixtures.random_presentation(0)}
    cases.update({f"face{i}{j}": fixtures.counterexample3_face(i, j) for i, j in [(1, 2), (1, 3), (2, 3)]})
    checks = []
    for name, p in cases.items():
        counts = element_laws(p, 10_000, seed=11)
        checks.append((f"{name}: {counts}", not any(counts.values())))
    verdict(4, "10^4 random cases per fixture, zero law failures", checks)


def _multiples_exhaustive(p, index, small):
    for a, b in itertools.product(small, repeat=2):
        brute = {d for d, divs in index.items() if divs.get(a.degree) == a and divs.get(b.degree) == b}
        joins = common_upper(a, b)
        closure = {d for d, divs in index.items() if any(divs.get(c.degree) == c for c in joins)}
        if brute != closure:
            return False
    return True


def _multiples_by_index(index, small_bound):
    """Both inclusions for every pair that has a common multiple inside the box."""
    joins, max_size = {}, 0
    for d, divs in index.items():
        members = [x for m, x in divs.items() if lattice.leq(m, small_bound)]
        for a, b in itertools.product(members, repeat=2):
            if (a, b) not in joins:
                found = joins[a, b] = common_upper(a, b)
                max_size = max(max_size, len(found))
                for c in found:
                    if index[c].get(a.degree) != a or index[c].get(b.degree) != b:
                        return False, joins, max_size
            if not any(divs.get(c.degree) == c for c in joins[a, b]):
                return False, joins, max_size
    return True, joins, max_size


def test_criterion_05_common_multiples(verdict):
    p22 = fixtures.prod22()
    small22 = [x for m in lattice.below((2, 2)) for x in slice_by_definition(p22, m)]
    checks = [("prod22: every pair, common multiples = upward closure of the join",
               _multiples_exhaustive(p22, divisor_index(p22, (2, 2), (3, 3)), small22))]

    p = fixtures.rsv_base()
    index = divisor_index(p, (2, 2), (3, 3))
    ok, joins, max_size = _multiples_by_index(index, (2, 2))
    checks.append((f"rsv: {len(joins)} pairs with a common multiple below (3,3) agree", ok))
    # pairs without any common multiple in the box must have an empty join
    small = [x for m in lattice.below((2, 2)) for x in slice_by_definition(p, m)]
    rng = random.Random(5)
    sampled = [(rng.choice(small), rng.choice(small)) for _ in range(20_000)]
    lonely = [(a, b) for a, b in sampled if (a, b) not in joins]
    checks.append((f"rsv: {len(lonely)} sampled pairs without common multiples have empty joins",
                   all(not common_upper(a, b) for a, b in lonely)))
    checks.append(("rsv: largest join agrees with the alignment probe",
                   max_size == alignment_probe(p, (2, 2)).max_join_size))
    verdict(5, "brute-force common multiples match the join-degree generators", checks)


def test_criterion_06_alignment(verdict):
    checks = []
    for name, p, bound in [("prod22", fixtures.prod22(), (2, 2)), ("n2", fixtures.nk(2), (2, 2)),
                           ("n1", fixtures.nk(1), (4,)), ("n3", fixtures.nk(3), (1, 1, 1))]:
        report = alignment_probe(p, bound)
        checks.append((f"{name}: max join size {report.max_join_size} == 1", report.max_join_size == 1))
    golden = (GOLDEN_DIR / "alignment-rsv.txt").read_text(encoding="utf-8")
    live = "".join(line + "\n" for line in alignment_probe(fixtures.rsv_base(), (2, 2)).lines())
    checks.append(("rsv probe completes and matches its golden file", live == golden))
    verdict(6, "direct products are singly aligned; rsv maximum recorded", checks)


def test_criterion_07_maximal_codes(verdict):
    checks = []
    strict = [("prod22", fixtures.prod22(), (2, 2)), ("n2", fixtures.nk(2), (2, 2)),
              ("rsv", fixtures.rsv_base(), (2, 2)), ("random3", fixtures.random_presentation(0), (2, 2, 2))]
    for name, p, bound in strict:
        checks.append((f"{name}: every C_m with m <= {lattice.render(bound)} is maximal",
                       all(is_maximal_code(enumerate_degree(p, m)) for m in lattice.below(bound))))
    rng = random.Random(8)
    for name, p, _ in strict:
        chains_ok = True
        for _ in range(5):
            code = frozenset(enumerate_degree(p, lattice.zero(p.k)))
            for _ in range(4):
                code = expand_code(code, rng.choice(sorted(code)), rng.randint(1, p.k))
                chains_ok &= is_maximal_code(code)
        checks.append((f"{name}: 5 expansion chains stay maximal", chains_ok))
    verdict(7, "slices are maximal codes and expansion keeps maximality", checks)


def test_criterion_08_group_axioms(verdict):
    start = time.perf_counter()
    checks = []
    for name, k in [("V", 1), ("2V", 2)]:
        counts = group_laws(fixtures.nk(k), 1000, seed=21)
        counts.pop("refinement")
        checks.append((f"{name}: {counts}", not any(counts.values())))
    v = fixtures.nk(1)
    a, b = from_word(v, ["a"]), from_word(v, ["b"])
    swap = CodeBijection({a: b, b: a})
    checks.append(("swap∘swap equals the identity", equal_in_group(compose(swap, swap), identity_element(v))))
    elapsed = time.perf_counter() - start
    checks.append((f"runtime {elapsed:.1f}s < 60s", elapsed < 60))
    verdict(8, "10^3 random triples satisfy the group axioms in V and 2V", checks)


def test_criterion_09_refinement(verdict):
    rng = random.Random(34)
    failures = 0
    for n in range(1000):
        p = fixtures.nk(1 + n % 2)
        theta = random_bijection(p, rng.randint(0, 4), rng)
        low = code_degree(theta.pairing, p.k)
        m = tuple(c + rng.randint(0, 2) for c in low)
        failures += not equal_in_group(theta, refine_to(theta, m))
    verdict(9, "refinement never changes the group element", [(f"{failures} failures in 1000", failures == 0)])


def test_criterion_10_rsv_fixture(verdict):
    forward = relators_to_squares([parse_relator(r) for r in fixtures.RSV_BC],
                                  fixtures.RSV_INVERSE, fixtures.RSV_FAMILY)
    A = fixtures.rsv()
    base = A.base
    inv = fixtures.RSV_INVERSE

    def image(g, x):
        return act_word(A, [g], from_word(base, [x]))[0].letters

    got = image(inv["a1"], inv["b1"])
    verdict(10, "rsv relators, squares, action and spot values", [
        ("relators give exactly 48 squares", len(forward) == 48),
        ("square map complete and mutually inverse", validate_squares(base).ok),
        ("base passes the cube check", validate_associativity(base).ok),
        ("action is self-similar", validate_selfsimilar(A).ok),
        ("a1·c1 = c4", image("a1", "c1") == ("c4",)),
        (f"a1⁻¹·b1⁻¹ = b2⁻¹ (got {' '.join(got)}, expected {inv['b2']})", got == (inv["b2"],)),
    ])


def test_criterion_11_selfsimilar_laws(verdict):
    checks = []
    for name, A, bound in [("adding machine", fixtures.adding_machine(), (2,)), ("rsv", fixtures.rsv(), 2)]:
        p = A.base
        elements = [x for m in lattice.below((2,) * p.k) if sum(m) <= 2 for x in enumerate_degree(p, m)]
        words = [()] + [(s,) for s in A.symbols]
        laws = zappa_szep_laws(A, elements, words)
        checks.append((f"{name}: {len(laws)} Zappa–Szép identity failures", not laws))
        report = wfp_check(A, bound, 3)
        checks.append((f"{name}: wfp at bound 2, window 3 ({len(report.failures)} failures, "
                       f"{len(report.inconclusive)} inconclusive)", report.ok))
    verdict(11, "Zappa–Szép identities and windowed WFP", checks)


def test_criterion_12_determinism(verdict, tmp_path):
    populate(tmp_path)
    checks = []
    for name, (argv, expected) in sorted(GOLDEN_CASES.items()):
        golden = (GOLDEN_DIR / f"{name}.txt").read_bytes()
        runs = [invoke(argv, tmp_path) for _ in range(3)]
        checks.append((name, all(code == expected and text.encode("utf-8") == golden
                                 for code, text in runs)))
    for jobs in ("1", "2", "8"):
        code, text = invoke(["validate", "{dir}/counterexample3.km", "--jobs", jobs], tmp_path)
        golden = (GOLDEN_DIR / "validate-counterexample3.txt").read_bytes()
        checks.append((f"validate with {jobs} threads", code == 3 and text.encode("utf-8") == golden))
    verdict(12, "CLI golden files are byte-identical across runs and thread counts", checks)
