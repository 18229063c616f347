"""Acceptance suite: one test per exit criterion, with stated runtime budgets.

Criteria 3-7 register every graph they build in a module-level corpus that
criterion 8 re-examines, so run the file as a whole (plain ``pytest`` does).
Each test prints a single PASS line with its timing; run with ``-s`` to see
them as they happen.
"""

import random
import time
from itertools import combinations_with_replacement

import numpy as np

from zdgraph import graphs as G
from zdgraph import rings as R
from zdgraph import spectral as S
from zdgraph import threshold as T
from zdgraph import verify as V
from zdgraph.orbits import are_isomorphic, aut_orbits, brute_force_orbits
from zdgraph.ringexpr import parse_ring_spec, render_ring_spec
from zdgraph.rings import is_prime

_CORPUS: dict[str, G.Graph] = {}


def _remember(name: str, g: G.Graph) -> None:
    _CORPUS[name] = g


def _report(num: int, detail: str, elapsed: float, budget: float | None) -> None:
    line = f"criterion-{num:02d} PASS: {detail} [{elapsed:.2f}s"
    line += f" < {budget:.0f}s budget]" if budget else "]"
    print(line)
    if budget is not None:
        assert elapsed < budget, f"criterion {num} exceeded its runtime budget"


def _prime_powers(limit: int, primes=None):
    ps = primes or [p for p in range(2, limit + 1) if is_prime(p)]
    out = []
    for p in ps:
        a = 1
        while p ** a <= limit:
            out.append((p, a))
            a += 1
    return sorted(out, key=lambda t: (t[0] ** t[1], t[0]))


def _bool_adjacency(g: G.Graph) -> np.ndarray:
    nbytes = (g.n + 7) // 8
    out = np.zeros((g.n, g.n), dtype=bool)
    for v in range(g.n):
        raw = np.frombuffer(g.rows[v].to_bytes(nbytes, "little"), dtype=np.uint8)
        out[v] = np.unpackbits(raw, bitorder="little")[: g.n]
    return out


def test_criterion_01_order10_reproduction():
    t0 = time.perf_counter()
    g = T.build_threshold_from_code("0000111001")
    part = T.run_block_partition("0000111001")
    qm = S.equitable_quotient_matrix(g, part)
    assert qm.rows() == [[0, 3, 0, 1], [4, 2, 0, 1], [0, 0, 0, 1], [4, 3, 2, 0]]
    qpoly = S.char_poly(qm)
    assert qpoly.coeffs == (1, -2, -21, -12, 24)
    assert S.eigenvalue_multiplicity(g, 0) == 4
    assert S.eigenvalue_multiplicity(g, -1) == 2
    full = S.char_poly(g)
    cofactor, rem = full.divmod_exact(qpoly)
    assert not any(rem)
    x4 = S.IntPolynomial((1, 0, 0, 0, 0))
    xp1 = S.IntPolynomial((1, 1))
    assert cofactor.coeffs == (x4 * xp1 * xp1).coeffs
    _report(1, "order-10 quotient matrix, charpoly, multiplicities, exact factor",
            time.perf_counter() - t0, 1.0)


def test_criterion_02_z27_reproduction():
    t0 = time.perf_counter()
    ring = R.make_ring(R.Zn(27))
    g = G.build_zero_divisor_graph(ring)
    part = G.gcd_class_partition(ring)
    blocks = dict(part.blocks)
    assert [len(b) for _, b in part.blocks] == [18, 6, 2, 1]
    assert blocks["A_3"] == (3, 6, 12, 15, 21, 24)
    assert blocks["A_9"] == (9, 18) and blocks["A_27"] == (0,)
    induced = {lab: G.induced_subgraph(g, b) for lab, b in part.blocks}
    assert induced["A_1"].edge_count() == 0 and induced["A_1"].n == 18
    assert induced["A_3"].edge_count() == 0 and induced["A_3"].n == 6
    assert induced["A_9"].rows == G.complete_graph(2).rows
    assert induced["A_27"].n == 1
    # join over the block skeleton reproduces the graph edge-for-edge
    parts = tuple(
        G.complete_graph(s) if kind == "complete" else G.empty_graph(s)
        for _, kind, s in G.orbit_block_classification(3, 3)
    )
    skeleton = G.Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4) if i + j >= 3])
    joined = G.generalized_join(G.JoinSkeleton(skeleton, parts))
    order = [v for _, b in part.blocks for v in b]
    edges = sorted(tuple(sorted((order[u], order[v]))) for u, v in joined.edges())
    assert edges == sorted(g.edges())
    assert aut_orbits(g).as_sets() == part.as_sets()
    _report(2, "gcd classes, induced blocks, join rebuild, orbits", time.perf_counter() - t0, 1.0)


def test_criterion_03_adjacency_lemma_sweep():
    t0 = time.perf_counter()
    points = _prime_powers(3000)
    violations = 0
    for p, alpha in points:
        n = p ** alpha
        g = G.build_zero_divisor_graph(R.make_ring(R.Zn(n)))
        _remember(f"Z/{n}", g)
        adj = _bool_adjacency(g)
        vals = np.arange(n, dtype=np.int64)
        direct = (np.outer(vals, vals) % n) == 0
        np.fill_diagonal(direct, False)
        exps = np.zeros(n, dtype=np.int64)
        exps[0] = alpha
        work = vals.copy()
        for _ in range(alpha):
            live = (work != 0) & (work % p == 0)
            exps[live] += 1
            work[live] //= p
        rule = (exps[:, None] + exps[None, :]) >= alpha
        np.fill_diagonal(rule, False)
        violations += int((adj != direct).sum()) + int((adj != rule).sum())
    assert violations == 0
    _report(3, f"{len(points)} prime powers <= 3000, zero violations",
            time.perf_counter() - t0, 60.0)


def test_criterion_04_reduced_classification():
    t0 = time.perf_counter()
    positive_q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    for q in positive_q:
        for tag, spec in ((f"F{q}", V._field_spec(q)),
                          (f"Z/2xF{q}", R.Product((R.Zn(2), V._field_spec(q))))):
            g = G.build_zero_divisor_graph(R.make_ring(spec))
            _remember(tag, g)
            res = T.is_threshold(g)
            assert res.is_threshold, tag
    pair_q = [3, 4, 5, 7, 8, 9]
    for q1, q2 in combinations_with_replacement(pair_q, 2):
        spec = R.Product((V._field_spec(q1), V._field_spec(q2)))
        g = G.build_zero_divisor_graph(R.make_ring(spec))
        _remember(f"F{q1}xF{q2}", g)
        res = T.is_threshold(g)
        assert not res.is_threshold and res.witness.validate(g), (q1, q2)
    for qs in combinations_with_replacement([2, 3, 4], 3):
        spec = R.Product(tuple(V._field_spec(q) for q in qs))
        g = G.build_zero_divisor_graph(R.make_ring(spec))
        _remember("F" + "xF".join(map(str, qs)), g)
        res = T.is_threshold(g)
        assert not res.is_threshold and res.witness.validate(g), qs
    _report(4, "fields and F2-pairs threshold; larger field products witnessed non-threshold",
            time.perf_counter() - t0, 60.0)


def test_criterion_05_local_families():
    t0 = time.perf_counter()
    cap = 100_000
    checked = 0

    def check(spec, expected_size):
        nonlocal checked
        name = render_ring_spec(spec)
        ring = R.make_ring(spec, cap=cap)
        assert ring.size == expected_size, name
        g = G.build_zero_divisor_graph(ring, cap=cap)
        assert g.n == expected_size, name
        _remember(name, g)
        res = T.is_threshold(g)
        assert res.is_threshold, name
        checked += 1
        return res.code

    for p in (2, 3, 5):
        alpha = 1
        while p ** (alpha + 1) <= cap:
            check(R.FamA(p, alpha), p ** (alpha + 1))
            alpha += 1
        if p ** p <= cap:
            check(R.FamB(p), p ** p)
    for p in (2, 3, 5, 7):
        check(R.FamC(p), p ** 4)
        check(R.FamD(p), p ** 3)
        alpha = 1
        while p ** alpha <= cap:
            check(R.Zn(p ** alpha), p ** alpha)
            alpha += 1
    # the three isomorphic presentations of the 16-element example agree
    code_a = T.creation_sequence(_CORPUS["FamA(2,3)"])
    code_c = T.creation_sequence(_CORPUS["FamC(2)"])
    assert code_a.bits == code_c.bits
    chain = G.build_zero_divisor_graph(R.make_ring(parse_ring_spec("Z/2[x]/(x^3)")))
    _remember("Z/2[x]/(x^3)", chain)
    assert T.is_threshold(chain).is_threshold
    assert T.creation_sequence(chain).bits == T.creation_sequence(_CORPUS["Z/8"]).bits
    _report(5, f"{checked} local-family rings threshold with exact orders",
            time.perf_counter() - t0, 300.0)


def test_criterion_06_counterexample_fidelity():
    t0 = time.perf_counter()
    ring = R.make_ring(R.MonicQuotient(R.Zn(4), (0, 0, 1)))
    g = G.build_zero_divisor_graph(ring)
    _remember("Z/4[x]/(x^2)", g)
    res = T.is_threshold(g)
    assert not res.is_threshold and res.witness.validate(g)
    x = ring.encode((0, 1))
    x3 = ring.encode((0, 3))
    two = ring.encode((2, 0))
    two_2x = ring.encode((2, 2))
    documented = T.AlternatingFourCycle(x, x3, two, two_2x, "2K2")
    assert documented.validate(g)
    assert g.adjacent(x, x3) and g.adjacent(two, two_2x)
    for u in (x, x3):
        for v in (two, two_2x):
            assert not g.adjacent(u, v)
    _report(6, "x/3x and 2/2+2x form a validated 2K2", time.perf_counter() - t0, 1.0)


def test_criterion_07_nonthreshold_products():
    t0 = time.perf_counter()
    specs = V.product_sweep_specs(10_000)
    assert len(specs) > 100
    for spec in specs:
        g = G.build_zero_divisor_graph(R.make_ring(spec))
        _remember(render_ring_spec(spec), g)
        res = T.is_threshold(g)
        assert not res.is_threshold, render_ring_spec(spec)
        assert res.witness.validate(g), render_ring_spec(spec)
    _report(7, f"{len(specs)} local/mixed products witnessed non-threshold",
            time.perf_counter() - t0, 120.0)


def _code_degree_sequence(bits: str) -> list[int]:
    """Degrees of the code-built graph, from the recipe alone: vertex i gets
    i edges when added dominating, plus one per later dominating vertex."""
    n = len(bits)
    ones_after = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        ones_after[i] = ones_after[i + 1] + (bits[i] == "1")
    return sorted((i if bits[i] == "1" else 0) + ones_after[i + 1] for i in range(n))


def test_criterion_08_oracle_agreement():
    t0 = time.perf_counter()
    assert _CORPUS, "criteria 3-7 populate the corpus; run the module as a whole"
    # the closed-form rebuilt degree sequence matches a real rebuild
    for bits in ("0", "0110", "0000111001", "0" * 50 + "1" * 3):
        assert _code_degree_sequence(bits) == sorted(T.build_threshold_from_code(bits).degrees())
    disagreements = 0
    for name, g in _CORPUS.items():
        res = T.is_threshold(g)
        witness = T.find_alternating_four_cycle(g)
        if res.is_threshold != (witness is None):
            disagreements += 1
            continue
        if res.is_threshold:
            if g.n <= 12:
                assert are_isomorphic(g, T.build_threshold_from_code(res.code)), name
            else:
                assert len(res.code.bits) == g.n, name
                assert _code_degree_sequence(res.code.bits) == sorted(g.degrees()), name
        else:
            assert res.witness.validate(g) and witness.validate(g), name
    rng = random.Random(20260811)
    for _ in range(10_000):
        n = rng.randrange(1, 13)
        d = rng.random()
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < d]
        g = G.Graph.from_edges(n, edges)
        res = T.is_threshold(g)
        witness = T.find_alternating_four_cycle(g)
        if res.is_threshold != (witness is None):
            disagreements += 1
            continue
        if res.is_threshold:
            assert are_isomorphic(g, T.build_threshold_from_code(res.code))
        else:
            assert res.witness.validate(g) and witness.validate(g)
    assert disagreements == 0
    _report(8, f"{len(_CORPUS)} corpus graphs + 10000 random graphs, zero disagreements",
            time.perf_counter() - t0, None)


def test_criterion_09_orbit_claim_audit():
    t0 = time.perf_counter()
    findings = {}
    for n in range(2, 201):
        rep = V.verify_orbit_claim(n)
        if rep.verdict == "fail":
            findings[n] = rep.payload
    # the gcd classes are genuine orbits everywhere except the two degenerate
    # moduli where the class of 1 fuses with its neighbor class
    assert set(findings) == {2, 4}, sorted(findings)
    for n, payload in findings.items():
        assert payload["merged_divisor_classes"] == [[1, 2]]
        assert payload["brute_force_agrees"] is True
    for n in range(2, 11):
        g = G.build_zero_divisor_graph(R.make_ring(R.Zn(n)))
        assert aut_orbits(g).as_sets() == brute_force_orbits(g).as_sets(), n
    _report(9, "orbits equal gcd classes for n <= 200 except documented n in {2, 4}",
            time.perf_counter() - t0, None)


def _spectral_corpus():
    """(name, graph, partitions) with n <= 400: the named families, reduced
    products, local products, and prime powers with alpha >= 2, plus small
    fields; large prime stars are spectrally degenerate and excluded."""
    out = []
    fig = T.build_threshold_from_code("0000111001")
    out.append(("code:0000111001", fig, [T.run_block_partition("0000111001"),
                                         G.twin_partition(fig)]))
    zn_orders = [p ** a for p, a in _prime_powers(400) if a >= 2]
    zn_orders += [2, 3, 5, 7, 11, 13]
    for n in sorted(set(zn_orders)):
        ring = R.make_ring(R.Zn(n))
        g = G.build_zero_divisor_graph(ring)
        out.append((f"Z/{n}", g, [G.gcd_class_partition(ring), G.twin_partition(g)]))
    specs = [R.GF(2, 2), R.GF(3, 2), R.GF(2, 4)]
    specs += [R.FamA(2, a) for a in range(1, 8)] + [R.FamA(3, a) for a in range(1, 5)]
    specs += [R.FamA(5, 1), R.FamA(5, 2), R.FamB(2), R.FamB(3)]
    specs += [R.FamC(2), R.FamC(3), R.FamD(2), R.FamD(3), R.FamD(5), R.FamD(7)]
    for q1, q2 in combinations_with_replacement([3, 4, 5, 7, 8, 9], 2):
        specs.append(R.Product((V._field_spec(q1), V._field_spec(q2))))
    for qs in combinations_with_replacement([2, 3, 4], 3):
        specs.append(R.Product(tuple(V._field_spec(q) for q in qs)))
    for combo in combinations_with_replacement(range(len(V.LOCAL_NONFIELD_SPECS)), 2):
        specs.append(R.Product(tuple(V.LOCAL_NONFIELD_SPECS[i] for i in combo)))
    for spec in specs:
        if R.spec_size(spec) > 400:
            continue
        g = G.build_zero_divisor_graph(R.make_ring(spec))
        out.append((render_ring_spec(spec), g, [G.twin_partition(g)]))
    return out


def test_criterion_10_exact_division():
    t0 = time.perf_counter()
    pairs = 0
    for name, g, partitions in _spectral_corpus():
        full = S.char_poly(g)
        assert full.degree == g.n and full.coeffs[0] == 1
        for part in partitions:
            qm = S.equitable_quotient_matrix(g, part)
            qpoly = S.char_poly(qm)
            _, rem = full.divmod_exact(qpoly)
            assert not any(rem), (name, part.kind)
            pairs += 1
    _report(10, f"{pairs} quotient charpolys divide their adjacency charpolys exactly",
            time.perf_counter() - t0, None)
