"""Acceptance criteria, one test per criterion, exact tolerances throughout.

Every check is an exact equality of canonical forms (residual identically
zero); the only numeric tolerances are the wall-clock budgets.  Run with
``pytest tests/test_acceptance.py -v -s`` to see one line per criterion.
"""

import random
import time
from itertools import combinations

from qmb.algebra import (
    Element,
    commutative_product,
    commutator,
    normal_form,
    reduce_terms,
)
from qmb.identities import run_suite
from qmb.minors import MinorId, minor_element, quantum_minor
from qmb.ore import (
    LEFT,
    RIGHT,
    compose_product,
    compose_sum,
    extend_to_power,
    multi_minor_witness,
    reduce_relative,
    scale_witness,
    solve_witness,
    witness_for_element,
    witness_generator_constructive,
)
from qmb.scalars import ONE, QINV, Q_MINUS_QINV, LaurentQ


def t(n, i, j):
    return Element.generator(n, i, j)


def _report(number, title, started, budget):
    elapsed = time.monotonic() - started
    print(f"ACCEPTANCE {number:2d}: PASS  ({elapsed:7.2f}s / budget {budget:g}s)  {title}")
    assert elapsed < budget, f"criterion {number} exceeded its {budget}s budget ({elapsed:.1f}s)"


def _rand_word(rng, n, max_len, min_len=0):
    return tuple((rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(min_len, max_len)))


def _rand_element(rng, n, max_len=3, n_terms=2):
    terms = []
    for _ in range(n_terms):
        coeff = LaurentQ({rng.randint(-2, 2): rng.choice((1, 2, -1, -3))})
        terms.append((coeff, _rand_word(rng, n, max_len)))
    return normal_form(n, terms)


def test_criterion_01_relation_fidelity():
    started = time.monotonic()
    n = 2
    assert t(n, 1, 2) * t(n, 1, 1) == QINV * (t(n, 1, 1) * t(n, 1, 2))
    assert t(n, 2, 2) * t(n, 1, 1) - t(n, 1, 1) * t(n, 2, 2) == (
        -Q_MINUS_QINV * (t(n, 1, 2) * t(n, 2, 1))
    )
    # the remaining relation families at n = 2
    assert t(n, 2, 1) * t(n, 1, 1) == QINV * (t(n, 1, 1) * t(n, 2, 1))
    assert t(n, 2, 2) * t(n, 1, 2) == QINV * (t(n, 1, 2) * t(n, 2, 2))
    assert t(n, 2, 2) * t(n, 2, 1) == QINV * (t(n, 2, 1) * t(n, 2, 2))
    assert t(n, 2, 1) * t(n, 1, 2) == t(n, 1, 2) * t(n, 2, 1)
    _report(1, "relation fidelity", started, 1.0)


def test_criterion_02_pbw_confluence_evidence():
    started = time.monotonic()
    rng = random.Random(2024)
    n = 3
    for _ in range(500):
        word = _rand_word(rng, n, 4)
        coeff = LaurentQ({rng.randint(-1, 1): rng.choice((1, -1, 2))})
        left = reduce_terms([(coeff, word)], strategy="leftmost")
        right = reduce_terms([(coeff, word)], strategy="rightmost")
        assert left == right
    for _ in range(500):
        a = _rand_element(rng, n, 4)
        b = _rand_element(rng, n, 4)
        c = _rand_element(rng, n, 4)
        assert (a * b) * c == a * (b * c)
    _report(2, "PBW confluence evidence (1000 randomized checks)", started, 60.0)


def test_criterion_03_central_determinant():
    started = time.monotonic()
    for n in (2, 3):
        D = quantum_minor(n, tuple(range(1, n + 1)), tuple(range(1, n + 1)))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert commutator(t(n, i, j), D).is_zero()
    _report(3, "full-size determinant is central (n = 2, 3)", started, 10.0)


def test_criterion_04_identity_sweep():
    started = time.monotonic()
    report = run_suite(n_max=4, size_cap=3, include_membership=False)
    assert report.all_verified(), [f.config for f in report.failures()]
    counts = report.counts()
    for family in ("centrality", "q-commutation", "muir", "gap-one", "gap-r"):
        assert counts[family]["verified"] > 0
        assert counts[family]["failed"] == 0
    conv = report.conventions
    assert set(conv["q-commutation"]) == {
        "row-outside-above", "row-outside-below", "col-outside-above", "col-outside-below",
    }
    assert all(isinstance(v, int) for v in conv["q-commutation"].values())
    assert set(conv["muir"]) == {"removed<added", "removed>added"}
    assert conv["gap-one-factor-order"] == ["generator-first"]
    assert conv["gap-r-reading"] == [["same-row", "sorted"]]
    print()
    for line in report.summary_lines():
        print("   ", line)
    _report(4, "identity sweep n <= 4, minor size <= 3, conventions resolved", started, 300.0)


def test_criterion_05_witnesses_at_desk_scale():
    started = time.monotonic()
    n = 3
    coincide = True
    for m in (1, 2):
        for K in combinations((1, 2, 3), m):
            for L in combinations((1, 2, 3), m):
                minor = MinorId(K, L)
                for k in (1, 2, 3):
                    for l in (1, 2, 3):
                        e = t(n, k, l)
                        ws_left = solve_witness(n, minor, e, LEFT, m_max=3)
                        ws_right = solve_witness(n, minor, e, RIGHT, m_max=3)
                        assert ws_left.certified and ws_left.power <= 3
                        assert ws_right.certified and ws_right.power <= 3
                        coincide &= ws_left.power == ws_right.power
                        wc_left = witness_generator_constructive(n, minor, k, l, LEFT)
                        wc_right = witness_generator_constructive(n, minor, k, l, RIGHT)
                        assert wc_left.certified and wc_right.certified
                        assert ws_left.power <= wc_left.power
                        assert ws_right.power <= wc_right.power
    print(f"\n    left/right minimal powers coincide on every configuration: {coincide}")
    _report(5, "solver and constructive witnesses, all minors/generators at n = 3", started, 600.0)


def test_criterion_06_hand_checkable_minimality():
    started = time.monotonic()
    n = 2
    minor = MinorId((2,), (2,))
    w = solve_witness(n, minor, t(n, 1, 1), LEFT)
    assert w.power == 2
    assert len(w.infeasible) == 1
    assert w.infeasible[0]["power"] == 1
    assert w.infeasible[0]["reason"] == "inconsistent linear system"
    expected = (
        t(n, 1, 1) * t(n, 2, 2)
        - (Q_MINUS_QINV * (ONE + LaurentQ.q_power(-2))) * (t(n, 1, 2) * t(n, 2, 1))
    )
    assert w.cofactor == expected
    assert w.scale == ONE
    _report(6, "minimal power 2 with exact cofactor, power 1 infeasible", started, 1.0)


def test_criterion_07_composition_soundness():
    started = time.monotonic()
    rng = random.Random(777)
    minors = [
        (2, MinorId((2,), (2,))),
        (2, MinorId((1, 2), (1, 2))),
        (3, MinorId((2, 3), (2, 3))),
        (3, MinorId((1, 2), (1, 3))),
    ]
    done = 0
    while done < 200:
        n, minor = rng.choice(minors)
        gens = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        side = rng.choice((LEFT, RIGHT))
        op = rng.choice(("product", "sum", "relative", "power"))
        k1, l1 = rng.choice(gens)
        w1 = witness_generator_constructive(n, minor, k1, l1, side)
        if op == "product":
            k2, l2 = rng.choice(gens)
            w2 = witness_generator_constructive(n, minor, k2, l2, side)
            w = compose_product(w1, w2)
        elif op == "sum":
            k2, l2 = rng.choice(gens)
            w2 = scale_witness(
                witness_generator_constructive(n, minor, k2, l2, side),
                LaurentQ({rng.randint(-1, 1): rng.choice((1, -1, 2))}),
            )
            if (w1.element + w2.element).is_zero():
                continue
            w = compose_sum(w1, w2)
        elif op == "power":
            w = extend_to_power(w1, rng.randint(1, 2))
        else:
            D = minor_element(n, minor)
            r = w1.element
            # with pair (r, 1) the defect r D - D r fits both side conventions
            defect = r * D - D * r
            if defect.is_zero():
                continue
            w_defect = witness_for_element(n, minor, defect, side, "constructive")
            w = reduce_relative(n, minor, r, (r, 1), w_defect, side)
        assert w.certified
        assert w.residual().is_zero()
        solver = solve_witness(n, minor, w.element, w.side, m_max=w.power + minor.size())
        assert solver.certified
        done += 1
    _report(7, "200 randomized compositions replay and match solver certificates", started, 300.0)


def test_criterion_08_classical_limit():
    started = time.monotonic()
    rng = random.Random(88)
    for _ in range(100):
        n = rng.choice((2, 3))
        a = _rand_element(rng, n, 3)
        b = _rand_element(rng, n, 3)
        assert (a * b).specialize(1) == commutative_product(a.specialize(1), b.specialize(1))
    report = run_suite(n_max=3, size_cap=2, include_membership=False)
    for res in report.results:
        if res.residual is not None:
            assert res.residual.specialize(1) == {}
    _report(8, "q = 1 specialization is classical; all residuals vanish there", started, 30.0)


def test_criterion_09_no_zero_divisors():
    started = time.monotonic()
    rng = random.Random(99)
    checked = 0
    while checked < 500:
        n = rng.choice((2, 3))
        wa = _rand_word(rng, n, 3, min_len=0)
        wb = _rand_word(rng, n, 3, min_len=0)
        comp_a = normal_form(n, [(1, wa)]).homogeneous_components()
        comp_b = normal_form(n, [(1, wb)]).homogeneous_components()
        # random nonzero homogeneous combinations over the word components
        da = list(comp_a.values())[0].multidegree() if comp_a else None
        db = list(comp_b.values())[0].multidegree() if comp_b else None
        if da is None or db is None:
            continue
        from qmb.algebra import basis_monomials

        basis_a = basis_monomials(n, da.rows, da.cols)
        basis_b = basis_monomials(n, db.rows, db.cols)
        a = normal_form(
            n, [(LaurentQ({rng.randint(-1, 1): rng.randint(-2, 2)}), w) for w in basis_a]
        )
        b = normal_form(
            n, [(LaurentQ({rng.randint(-1, 1): rng.randint(-2, 2)}), w) for w in basis_b]
        )
        if a.is_zero() or b.is_zero():
            continue
        assert not (a * b).is_zero()
        checked += 1
    _report(9, "500 random nonzero homogeneous pairs have nonzero product", started, 60.0)


def test_criterion_10_principal_minor_chain():
    started = time.monotonic()
    n = 3
    minors = [MinorId((3,), (3,)), MinorId((2, 3), (2, 3))]
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            chain = multi_minor_witness(n, minors, t(n, k, l), LEFT, strategy="constructive")
            assert chain.certified
            assert chain.residual().is_zero()
    _report(10, "principal-minor chain certified for every generator", started, 120.0)
