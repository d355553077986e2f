import random
from fractions import Fraction

import pytest

from radsym.arith import exact_lth_root, factorize
from radsym.radical import (
    InconsistentTargetsError,
    OracleScaleError,
    brute_force_kernel,
    consistency_check,
    degree,
    exponent_matrix,
    normalize_inputs,
    rank_and_kernel,
    reduce_basis,
    transform_quotient,
    translate_targets,
)


def brute_count(l, values):
    """Independent relation count: enumerate all exponent tuples directly."""
    import itertools

    count = 0
    for lam in itertools.product(range(l), repeat=len(values)):
        prod = 1
        for a, e in zip(values, lam):
            prod *= a**e
        if exact_lth_root(prod, l) is not None:
            count += 1
    return count


def test_normalize_inputs():
    s = normalize_inputs(3, [8, 12, -5, 12, 1])
    assert s.raw == (8, 12, -5, 12, 1)
    assert s.normalized == (12, 5, 12)  # duplicates kept, 8 and 1 dropped
    assert s.index_map == (None, 0, 1, 2, None)
    with pytest.raises(ValueError):
        normalize_inputs(3, [0])
    with pytest.raises(ValueError):
        normalize_inputs(4, [2])
    with pytest.raises(ValueError):
        normalize_inputs(2, [2])


def test_exponent_matrix_examples():
    s = normalize_inputs(3, [2, 3, 6])
    m = exponent_matrix(s)
    assert m.primes == (2, 3)
    assert m.entries.tolist() == [[1, 0], [0, 1], [1, 1]]
    m = exponent_matrix(normalize_inputs(3, [2, 4]))
    assert m.primes == (2,) and m.entries.tolist() == [[1], [2]]
    m = exponent_matrix(normalize_inputs(3, [12, 18]))
    assert m.primes == (2, 3) and m.entries.tolist() == [[2, 1], [1, 2]]


def test_rank_and_kernel_examples():
    assert 2 * 3 * 6**2 == 6**3  # the relation behind the expected kernel
    kb = rank_and_kernel(exponent_matrix(normalize_inputs(3, [2, 3, 6])))
    assert kb.rank == 2 and kb.basis == ((1, 1, 2),)
    assert brute_count(3, (2, 3, 6)) == 3

    assert 2 * 4 == 2**3
    kb = rank_and_kernel(exponent_matrix(normalize_inputs(3, [2, 4])))
    assert kb.rank == 1 and kb.basis == ((1, 1),)
    assert brute_count(3, (2, 4)) == 3

    kb = rank_and_kernel(exponent_matrix(normalize_inputs(3, [])))
    assert kb.rank == 0 and kb.basis == ()


def test_kernel_soundness_and_completeness():
    rng = random.Random(4242)
    for l in (3, 5):
        for _ in range(30):
            values = [rng.choice([2, 3, 5, 6, 10, 12, 18, 45, 50]) for _ in range(rng.randint(1, 4))]
            s = normalize_inputs(l, values)
            kb = rank_and_kernel(exponent_matrix(s))
            for vec in kb.basis:
                prod = 1
                for a, e in zip(s.normalized, vec):
                    prod *= a**e
                assert exact_lth_root(prod, l) is not None
            # span size matches the exhaustive count
            m = len(s.normalized)
            assert brute_count(l, s.normalized) == l ** (m - kb.rank)


def test_reduce_basis_example_12_18():
    s = normalize_inputs(3, [12, 18])
    assert 12 * 18 == 6**3  # the pair collapses to one generator
    r = reduce_basis(s)
    assert r.t == 1
    assert r.b == (12,)
    assert r.exclusive_primes == (2,)
    assert r.transform.tolist() == [[1, 0]]


def test_reduce_basis_no_shared_primes():
    r = reduce_basis(normalize_inputs(3, [2, 3]))
    assert r.t == 2 and r.b == (2, 3)
    assert r.transform.tolist() == [[1, 0], [0, 1]]


def test_reduce_basis_drops_powers():
    r = reduce_basis(normalize_inputs(3, [8]))
    assert r.t == 0 and r.b == ()


def test_reduce_basis_exclusive_after_backward_elimination():
    # 6 and 2 share the prime 2; clearing it leaves {2, 9} whose pivot
    # primes 2 and 3 are exclusive in both directions
    r = reduce_basis(normalize_inputs(3, [6, 2]))
    assert r.t == 2
    assert sorted(r.b) == [2, 9]
    for j, q in enumerate(r.exclusive_primes):
        for k, b in enumerate(r.b):
            assert (b % q == 0) == (j == k)


def test_reduce_basis_invariants_random():
    rng = random.Random(777)
    for l in (3, 5):
        for _ in range(40):
            values = []
            for _ in range(rng.randint(1, 4)):
                a = rng.randint(2, 400) * rng.choice([1, -1])
                if rng.random() < 0.3:
                    a *= l
                if values and rng.random() < 0.2:
                    a = values[-1]
                values.append(a)
            s = normalize_inputs(l, values)
            r = reduce_basis(s)
            # every b is l-th-power-free and > 1
            for b in r.b:
                assert b > 1
                assert all(e < l for _, e in factorize(b).factors)
            # pairwise exclusivity of the pivot primes
            for j, q in enumerate(r.exclusive_primes):
                for k, b in enumerate(r.b):
                    assert (b % q == 0) == (j == k)
            # transform rows reproduce each b up to a rational l-th power
            for j in range(r.t):
                quotient = transform_quotient(s, r, j)
                num = exact_lth_root(quotient.numerator, l)
                den = exact_lth_root(quotient.denominator, l)
                assert num is not None and den is not None
                assert Fraction(num, den) ** l == quotient


def test_degree_examples():
    assert degree(normalize_inputs(3, [2, 3, 6])) == 9
    assert degree(normalize_inputs(5, [2, 3])) == 25
    assert brute_count(5, (2, 3)) == 1
    assert degree(normalize_inputs(3, [])) == 1
    assert degree(normalize_inputs(3, [2, 3, 6]), "reduction") == 9
    with pytest.raises(ValueError):
        degree(normalize_inputs(3, [2]), "guess")


def test_brute_force_kernel_examples():
    assert brute_force_kernel(normalize_inputs(3, [2, 3, 6])) == 3
    assert brute_force_kernel(normalize_inputs(3, [2, 3])) == 1
    assert brute_force_kernel(normalize_inputs(3, [])) == 1
    with pytest.raises(OracleScaleError):
        brute_force_kernel(normalize_inputs(3, [2, 3, 5]), limit=10)


def test_consistency_check_examples():
    s = normalize_inputs(3, [2, 3, 6])
    assert consistency_check(s, (1, 1, 2))
    assert not consistency_check(s, (1, 1, 1))
    s2 = normalize_inputs(3, [2, 3])
    for r in [(0, 0), (1, 2), (2, 2)]:
        assert consistency_check(s2, r)
    with pytest.raises(ValueError):
        consistency_check(s2, (1,))


def test_consistency_dropped_entries_need_zero():
    s = normalize_inputs(3, [8, 2])
    assert consistency_check(s, (0, 1))
    assert not consistency_check(s, (1, 1))


def test_translate_targets():
    s = normalize_inputs(3, [12, 18])
    r = reduce_basis(s)
    assert consistency_check(s, (1, 2))
    assert translate_targets(r, (1, 2), input_set=s) == (1,)
    with pytest.raises(InconsistentTargetsError):
        translate_targets(r, (1, 1), input_set=s)

    s2 = normalize_inputs(3, [2, 3])
    r2 = reduce_basis(s2)
    assert translate_targets(r2, (2, 1)) == (2, 1)  # identity transform

    s3 = normalize_inputs(3, [8])
    assert translate_targets(reduce_basis(s3), (0,), input_set=s3) == ()
    with pytest.raises(ValueError):
        translate_targets(r2, (1,))


def test_triple_equality_random():
    rng = random.Random(31337)
    for l in (3, 5):
        for _ in range(40):
            values = [rng.randint(2, 1000) * rng.choice([1, -1]) for _ in range(rng.randint(1, 4))]
            s = normalize_inputs(l, values)
            t = reduce_basis(s).t
            rank = rank_and_kernel(exponent_matrix(s)).rank
            relations = brute_force_kernel(s)
            m = len(s.normalized)
            assert l**t == l**rank == l**m // relations
