import io
import math

import numpy as np
import pytest

from wfalloc.lemmas import rate_oracle
from wfalloc.submodular import (
    GroundSetTooLargeError,
    SetFunctionOracle,
    check_monotone,
    check_setpair_submodular,
    check_submodular_pairwise,
    karamata_holds,
    majorizes,
    violations_to_csv,
)
from wfalloc.waterfill import NoiseProfile


def oracle_from(fn, size):
    return SetFunctionOracle(frozenset(range(size)), fn)


MODULAR = lambda s: float(len(s))
CARD_SQUARED = lambda s: float(len(s)) ** 2
COVERAGE = lambda s: float(min(len(s), 1))
PAIRS = lambda s: float(len(s) * (len(s) - 1) // 2)  # strictly supermodular


# --- pairwise check -------------------------------------------------------

def test_pairwise_modular_clean_even_at_zero_tolerance():
    assert check_submodular_pairwise(oracle_from(MODULAR, 4), tolerance=0.0) == []


def test_pairwise_cardinality_squared_violates():
    violations = check_submodular_pairwise(oracle_from(CARD_SQUARED, 3))
    empty_base = [v for v in violations if v.base_set == frozenset()]
    assert empty_base, "expected a violation rooted at the empty set"
    v = empty_base[0]
    assert v.lhs == pytest.approx(2.0)
    assert v.rhs == pytest.approx(4.0)
    assert v.gap == pytest.approx(2.0)


def test_pairwise_waterfilling_rate_is_clean():
    profile = NoiseProfile([1.0, 2.0, 4.0, 8.0], 1.0)
    assert check_submodular_pairwise(rate_oracle(profile), tolerance=1e-9) == []


def test_pairwise_cap():
    with pytest.raises(GroundSetTooLargeError, match="ground set too large"):
        check_submodular_pairwise(oracle_from(MODULAR, 13))
    assert check_submodular_pairwise(oracle_from(MODULAR, 13), max_ground_size=13) == []


# --- set-pair check -------------------------------------------------------

def test_setpair_modular_and_coverage_clean():
    assert check_setpair_submodular(oracle_from(MODULAR, 3)) == []
    assert check_setpair_submodular(oracle_from(COVERAGE, 3)) == []


def test_setpair_waterfilling_rate_is_clean():
    profile = NoiseProfile([0.5, 1.0, 2.0], 2.0)
    assert check_setpair_submodular(rate_oracle(profile), tolerance=1e-9) == []


def test_setpair_cap():
    with pytest.raises(GroundSetTooLargeError):
        check_setpair_submodular(oracle_from(MODULAR, 9))


def test_definition_equivalence_on_small_ground_sets():
    rng = np.random.default_rng(11)
    functions = [MODULAR, CARD_SQUARED, COVERAGE, PAIRS,
                 lambda s: math.sqrt(len(s)), lambda s: -float(len(s))]
    # plus a few random set functions, which are almost surely not submodular
    for _ in range(6):
        table = rng.uniform(0.0, 1.0, 32)
        functions.append(lambda s, t=table: float(t[sum(1 << e for e in s)]))
    for fn in functions:
        for size in range(1, 6):
            oracle = oracle_from(fn, size)
            pairwise_clean = check_submodular_pairwise(oracle, tolerance=1e-9) == []
            setpair_clean = check_setpair_submodular(oracle, tolerance=1e-9) == []
            assert pairwise_clean == setpair_clean


# --- monotone check -------------------------------------------------------

def test_monotone_examples():
    assert check_monotone(oracle_from(MODULAR, 4)) == []
    falling = check_monotone(oracle_from(lambda s: -float(len(s)), 3))
    assert falling
    assert all(s <= t for s, t in falling)


def test_monotone_waterfilling_rate_clean():
    rng = np.random.default_rng(23)
    for _ in range(20):
        size = int(rng.integers(1, 7))
        profile = NoiseProfile(rng.uniform(0.1, 10.0, size), float(rng.uniform(0.1, 5.0)))
        assert check_monotone(rate_oracle(profile), tolerance=1e-9) == []


def test_monotone_cap():
    with pytest.raises(GroundSetTooLargeError):
        check_monotone(oracle_from(MODULAR, 9))


# --- majorization ---------------------------------------------------------

def test_majorizes_examples():
    assert majorizes([3.0, 1.0], [2.0, 2.0])
    assert not majorizes([2.0, 2.0], [3.0, 1.0])
    assert majorizes([0.7, 5.1, 2.2], [5.1, 0.7, 2.2])  # reflexive up to order
    assert majorizes([], [])


def test_majorizes_length_mismatch():
    with pytest.raises(ValueError, match="length mismatch"):
        majorizes([1.0], [1.0, 0.0])


def test_majorizes_unequal_sums():
    assert not majorizes([2.0, 1.0], [1.0, 1.0])


def test_majorizes_robin_hood_transfers():
    # moving mass from a larger entry to a smaller one always produces a
    # majorized vector
    rng = np.random.default_rng(37)
    for _ in range(100):
        a = rng.uniform(0.5, 10.0, int(rng.integers(2, 8)))
        b = a.copy()
        for _ in range(3):
            hi, lo = np.argmax(b), np.argmin(b)
            if hi == lo:
                continue
            shift = rng.uniform(0.0, 0.5) * (b[hi] - b[lo])
            b[hi] -= shift
            b[lo] += shift
        assert majorizes(a, b)


def test_karamata_examples_and_random_convex_functions():
    assert karamata_holds([3.0, 1.0], [2.0, 2.0], lambda x: x * x)  # 10 >= 8
    assert karamata_holds([1.5, 2.5], [1.5, 2.5], math.exp)
    rng = np.random.default_rng(41)
    convex = [lambda x: x * x, math.exp, lambda x: -math.log(x), lambda x: 1.0 / x]
    for _ in range(50):
        a = rng.uniform(0.5, 10.0, 5)
        b = a.copy()
        hi, lo = np.argmax(b), np.argmin(b)
        shift = rng.uniform(0.0, 0.4) * (b[hi] - b[lo])
        b[hi] -= shift
        b[lo] += shift
        assert majorizes(a, b)
        for g in convex:
            assert karamata_holds(a, b, g)


def test_karamata_length_mismatch():
    with pytest.raises(ValueError, match="length mismatch"):
        karamata_holds([1.0], [1.0, 2.0], math.exp)


# --- CSV dump -------------------------------------------------------------

def test_violations_to_csv(tmp_path):
    violations = check_submodular_pairwise(oracle_from(CARD_SQUARED, 3))
    buf = io.StringIO()
    violations_to_csv(violations, buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "base_set,i,j,lhs,rhs,gap"
    assert len(lines) == len(violations) + 1
    path = tmp_path / "violations.csv"
    violations_to_csv(violations, path)
    assert path.read_text().splitlines()[0] == "base_set,i,j,lhs,rhs,gap"
