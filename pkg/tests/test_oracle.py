import pytest

from conftest import X1_EXAMPLE, X2_EXAMPLE
from clhs.oracle import brute_force_exists, count_satisfying_permutations


def test_examples():
    assert brute_force_exists(X1_EXAMPLE, X2_EXAMPLE, ">")
    assert not brute_force_exists([0.9], [0.5], "<")
    assert brute_force_exists([1, 2], [1.5, 2.5], "<")


def test_counts():
    assert count_satisfying_permutations([1, 2], [1.5, 2.5], "<") == 1
    assert count_satisfying_permutations([1, 2], [3, 4], "<") == 2
    assert count_satisfying_permutations([0.9], [0.5], "<") == 0
    assert count_satisfying_permutations([1, 1, 1], [2, 2, 2], "<") == 6


def test_exists_iff_positive_count():
    import random
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 5)
        left = [rng.random() for _ in range(n)]
        right = [rng.random() + 0.2 for _ in range(n)]
        for rel in ("<", ">"):
            assert brute_force_exists(left, right, rel) == (count_satisfying_permutations(left, right, rel) > 0)


def test_cost_guard():
    with pytest.raises(ValueError, match="refuses"):
        brute_force_exists(list(range(9)), list(range(9)), "<")
    with pytest.raises(ValueError):
        count_satisfying_permutations([1, 2], [1], "<")
    with pytest.raises(ValueError):
        brute_force_exists([1], [2], "<=")
