from fractions import Fraction
from itertools import combinations
from random import Random

from pytest import mark, raises

from featurefinch.mine.apriori import apriori, as_fraction

RANDOM_TRANSACTIONS = 200


def brute_force(transactions, min_support, max_size):
    records = [frozenset(t) for t in transactions]
    items = sorted(set().union(*records))
    threshold = as_fraction(min_support)
    frequent = {}
    for size in range(1, max_size + 1):
        for candidate in combinations(items, size):
            candidate = frozenset(candidate)
            support = Fraction(
                sum(candidate <= record for record in records), len(records)
            )
            if support >= threshold:
                frequent[candidate] = support
    return frequent


def test_as_fraction():
    assert as_fraction(0.01) == Fraction(1, 100)
    assert as_fraction(Fraction(1, 3)) == Fraction(1, 3)


def test_apriori():
    transactions = [{"a", "b"}, {"a", "b"}, {"a"}, {"c"}]

    frequent = apriori(transactions, 0.5)

    assert frequent == {
        frozenset({"a"}): Fraction(3, 4),
        frozenset({"b"}): Fraction(1, 2),
        frozenset({"a", "b"}): Fraction(1, 2),
    }


def test_support_threshold_is_inclusive():
    frequent = apriori([{"a"}, {"b"}, {"a"}], Fraction(1, 3))

    assert frequent[frozenset({"b"})] == Fraction(1, 3)


def test_max_size_limits_itemsets():
    transactions = [{"a", "b", "c"}] * 3

    assert max(map(len, apriori(transactions, 0.5, max_size=2))) == 2
    assert len(apriori(transactions, 0.5, max_size=3)) == 7


def test_no_transactions():
    assert apriori([], 0.1) == {}


@mark.parametrize(
    "min_support, max_size", [(0, 2), (1.5, 2), (-0.1, 2), (0.5, 0)]
)
def test_invalid_thresholds(min_support, max_size):
    with raises(ValueError):
        apriori([{"a"}], min_support, max_size)


@mark.parametrize("seed", range(RANDOM_TRANSACTIONS))
def test_apriori_matches_brute_force(seed):
    rng = Random(seed)
    items = "abcdef"
    transactions = [
        set(rng.sample(items, rng.randint(1, 4)))
        for _ in range(rng.randint(1, 30))
    ]
    min_support = rng.choice([0.05, 0.1, 0.25, 0.5])
    max_size = rng.randint(1, 4)

    assert apriori(transactions, min_support, max_size) == brute_force(
        transactions, min_support, max_size
    )
