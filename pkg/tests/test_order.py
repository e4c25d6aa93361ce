import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shuffleop.order import MonomialOrder, Ordering
from shuffleop.trees import enumerate_monomials, parse_tree, shuffle_compose

GENS = ["x", "z"]
ORDER = MonomialOrder(GENS)
MONOMIALS = {n: enumerate_monomials(GENS, n) for n in range(1, 6)}


def test_examples():
    m = parse_tree("x(z(1 3) 2)")
    assert ORDER.compare(m, m) == Ordering.EQUAL
    assert ORDER.compare(parse_tree("z(z(1 2) 3)"), parse_tree("z(1 z(2 3))")) == Ordering.GREATER
    assert ORDER.compare(parse_tree("x(x(1 2) 3)"), parse_tree("x(1 x(2 3))")) == Ordering.GREATER
    assert ORDER.compare(parse_tree("x(1 x(2 3))"), parse_tree("x(x(1 2) 3)")) == Ordering.LESS


def test_arity_mismatch():
    with pytest.raises(ValueError):
        ORDER.compare(parse_tree("x(1 2)"), parse_tree("x(1 x(2 3))"))


def test_unknown_generator():
    with pytest.raises(ValueError):
        ORDER.key(parse_tree("w(1 2)"))


@pytest.mark.parametrize("n", range(1, 6))
def test_total_on_each_arity(n):
    # distinct monomials get distinct keys, so sorting is a strict total order
    ms = MONOMIALS[n]
    assert len({ORDER.key(m) for m in ms}) == len(ms)


@given(st.integers(2, 5), st.data())
@settings(max_examples=200, deadline=None)
def test_trichotomy_and_transitivity(n, data):
    a, b, c = (data.draw(st.sampled_from(MONOMIALS[n])) for _ in range(3))
    ab, ba = ORDER.compare(a, b), ORDER.compare(b, a)
    assert ab == -ba
    assert (ab == Ordering.EQUAL) == (a == b)
    if ab == Ordering.GREATER and ORDER.compare(b, c) == Ordering.GREATER:
        assert ORDER.compare(a, c) == Ordering.GREATER


def _contexts(p, q):
    n = p + q - 1
    for slot in range(1, p + 1):
        for extra in combinations(range(slot + 1, n + 1), q - 1):
            yield slot, (slot,) + extra


@pytest.mark.parametrize("precedence", [["x", "z"], ["z", "x"]])
def test_compatible_with_composition(precedence):
    order = MonomialOrder(precedence)
    rng = random.Random(7)
    checked = 0
    for _ in range(400):
        k = rng.randint(2, 4)
        p = rng.randint(2, 6 - k)
        a, b = rng.sample(MONOMIALS[k], 2)
        if order.key(a) < order.key(b):
            a, b = b, a
        t = rng.choice(MONOMIALS[p])
        for slot, labels in _contexts(p, k):
            assert order.key(shuffle_compose(t, slot, a, labels)) > order.key(shuffle_compose(t, slot, b, labels))
            checked += 1
        for slot, labels in _contexts(k, p):
            assert order.key(shuffle_compose(a, slot, t, labels)) > order.key(shuffle_compose(b, slot, t, labels))
            checked += 1
    assert checked > 1000


def test_precedence_must_be_unique():
    with pytest.raises(ValueError):
        MonomialOrder(["x", "x"])
