import random
from fractions import Fraction

from leibder.algebra import Algebra


def rng(seed):
    return random.Random(seed)


def random_algebra(r, n, density=0.3, lo=-3, hi=3):
    products = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if r.random() < density:
                    v = r.randint(lo, hi)
                    if v:
                        products.setdefault((i, j), {})[k] = v
    return Algebra(n, products)


def random_element(r, n):
    return tuple(Fraction(r.randint(-5, 5), r.randint(1, 4)) for _ in range(n))
