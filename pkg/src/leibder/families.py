"""The five filiform Leibniz families and their derivation-dimension tables.

Generators
----------
``ngf1``, ``ngf2``, ``ngf3`` are the naturally graded filiform algebras;
``flb`` and ``slb`` the two parametrised classes built on them.  All
generators return :class:`~leibder.algebra.Algebra` objects with 1-based
indices.

Case tables
-----------
The FLb (``"T4"``) and SLb (``"T5"``) dimension tables are encoded as
zero/nonzero predicates on the parameter vector.  Reading rules:

* a quantifier such as "there exists i ... with alpha_j = 0 for j != i"
  ranges over the parameter indices the case does not pin explicitly
  (e.g. ``6..n-1`` once alpha_4 and alpha_5 are fixed);
* the threshold shape "alpha_i != 0 for i >= l, alpha_i = 0 for i < l"
  likewise ranges over the unpinned indices;
* a case that names a single parameter outside the family's index range at
  this ``n`` (alpha_5 when n = 5, say) does not apply.

Classifiers report every matching case so that overlaps and gaps in the
tables show up in reports instead of being hidden by ordering.
"""
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import Algebra

FAMILIES = ("ngf1", "ngf2", "ngf3", "flb", "slb")
MIN_DIM = {"ngf1": 3, "ngf2": 3, "ngf3": 4, "flb": 5, "slb": 5}

TIERS = {"n-1": lambda n: n - 1, "n": lambda n: n, "n+1": lambda n: n + 1,
         "n+2": lambda n: n + 2, "2n-1": lambda n: 2 * n - 1}
TIER_ORDER = ("2n-1", "n+2", "n+1", "n", "n-1")


def _check_min(family, n):
    if n < MIN_DIM[family]:
        raise ValueError(f"{family} needs n >= {MIN_DIM[family]}, got {n}")


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class FLbParams:
    """alpha_4 .. alpha_(n-1), theta and the extra alpha_n of the [e_2, e_2] row."""

    alphas: dict = field(default_factory=dict)
    theta: Fraction = Fraction(0)
    alpha_n: Fraction = Fraction(0)

    def __post_init__(self):
        # zero entries are dropped so equal parameter vectors compare equal
        object.__setattr__(self, "alphas", {int(i): Fraction(v) for i, v in sorted(self.alphas.items()) if v})
        object.__setattr__(self, "theta", Fraction(self.theta))
        object.__setattr__(self, "alpha_n", Fraction(self.alpha_n))

    def alpha(self, i):
        return self.alphas.get(i, Fraction(0))

    def validate(self, n):
        bad = [i for i in self.alphas if not 4 <= i <= n - 1]
        if bad:
            raise ValueError(f"FLb alpha index {bad[0]} outside 4..{n - 1}")

    def items(self, n):
        """Named parameter values in a fixed order."""
        out = [("theta", self.theta)]
        out += [(f"alpha{i}", self.alpha(i)) for i in range(4, n)]
        out.append(("alpha_n", self.alpha_n))
        return out


@dataclass(frozen=True)
class SLbParams:
    """beta_3 .. beta_(n-1) and gamma."""

    betas: dict = field(default_factory=dict)
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "betas", {int(i): Fraction(v) for i, v in sorted(self.betas.items()) if v})
        object.__setattr__(self, "gamma", Fraction(self.gamma))

    def beta(self, i):
        return self.betas.get(i, Fraction(0))

    def validate(self, n):
        bad = [i for i in self.betas if not 3 <= i <= n - 1]
        if bad:
            raise ValueError(f"SLb beta index {bad[0]} outside 3..{n - 1}")

    def items(self, n):
        return [("gamma", self.gamma)] + [(f"beta{i}", self.beta(i)) for i in range(3, n)]


# ---------------------------------------------------------------------------
# generators


class _Table:
    def __init__(self):
        self.products = {}

    def add(self, i, j, k, v):
        v = Fraction(v)
        if v:
            out = self.products.setdefault((i, j), {})
            out[k] = out.get(k, 0) + v


def ngf1(n):
    _check_min("ngf1", n)
    t = _Table()
    t.add(1, 1, 3, 1)
    for i in range(2, n):
        t.add(i, 1, i + 1, 1)
    return Algebra(n, t.products)


def ngf2(n):
    _check_min("ngf2", n)
    t = _Table()
    t.add(1, 1, 3, 1)
    for i in range(3, n):
        t.add(i, 1, i + 1, 1)
    return Algebra(n, t.products)


def ngf3(n, alpha=0):
    """The filiform Lie family; ``alpha`` may be 1 only for even ``n``."""
    _check_min("ngf3", n)
    if alpha not in (0, 1):
        raise ValueError("ngf3 alpha must be 0 or 1")
    if alpha == 1 and n % 2:
        raise ValueError("ngf3 alpha = 1 requires even n")
    t = _Table()
    for i in range(2, n):
        t.add(i, 1, i + 1, 1)
        t.add(1, i, i + 1, -1)
    for i in range(2, n):
        j = n + 1 - i
        # each unordered pair once; the (j, i) entry comes from antisymmetry
        if i < j:
            v = alpha * (-1) ** (i + 1)
            t.add(i, j, n, v)
            t.add(j, i, n, -v)
    return Algebra(n, t.products)


def flb(n, params=None):
    _check_min("flb", n)
    p = params or FLbParams()
    p.validate(n)

    def a(m):
        return p.alpha_n if m == n else p.alpha(m)

    t = _Table()
    t.add(1, 1, 3, 1)
    for i in range(2, n):
        t.add(i, 1, i + 1, 1)
    for m in range(4, n):
        t.add(1, 2, m, p.alpha(m))
    t.add(1, 2, n, p.theta)
    for j in range(2, n - 1):
        for m in range(4, n + 3 - j):
            t.add(j, 2, j + m - 2, a(m))
    return Algebra(n, t.products)


def slb(n, params=None):
    _check_min("slb", n)
    p = params or SLbParams()
    p.validate(n)
    t = _Table()
    t.add(1, 1, 3, 1)
    for i in range(3, n):
        t.add(i, 1, i + 1, 1)
    for m in range(3, n):
        t.add(1, 2, m + 1, p.beta(m))
    t.add(2, 2, n, p.gamma)
    for j in range(3, n - 1):
        for m in range(3, n + 2 - j):
            t.add(j, 2, j + m - 1, p.beta(m))
    return Algebra(n, t.products)


def make(family, n, params=None, alpha=0):
    """Generator dispatch by family name."""
    if family == "ngf1":
        return ngf1(n)
    if family == "ngf2":
        return ngf2(n)
    if family == "ngf3":
        return ngf3(n, alpha)
    if family == "flb":
        return flb(n, params)
    if family == "slb":
        return slb(n, params)
    raise ValueError(f"unknown family {family!r}")


def expected_dim_ngf(family, n):
    if family == "ngf1":
        return n + 1
    if family == "ngf2":
        return n + 2
    if family == "ngf3":
        return 2 * n - 1
    raise ValueError(f"no closed-form dimension for {family!r}")


# ---------------------------------------------------------------------------
# case tables


@dataclass(frozen=True, order=True)
class CaseMatch:
    theorem: str
    tier: str
    case_index: int

    def expected(self, n):
        return TIERS[self.tier](n)

    def __str__(self):
        return f"{self.theorem}/{self.tier}/{self.case_index}"

    @classmethod
    def parse(cls, text):
        thm, tier, idx = text.split("/")
        return cls(thm, tier, int(idx))


NGF_CASES = {"ngf1": CaseMatch("T3", "n+1", 1), "ngf2": CaseMatch("T3", "n+2", 1),
             "ngf3": CaseMatch("T3", "2n-1", 1)}


class _Pattern:
    """Zero/nonzero view of a parameter vector: ``lead`` is theta (FLb) or
    gamma (SLb), ``nz[i]`` whether the i-th alpha/beta is nonzero."""

    def __init__(self, n, lead, nz):
        self.n = n
        self.lead = lead
        self.nz = nz

    def on(self, i):
        # a named parameter outside the index range makes the case inapplicable
        return i in self.nz and self.nz[i]

    def off(self, i):
        return i in self.nz and not self.nz[i]

    def zeros(self, lo, hi):
        return all(not self.nz[i] for i in range(lo, hi + 1))

    def nonzeros(self, lo, hi):
        return all(self.nz[i] for i in range(lo, hi + 1))

    def one_nonzero(self, lo, hi):
        return sum(self.nz[i] for i in range(lo, hi + 1)) == 1

    def one_zero(self, lo, hi):
        return sum(not self.nz[i] for i in range(lo, hi + 1)) == 1

    def threshold(self, lo, hi):
        """Smallest l in lo..hi with zeros on [lo, l) and nonzeros on [l, hi],
        or None."""
        for l in range(lo, hi + 1):
            if self.zeros(lo, l - 1) and self.nonzeros(l, hi):
                return l
        return None


def _t4(p):
    n, T, on, off = p.n, p.lead, p.on, p.off
    top = n - 1
    l8 = p.threshold(7, top)
    l4 = p.threshold(5, top)
    return {
        ("n+1", 1): not T and p.zeros(4, top),
        ("n+1", 2): T and on(4) and on(5) and p.one_nonzero(6, top),
        ("n+1", 3): not T and on(4) and on(5) and p.one_nonzero(6, top),
        ("n+1", 4): T and off(4) and off(5) and p.one_nonzero(6, top),
        ("n+1", 5): not T and off(4) and off(5) and p.one_nonzero(6, top),
        ("n+1", 6): T and p.one_zero(4, top),
        ("n+1", 7): not T and p.one_zero(4, top),
        ("n+1", 8): T and on(4) and on(5) and off(6) and l8 is not None,
        ("n+1", 9): not T and on(4) and on(5) and off(6) and l8 is not None,
        ("n", 1): T and p.nonzeros(4, top),
        ("n", 2): T and p.zeros(4, top),
        ("n", 3): not T and on(4) and on(5) and p.zeros(6, top),
        ("n", 4): T and off(4) and l4 is not None,
        ("n-1", 1): T and on(4) and on(5) and p.zeros(6, top),
        ("n-1", 2): T and off(4) and on(5) and p.zeros(6, top),
    }


def _t5(p):
    n, G, on, off = p.n, p.lead, p.on, p.off
    top = n - 1
    l = p.threshold(3, top)
    return {
        ("n+2", 1): not G and p.zeros(3, top),
        ("n+2", 2): not G and p.one_nonzero(3, top),
        ("n+1", 1): G and p.zeros(3, top),
        ("n+1", 2): not G and p.nonzeros(3, top),
        ("n+1", 3): G and l is not None and n == 2 * l - 1,
        ("n+1", 4): G and p.nonzeros(3, top),
        ("n+1", 5): G and p.one_nonzero(3, top),
        ("n+1", 6): G and p.one_zero(3, top),
        ("n+1", 7): not G and p.one_zero(3, top),
        ("n", 1): G and l is not None and n != 2 * l - 1,
        ("n", 2): G and on(n - 1) and p.zeros(3, n - 2),
        ("n", 3): G and off(n - 1) and on(n - 2) and p.zeros(3, n - 3),
        ("n", 4): not G and off(n - 1) and on(n - 2) and p.zeros(3, n - 3),
        ("n", 5): G and on(n - 1) and on(n - 2) and p.zeros(3, n - 3),
        ("n-1", 1): not G and on(n - 1) and on(n - 2) and p.zeros(3, n - 3),
        ("n-1", 2): not G and on(3) and p.zeros(4, top),
    }


_TABLES = {"T4": (_t4, 4), "T5": (_t5, 3)}

#: fully worked cases; disagreements here are hard
HARD_CASES = frozenset({CaseMatch("T4", "n", 1), CaseMatch("T5", "n-1", 1),
                        CaseMatch("T5", "n+2", 1)})


def listed_cases(theorem):
    """All case coordinates of a table, in table order."""
    fn, first = _TABLES[theorem]
    n = 12
    p = _Pattern(n, False, {i: False for i in range(first, n)})
    return [CaseMatch(theorem, tier, idx) for tier, idx in fn(p)]


def _classify_pattern(theorem, n, lead, nz):
    fn, _ = _TABLES[theorem]
    hits = fn(_Pattern(n, lead, nz))
    return [CaseMatch(theorem, tier, idx) for (tier, idx), ok in hits.items() if ok]


def classify_flb(n, params):
    params.validate(n)
    nz = {i: params.alpha(i) != 0 for i in range(4, n)}
    return _classify_pattern("T4", n, params.theta != 0, nz)


def classify_slb(n, params):
    params.validate(n)
    nz = {i: params.beta(i) != 0 for i in range(3, n)}
    return _classify_pattern("T5", n, params.gamma != 0, nz)


def classify(family, n, params):
    if family == "flb":
        return classify_flb(n, params)
    if family == "slb":
        return classify_slb(n, params)
    raise ValueError(f"no case table for {family!r}")


def is_hard(case, params):
    """Whether a matched case is one of the fully worked cases.

    The FLb worked case assumes alpha_n = 0.
    """
    if case not in HARD_CASES:
        return False
    if case.theorem == "T4":
        return params.alpha_n == 0
    return True


@lru_cache(maxsize=None)
def _patterns(theorem, n):
    """Every zero/nonzero pattern at ``n`` grouped by matching case."""
    _, first = _TABLES[theorem]
    idx = list(range(first, n))
    groups = {}
    for bits in itertools.product((False, True), repeat=len(idx) + 1):
        lead, rest = bits[0], bits[1:]
        nz = dict(zip(idx, rest))
        for case in _classify_pattern(theorem, n, lead, nz):
            groups.setdefault(case, []).append(bits)
    return groups


_NONZERO = (-3, -2, -1, 1, 2, 3)


def _value(rng, rational):
    if rational:
        return Fraction(rng.choice((-7, -5, -3, -2, -1, 1, 2, 3, 5, 7)), rng.randint(1, 9))
    return Fraction(rng.choice(_NONZERO))


def _params_from_bits(theorem, n, bits, rng, rational):
    vals = [_value(rng, rational) if b else Fraction(0) for b in bits]
    if theorem == "T4":
        return FLbParams({i: v for i, v in zip(range(4, n), vals[1:])}, theta=vals[0])
    return SLbParams({i: v for i, v in zip(range(3, n), vals[1:])}, gamma=vals[0])


def sample_params(theorem, tier, case_index, n, seed, rational=False):
    """Deterministic parameters satisfying one listed case.

    Nonzero slots get nonzero integers in [-3, 3] (small rationals with
    ``rational=True``); zero slots are exactly 0.  Raises ValueError when the
    case has no instance at this ``n``.
    """
    if theorem not in _TABLES:
        raise ValueError(f"unknown table {theorem!r}")
    case = CaseMatch(theorem, tier, case_index)
    if case not in listed_cases(theorem):
        raise ValueError(f"no case {case}")
    _check_min("flb" if theorem == "T4" else "slb", n)
    choices = _patterns(theorem, n).get(case)
    if not choices:
        raise ValueError(f"case {case} has no instance at n={n}")
    rng = random.Random(f"{case}|{n}|{seed}|{int(rational)}")
    bits = rng.choice(choices)
    return _params_from_bits(theorem, n, bits, rng, rational)


def random_params(theorem, n, rng, rational=False):
    """Unconstrained draw: each slot is zero with probability 1/2."""
    _, first = _TABLES[theorem]
    bits = [rng.random() < 0.5 for _ in range(n - first + 1)]
    return _params_from_bits(theorem, n, bits, rng, rational)
