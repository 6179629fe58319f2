"""Sweep the families, compare solver dimensions with the case tables.

Rows are ordered by (family, n, tier, case, sample) and the output depends
only on the arguments, so two runs with the same seed are byte-identical.
"""
import csv
import io
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import families as fam
from .derivations import der_dim
from .linalg import format_scalar

CSV_HEADER = ["family", "n", "params", "cases", "expected", "computed", "agrees"]


@dataclass
class Row:
    family: str
    n: int
    params: str
    cases: list
    expected: object  # int, "uncovered" or "ambiguous"
    computed: int
    agrees: object  # True / False / None when expected is not a number
    kind: str = "case"
    hard_failure: bool = False

    def record(self):
        return {
            "family": self.family,
            "n": self.n,
            "params": self.params,
            "cases": [str(c) for c in self.cases],
            "expected": self.expected,
            "computed": self.computed,
            "agrees": self.agrees,
        }


@dataclass
class Report:
    rows: list
    skipped: list = field(default_factory=list)  # (family, n, case) without instances

    def summary(self):
        rows = self.rows
        multi = [r for r in rows if len(r.cases) > 1]
        out = {
            "total": len(rows),
            "agreed": sum(r.agrees is True for r in rows),
            "disagreed": sum(r.agrees is False for r in rows),
            "uncovered": sum(r.expected == "uncovered" for r in rows),
            "ambiguous": sum(r.expected == "ambiguous" for r in rows),
            "multi_matched": len(multi),
            "hard_failures": sum(r.hard_failure for r in rows),
        }
        judged = out["agreed"] + out["disagreed"]
        out["agreement_rate"] = f"{out['agreed']}/{judged}"
        out["hard_failure_rows"] = [_brief(r) for r in rows if r.hard_failure]
        out["disagreement_rows"] = [_brief(r) for r in rows if r.agrees is False]
        out["uncovered_rows"] = [_brief(r) for r in rows if r.expected == "uncovered"]
        out["multi_matched_rows"] = [_brief(r) for r in multi]
        out["not_instantiable"] = [f"{f} n={n} {c}" for f, n, c in self.skipped]
        return out

    @property
    def ok(self):
        return not any(r.hard_failure for r in self.rows)

    def to_json(self):
        doc = {"rows": [r.record() for r in self.rows], "summary": self.summary()}
        return json.dumps(doc, indent=2) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            agrees = "" if r.agrees is None else str(r.agrees).lower()
            w.writerow([r.family, r.n, r.params, " ".join(str(c) for c in r.cases),
                        r.expected, r.computed, agrees])
        return buf.getvalue()

    def summary_text(self):
        s = self.summary()
        lines = [f"rows: {s['total']}  agreed: {s['agreed']}  disagreed: {s['disagreed']}  "
                 f"uncovered: {s['uncovered']}  ambiguous: {s['ambiguous']}  "
                 f"multi-matched: {s['multi_matched']}  hard failures: {s['hard_failures']}"]
        for key in ("hard_failure_rows", "disagreement_rows", "uncovered_rows",
                    "multi_matched_rows", "not_instantiable"):
            if s[key]:
                lines.append(f"{key.replace('_', ' ')}:")
                lines.extend(f"  {item}" for item in s[key])
        return "\n".join(lines) + "\n"


def _brief(r):
    cases = ",".join(str(c) for c in r.cases) or "-"
    return f"{r.family} n={r.n} [{r.params}] cases={cases} expected={r.expected} computed={r.computed}"


def format_params(family, n, params, alpha=0):
    if family == "ngf3":
        return f"alpha={alpha}"
    if params is None:
        return ""
    return ";".join(f"{k}={format_scalar(v)}" for k, v in params.items(n))


def _expected(cases, n):
    values = {c.expected(n) for c in cases}
    if not values:
        return "uncovered"
    if len(values) > 1:
        return "ambiguous"
    return values.pop()


def _jobs(family, n, samples, seed, rational, skipped):
    """Work items ``(family, n, params, alpha, kind)`` for one family at one n."""
    if family in ("ngf1", "ngf2"):
        return [(family, n, None, 0, "ngf")]
    if family == "ngf3":
        alphas = (0, 1) if n % 2 == 0 else (0,)
        return [(family, n, None, a, "ngf") for a in alphas]
    theorem = "T4" if family == "flb" else "T5"
    cases = sorted(fam.listed_cases(theorem),
                   key=lambda c: (fam.TIER_ORDER.index(c.tier), c.case_index))
    items = []
    for case in cases:
        for s in range(samples):
            try:
                p = fam.sample_params(theorem, case.tier, case.case_index, n, seed * 1000 + s,
                                      rational=rational)
            except ValueError:
                skipped.append((family, n, str(case)))
                break
            items.append((family, n, p, 0, "case"))
    for s in range(samples):
        rng = random.Random(f"random|{family}|{n}|{seed}|{s}")
        items.append((family, n, fam.random_params(theorem, n, rng, rational), 0, "random"))
    return items


def _compute(item):
    family, n, params, alpha, _ = item
    return der_dim(fam.make(family, n, params, alpha))


def _row(item, computed):
    family, n, params, alpha, kind = item
    if kind == "ngf":
        cases = [fam.NGF_CASES[family]]
        hard = [fam.NGF_CASES[family]]
    else:
        cases = fam.classify(family, n, params)
        hard = [c for c in cases if fam.is_hard(c, params)]
    expected = _expected(cases, n)
    agrees = None if isinstance(expected, str) else computed == expected
    return Row(family, n, format_params(family, n, params, alpha), cases, expected, computed,
               agrees, kind, any(c.expected(n) != computed for c in hard))


def verify(family="all", n_min=None, n_max=10, samples=5, seed=0, rational=False, jobs=1):
    """Run the sweep and return a :class:`Report`."""
    names = fam.FAMILIES if family == "all" else (family,)
    for name in names:
        if name not in fam.FAMILIES:
            raise ValueError(f"unknown family {name!r}")
    if family != "all" and n_min is not None and n_min < fam.MIN_DIM[family]:
        raise ValueError(f"{family} needs n >= {fam.MIN_DIM[family]}")
    if samples < 1:
        raise ValueError("samples must be positive")
    items, skipped = [], []
    for name in names:
        lo = max(n_min if n_min is not None else 0, fam.MIN_DIM[name])
        if n_max < lo:
            if family != "all":
                raise ValueError(f"empty range n={lo}..{n_max}")
            continue
        for n in range(lo, n_max + 1):
            items.extend(_jobs(name, n, samples, seed, rational, skipped))

    # identical algebras recur (all-zero parameter samples); solve each once
    keyed = {}
    for item in items:
        keyed.setdefault(_key(item), item)
    uniq = list(keyed.values())
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            dims = list(pool.map(_compute, uniq, chunksize=4))
    else:
        dims = [_compute(it) for it in uniq]
    solved = {_key(it): d for it, d in zip(uniq, dims)}
    rows = [_row(it, solved[_key(it)]) for it in items]
    return Report(rows, skipped)


def _key(item):
    family, n, params, alpha, _ = item
    return (family, n, format_params(family, n, params, alpha))
