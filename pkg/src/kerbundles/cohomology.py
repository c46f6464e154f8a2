"""Cohomology tables of kernel and cokernel sheaves of general maps.

For a kernel ``0 -> V -> V1 -> V2 -> 0`` of line-bundle sums on P^n (n >= 2),
twisting by ``a`` and using H^i(O(d)) = 0 for 0 < i < n gives

    h^0(V(a)) = nullity of the section matrix H^0(V1(a)) -> H^0(V2(a))
    h^1(V(a)) = corank of that matrix
    h^i(V(a)) = 0                       for 2 <= i <= n-1
    h^n(V(a)) = h^n(V1(a)) - h^n(V2(a))  (H^{n-1}(V2(a)) = 0 = H^{n+1}(V(a)))

For a cokernel ``0 -> W1 -> W2 -> V -> 0``, h^0 is the difference of the h^0
counts, and h^{n-1}, h^n are the kernel and cokernel of H^n(W1(a)) -> H^n(W2(a)),
read off the Serre-dual section matrix of ``W2^* -> W1^*`` at twist -a-n-1.
"""
from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np

from ._validation import BudgetExceeded, check_dimension, check_int
from .bott import LineBundleSum, TwistWindow, alpha_beta
from .exact import DEFAULT_PRIME
from .rank_n import h0_h1_formula
from .sections import GeneralMapSpec, RankResult, generic_rank

log = logging.getLogger(__name__)

KINDS = ("kernel", "cokernel")


@dataclass
class CohomologyTable:
    n: int
    kind: str
    spec: GeneralMapSpec
    window: TwistWindow
    entries: dict = field(default_factory=dict)
    ranks: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def value(self, a: int, i: int) -> int:
        return self.entries[(a, i)][0]

    def provenance(self, a: int, i: int) -> str:
        return self.entries[(a, i)][1]

    def row(self, a: int) -> tuple[int, ...]:
        return tuple(self.value(a, i) for i in range(self.n + 1))

    def twists(self) -> list[int]:
        return list(self.window)

    def as_array(self) -> np.ndarray:
        return np.array([self.row(a) for a in self.window], dtype=np.int64)

    def chi(self, a: int) -> int:
        """Euler characteristic of V(a) from the presentation alone."""
        s, t = self.spec.source, self.spec.target
        return s.chi(a) - t.chi(a) if self.kind == "kernel" else t.chi(a) - s.chi(a)

    def euler_consistent(self) -> bool:
        return all(sum((-1) ** i * h for i, h in enumerate(self.row(a))) == self.chi(a)
                   for a in self.window)

    def nonzero_groups(self, a: int) -> list[int]:
        return [i for i, h in enumerate(self.row(a)) if h]

    def unnatural_twists(self) -> list[int]:
        return [a for a in self.window if len(self.nonzero_groups(a)) > 1]

    def records(self) -> list[dict]:
        out = []
        for a in self.window:
            rec = {"a": a}
            rec.update({f"h{i}": self.value(a, i) for i in range(self.n + 1)})
            out.append(rec)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        fields = ["a"] + [f"h{i}" for i in range(self.n + 1)]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(self.records())
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "n": self.n, "kind": self.kind,
            "source": str(self.spec.source), "target": str(self.spec.target),
            "seed": self.spec.seed, "prime": self.spec.prime, "trials": self.spec.trials,
            "window": [self.window.lo, self.window.hi],
            "rows": self.records(),
            "provenance": {str(a): [self.provenance(a, i) for i in range(self.n + 1)]
                           for a in self.window},
        }
        return json.dumps(payload, sort_keys=True)

    def to_text(self) -> str:
        head = ["a"] + [f"h^{i}" for i in range(self.n + 1)]
        lines = ["  ".join(f"{h:>6}" for h in head)]
        for a in self.window:
            lines.append("  ".join(f"{v:>6}" for v in (a,) + self.row(a)))
        return "\n".join(lines)


def _check_trials(rr: RankResult, a: int) -> None:
    if len(set(rr.trial_ranks)) > 1:
        log.info("trial ranks disagree at twist %d: %s", a, rr.trial_ranks)


def cohomology_table(kind: str, spec: GeneralMapSpec, window: TwistWindow | Iterable[int] | None = None,
                     backend: str = "prime-field", max_cols: int | None = None) -> CohomologyTable:
    """All h^i(V(a)) for a in ``window``, with per-entry provenance."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    n = spec.n
    if n < 2:
        raise ValueError("tables need n >= 2 (middle cohomology bookkeeping)")
    if spec.waive_degree_check:
        raise ValueError("degree-waived specs are not accepted for table building")
    if window is None:
        window = default_window(spec, kind)
    elif not isinstance(window, TwistWindow):
        w = list(window)
        window = TwistWindow(min(w), max(w))
    table = CohomologyTable(n, kind, spec, window)
    gap = spec.source.rank - spec.target.rank
    if kind == "kernel" and gap < n:
        table.warnings.append(f"rank gap {gap} < n: the kernel need not be locally free")
    if kind == "cokernel" and -gap < n:
        table.warnings.append(f"rank gap {-gap} < n: the cokernel need not be locally free")

    dual = spec.dual() if kind == "cokernel" else None
    for a in window:
        if kind == "kernel":
            if max_cols is not None and spec.source.h(0, a) > max_cols:
                raise BudgetExceeded(f"section matrix at twist {a} has {spec.source.h(0, a)} columns")
            rr = generic_rank(spec, a, backend)
            _check_trials(rr, a)
            table.ranks[a] = rr
            prov = "matrix" if rr.rows or rr.cols else "formula"
            table.entries[(a, 0)] = (rr.nullity, prov)
            table.entries[(a, 1)] = (rr.corank, prov)
            table.entries[(a, n)] = (spec.source.h(n, a) - spec.target.h(n, a), "formula")
            for i in range(2, n):
                table.entries[(a, i)] = (0, "formula")
        else:
            b = -a - n - 1
            if max_cols is not None and dual.source.h(0, b) > max_cols:
                raise BudgetExceeded(f"dual section matrix at twist {b} has {dual.source.h(0, b)} columns")
            rr = generic_rank(dual, b, backend)
            _check_trials(rr, a)
            table.ranks[a] = rr
            prov = "matrix" if rr.rows or rr.cols else "formula"
            table.entries[(a, 0)] = (spec.target.h(0, a) - spec.source.h(0, a), "formula")
            for i in range(1, n - 1):
                table.entries[(a, i)] = (0, "formula")
            table.entries[(a, n - 1)] = (rr.corank, prov)
            table.entries[(a, n)] = (rr.nullity, prov)
    return table


def default_window(spec: GeneralMapSpec, kind: str = "kernel") -> TwistWindow:
    """[-n-2, max(alpha+2, t+1)], widened downward for targets of degree above 1."""
    n = spec.n
    if kind == "kernel":
        r, t = spec.source.rank - spec.target.rank, spec.target.rank
        top_deg = max(spec.target.degrees, default=1)
    else:
        r, t = spec.target.rank - spec.source.rank, spec.source.rank
        top_deg = max((-d for d in spec.source.degrees), default=1)
    alpha = alpha_beta(n, max(r, 1), t)[0]
    lo = -n - 2 - max(0, top_deg - 1)
    return TwistWindow(lo, max(alpha + 2, t + 1, lo))


def max_rank_check(spec: GeneralMapSpec, backend: str = "prime-field") -> tuple[bool, int]:
    """Whether the induced map on global sections has maximal rank, and the shortfall."""
    rr = generic_rank(spec, 0, backend)
    defect = min(rr.rows, rr.cols) - rr.rank
    return defect == 0, defect


# ---------------------------------------------------------------------------
# Natural cohomology
# ---------------------------------------------------------------------------

@dataclass
class NaturalVerdict:
    natural: bool
    failing_twists: list = field(default_factory=list)
    test_points: tuple = ()
    char0_status: str = "n/a"
    table: CohomologyTable | None = field(default=None, repr=False)
    alpha: int = 0
    beta: int = 0
    max_cols: int = 0

    @property
    def label(self) -> str:
        if self.natural:
            return "natural"
        if self.char0_status == "confirmed":
            return "not natural"
        return "not natural over F_p (char-0 status: unresolved)"


def steiner_dual_spec(n: int, r: int, t: int, degree: int = 1, base: int = 0, seed: int = 0,
                      prime: int = DEFAULT_PRIME, trials: int = 3) -> GeneralMapSpec:
    """The presentation O(base)^{t+r} -> O(base+degree)^t."""
    return GeneralMapSpec(LineBundleSum(n, [(base, t + r)]), LineBundleSum(n, [(base + degree, t)]),
                          seed=seed, prime=prime, trials=trials)


def _char0_status(spec: GeneralMapSpec, table: CohomologyTable, failing: list) -> str:
    """'confirmed' when the closed-form rank-n path reproduces every failure."""
    n = spec.n
    if spec.source.rank - spec.target.rank != n or len(spec.source.summands) != 1 \
            or len(spec.target.summands) != 1:
        return "unresolved"
    for a, _ in failing:
        f = h0_h1_formula(n, spec.source, spec.target, a)
        if not f.h1_applicable or (f.h0, f.h1) != table.row(a)[:2]:
            return "unresolved"
    return "confirmed"


def natural_check(n: int, r: int, t: int, degree: int = 1, base: int = 0, seed: int = 0,
                  prime: int = DEFAULT_PRIME, trials: int = 3, window=None,
                  backend: str = "prime-field", max_cols: int | None = None) -> NaturalVerdict:
    """Natural-cohomology verdict for ker(O(base)^{t+r} -> O(base+degree)^t).

    For the Steiner shape (degree 1, base 0) the verdict is the two-point test
    h^0(V(beta-1)) = 0 and h^1(V(alpha-1)) = 0, backed by a sanity window
    [-n-1, alpha+1] (or ``window``) in which every twist must have at most one
    nonzero group.  Other shapes are judged on the full window.
    """
    n = check_dimension(n, 2)
    r, t = check_int(r, "r"), check_int(t, "t", 1)
    if r < n:
        raise ValueError(f"r = {r} < n = {n}: the kernel is not a bundle")
    spec = steiner_dual_spec(n, r, t, degree, base, seed, prime, trials)
    alpha, beta = alpha_beta(n, r, t)
    steiner = degree == 1 and base == 0
    if window is None:
        if steiner:
            window = TwistWindow(-n - 1, alpha + 1)
        else:
            window = TwistWindow(-n - 2 - base - (degree - 1), degree * (t + n) - base + 1)
    elif not isinstance(window, TwistWindow):
        window = TwistWindow(*window)

    twists = set(window)
    if steiner:
        twists |= {beta - 1, alpha - 1}
    full = TwistWindow(min(twists), max(twists))
    if max_cols is not None and spec.source.h(0, full.hi) > max_cols:
        raise BudgetExceeded(f"{spec.source.h(0, full.hi)} columns exceed budget {max_cols}")
    table = cohomology_table("kernel", spec, full, backend)

    bad = {a for a in window if len(table.nonzero_groups(a)) > 1}
    if steiner:
        if table.value(beta - 1, 0):
            bad.add(beta - 1)
        if table.value(alpha - 1, 1):
            bad.add(alpha - 1)
    failing = [(a, table.nonzero_groups(a)) for a in sorted(bad)]
    status = "n/a" if not failing else _char0_status(spec, table, failing)
    return NaturalVerdict(not failing, failing, (beta - 1, alpha - 1), status, table,
                          alpha, beta, spec.source.h(0, full.hi))


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

SWEEP_FIELDS = ("n", "r", "t", "alpha", "beta", "natural", "fail_twists",
                "prime", "seed", "trials", "max_cols")


@dataclass(frozen=True)
class SweepRecord:
    n: int
    r: int
    t: int
    alpha: int
    beta: int
    natural: str  # "true" | "false" | "skipped"
    fail_twists: tuple
    prime: int
    seed: int
    trials: int
    max_cols: int

    def as_row(self) -> dict:
        row = asdict(self)
        row["fail_twists"] = ";".join(str(a) for a in self.fail_twists)
        return row

    @classmethod
    def from_row(cls, row: dict) -> "SweepRecord":
        fails = row["fail_twists"]
        if isinstance(fails, str):
            fails = [int(x) for x in fails.split(";") if x != ""]
        ints = {k: int(row[k]) for k in ("n", "r", "t", "alpha", "beta", "prime", "seed", "trials", "max_cols")}
        return cls(natural=str(row["natural"]), fail_twists=tuple(int(a) for a in fails), **ints)


def sweep_cell(n: int, r: int, t: int, seed: int = 0, prime: int = DEFAULT_PRIME, trials: int = 3,
               max_cols: int = 20000) -> SweepRecord:
    alpha, beta = alpha_beta(n, r, t)
    need = (t + r) * LineBundleSum(n, [(0, 1)]).h(0, alpha + 1)
    if need > max_cols:
        return SweepRecord(n, r, t, alpha, beta, "skipped", (), prime, seed, trials, need)
    v = natural_check(n, r, t, seed=seed, prime=prime, trials=trials)
    return SweepRecord(n, r, t, alpha, beta, "true" if v.natural else "false",
                       tuple(a for a, _ in v.failing_twists), prime, seed, trials, v.max_cols)


def sweep(n: int, r_range: Iterable[int], t_range: Iterable[int], seed: int = 0,
          prime: int = DEFAULT_PRIME, trials: int = 3, max_cols: int = 20000) -> list[SweepRecord]:
    """One natural-cohomology record per (r, t) cell with r >= n."""
    out = []
    for r in r_range:
        if r < n:
            continue
        for t in t_range:
            rec = sweep_cell(n, r, t, seed, prime, trials, max_cols)
            if rec.natural == "false":
                log.warning("natural cohomology fails for n=%d r=%d t=%d at %s", n, r, t, rec.fail_twists)
            out.append(rec)
    return out


def sweep_scaled(n: int, r: int, t: int, multipliers: Iterable[int], seed: int = 0,
                 prime: int = DEFAULT_PRIME, trials: int = 3, max_cols: int = 20000) -> list[SweepRecord]:
    """Records for the scaled family (m r, m t)."""
    return [sweep_cell(n, m * r, m * t, seed, prime, trials, max_cols) for m in multipliers]


def records_to_csv(records: Iterable[SweepRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_FIELDS, lineterminator="\n")
    w.writeheader()
    for rec in records:
        w.writerow(rec.as_row())
    return buf.getvalue()


def records_from_csv(text: str) -> list[SweepRecord]:
    rows = csv.DictReader(io.StringIO(text))
    if tuple(rows.fieldnames or ()) != SWEEP_FIELDS:
        raise ValueError(f"unexpected sweep header {rows.fieldnames}")
    return [SweepRecord.from_row(row) for row in rows]


def records_to_json(records: Iterable[SweepRecord]) -> str:
    rows = []
    for rec in records:
        d = asdict(rec)
        rows.append({k: (list(d[k]) if k == "fail_twists" else d[k]) for k in SWEEP_FIELDS})
    return json.dumps(rows)


def records_from_json(text: str) -> list[SweepRecord]:
    return [SweepRecord.from_row(row) for row in json.loads(text)]
