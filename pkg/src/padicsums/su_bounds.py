"""Homotopy-exponent lower bounds for SU(n) and the published-table emitters.

The bridge out of pure arithmetic: a certified minimum Stirling order
e_p(n,k) bounds the homotopy p-exponent of SU(n) from below (one less at
p = 2 for even n), and n-1+ord_p(floor(n/p)!) is the closed-form bound.
Emitters reproduce the published p=3 comparison table, the 9x9 carry
table, and the excess-order delta sequence, in byte-stable formats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .exponents import as_exponent
from .padic import carries, check_prime, ord_factorial, ord_int
from .polysum import IntPolynomial, alt_sum
from .stirling import (
    DEFAULT_RETRIES,
    DEFAULT_WINDOW,
    EpResult,
    min_stirling_ord,
    stable_min_ord,
)


def lower_bound(p: int, n: int) -> int:
    """The closed-form exponent bound n - 1 + ord_p(floor(n/p)!)."""
    check_prime(p)
    if n < 2:
        raise ValueError(f"n must be >= 2, got n={n}")
    return n - 1 + ord_factorial(p, n // p)


def old_bound(p: int, n: int) -> int:
    """The older two-floor bound; stated for odd primes only."""
    check_prime(p)
    if p == 2:
        raise ValueError("the older bound is only stated for odd p")
    if n < 2:
        raise ValueError(f"n must be >= 2, got n={n}")
    return n - 1 + (n + 2 * p - 3) // p**2 + (n + p**2 - p - 1) // p**3


def restated_bound(p: int, n: int) -> int:
    """Same bound as lower_bound, restated as n - 1 + sum of floor(n/p^i), i >= 2."""
    check_prime(p)
    if n < 2:
        raise ValueError(f"n must be >= 2, got n={n}")
    total = n - 1
    q = p * p
    while q <= n:
        total += n // q
        q *= p
    return total


@dataclass(frozen=True)
class BoundReport:
    """The new, old, and restated exponent bounds at one (p, n)."""

    p: int
    n: int
    new: int
    old: int | None
    restated: int


def bound_report(p: int, n: int) -> BoundReport:
    new = lower_bound(p, n)
    restated = restated_bound(p, n)
    if new != restated:
        raise AssertionError(f"bound restatement broke at (p={p}, n={n}): {new} != {restated}")
    return BoundReport(p, n, new, None if p == 2 else old_bound(p, n), restated)


def ep_auto(
    p: int,
    n: int,
    k,
    window: int = DEFAULT_WINDOW,
    precision: int | None = None,
    retries: int = DEFAULT_RETRIES,
) -> EpResult:
    """Route an e_p(n,k) query to the certifying path when one applies.

    Exponents of the family shape (p-1)*p^L + d go through the stable-family
    certification when L is above the stabilization threshold; everything
    else runs the direct scan (exact for small materializable k, heuristic
    window otherwise).
    """
    k = as_exponent(k)
    if not k.is_plain and k.base == p and k.c == p - 1:
        try:
            return stable_min_ord(p, n, L=k.L, d=k.d, window=window, precision=precision, retries=retries)
        except ValueError:
            pass
    return min_stirling_ord(p, n, k, window=window, precision=precision, retries=retries)


def exponent_to_homotopy(p: int, n: int, value: int) -> int:
    """Convert a minimum Stirling order into a homotopy exponent bound."""
    if p == 2 and n % 2 == 0:
        return value - 1
    return value


def homotopy_exponent_bound(
    p: int,
    n: int,
    k,
    window: int = DEFAULT_WINDOW,
    precision: int | None = None,
    retries: int = DEFAULT_RETRIES,
) -> tuple[int, EpResult]:
    """Certified homotopy p-exponent lower bound for SU(n) from one exponent instance.

    Returns (bound, engine result).  Uncertified engine results are refused:
    a heuristic window minimum must not be passed off as a proven bound.
    """
    res = ep_auto(p, n, k, window=window, precision=precision, retries=retries)
    if not res.certified:
        raise ValueError(
            f"minimum order for (p={p}, n={n}, k={as_exponent(k)}) is not certified "
            f"(certificate: {res.certificate}); no homotopy bound can be asserted"
        )
    return exponent_to_homotopy(p, n, res.value.value), res


@dataclass(frozen=True)
class Table1Row:
    """One row of the p=3 comparison table.

    max_observed, when present, is a maximum over the finite exponents
    k <= k_searched plus the stable family value: observed, not proven
    maximal.
    """

    n: int
    L: int
    stable: int
    bound: int
    max_observed: int | None = None
    k_searched: int | None = None


def emit_table1(
    n_from: int,
    n_to: int,
    with_max: bool = False,
    k_budget: int = 40,
) -> list[Table1Row]:
    """Rows (n, stable family value, closed-form bound) for n in [n_from, n_to]."""
    if not 2 <= n_from <= n_to:
        raise ValueError(f"need 2 <= n_from <= n_to, got [{n_from}, {n_to}]")
    if k_budget < 0:
        raise ValueError(f"k_budget must be >= 0, got {k_budget}")
    rows = []
    for n in range(n_from, n_to + 1):
        res = stable_min_ord(3, n)
        stable = res.value.value
        L = max(res.stable.N, res.stable.N0)
        bound = lower_bound(3, n)
        max_observed = k_hi = None
        if with_max:
            k_hi = n + k_budget
            window = max(DEFAULT_WINDOW, k_budget)
            best = stable
            for k in range(n, k_hi + 1):
                v = min_stirling_ord(3, n, k, window=window).value.value
                if v > best:
                    best = v
            max_observed = best
        rows.append(Table1Row(n, L, stable, bound, max_observed, k_hi))
    return rows


def emit_table2() -> tuple[tuple[int, ...], ...]:
    """The 9x9 carry-count matrix tau_3({r}_9, {n-r}_9)."""
    return tuple(
        tuple(carries(3, r, (n - r) % 9) for r in range(9))
        for n in range(9)
    )


def emit_delta(
    p: int = 2,
    alpha: int = 2,
    n: int = 100,
    baseline: int = 22,
    l_from: int = 25,
    l_to: int = 45,
) -> list[int | None]:
    """Excess orders delta(l) of the residue-class monomial sums over a baseline.

    delta(l) = ord_p(alt_sum(n, 0, p^alpha, x^l)) - baseline; a vanishing sum
    yields None (infinite excess).
    """
    check_prime(p)
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    if l_from < 0 or l_to < l_from:
        raise ValueError(f"need 0 <= l_from <= l_to, got [{l_from}, {l_to}]")
    m = p**alpha
    out: list[int | None] = []
    for l in range(l_from, l_to + 1):
        s = alt_sum(n, 0, m, IntPolynomial.monomial(l))
        out.append(None if s == 0 else ord_int(p, s).value - baseline)
    return out


def table1_markdown(rows: list[Table1Row]) -> str:
    with_max = any(r.max_observed is not None for r in rows)
    lines = ["# exponent comparison at p=3", ""]
    if with_max:
        k_hi = max(r.k_searched for r in rows if r.k_searched is not None)
        lines.append(f"max column: observed over k <= {k_hi} plus the stable family; observed, not proven maximal")
        lines += ["", "| n | max observed | stable | bound |", "|---|---|---|---|"]
        lines += [f"| {r.n} | {r.max_observed} | {r.stable} | {r.bound} |" for r in rows]
    else:
        lines += ["| n | stable | bound |", "|---|---|---|"]
        lines += [f"| {r.n} | {r.stable} | {r.bound} |" for r in rows]
    return "\n".join(lines) + "\n"


def table1_csv(rows: list[Table1Row]) -> str:
    with_max = any(r.max_observed is not None for r in rows)
    if with_max:
        lines = ["n,stable,bound,max_observed"]
        lines += [f"{r.n},{r.stable},{r.bound},{r.max_observed}" for r in rows]
    else:
        lines = ["n,stable,bound"]
        lines += [f"{r.n},{r.stable},{r.bound}" for r in rows]
    return "\n".join(lines) + "\n"


def table1_json(rows: list[Table1Row]) -> str:
    recs = []
    for r in rows:
        rec = {"n": r.n, "L": r.L, "stable": r.stable, "bound": r.bound}
        if r.max_observed is not None:
            rec["max_observed"] = r.max_observed
            rec["k_searched"] = r.k_searched
            rec["max_label"] = "observed, not proven maximal"
        recs.append(rec)
    return json.dumps({"schema": 1, "table": "one", "rows": recs}, indent=2) + "\n"


def table2_markdown(matrix) -> str:
    lines = [
        "# carry counts tau_3({r}_9, {n-r}_9)",
        "",
        "| {n}_9 \\ {r}_9 | " + " | ".join(str(r) for r in range(9)) + " |",
        "|---" * 10 + "|",
    ]
    lines += [f"| {n} | " + " | ".join(str(v) for v in row) + " |" for n, row in enumerate(matrix)]
    return "\n".join(lines) + "\n"


def table2_csv(matrix) -> str:
    lines = ["n_mod_9," + ",".join(f"r{r}" for r in range(9))]
    lines += [f"{n}," + ",".join(str(v) for v in row) for n, row in enumerate(matrix)]
    return "\n".join(lines) + "\n"


def table2_json(matrix) -> str:
    return json.dumps({"schema": 1, "table": "two", "entries": [list(row) for row in matrix]}, indent=2) + "\n"


def _delta_str(v) -> str:
    return "inf" if v is None else str(v)


def delta_markdown(values, l_from: int) -> str:
    lines = ["# excess orders delta(l)", "", "| l | delta |", "|---|---|"]
    lines += [f"| {l_from + i} | {_delta_str(v)} |" for i, v in enumerate(values)]
    return "\n".join(lines) + "\n"


def delta_csv(values, l_from: int) -> str:
    lines = ["l,delta"]
    lines += [f"{l_from + i},{_delta_str(v)}" for i, v in enumerate(values)]
    return "\n".join(lines) + "\n"


def delta_json(values, l_from: int) -> str:
    recs = [{"l": l_from + i, "delta": v} for i, v in enumerate(values)]
    return json.dumps({"schema": 1, "table": "delta", "values": recs}, indent=2) + "\n"
