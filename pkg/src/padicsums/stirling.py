"""Stirling numbers of the second kind, exact and modulo p**E, and the
minimum order engine.

The quantity of interest is

    min over m >= n of ord_p(m! * S(k, m))

for k far too large to expand S(k, m) exactly.  Each term is computed
through the surjection count sum(C(m,j)(-1)**(m-j) j**k) modulo p**E with
structured exponents, so only the residue of k modulo the Carmichael
number of p**E is ever needed.  For the geometric family of exponents
k = (p-1) p**L + d the minimum stabilizes once L is large enough, and the
stabilized value can be certified from exact integer scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exponents import StructuredExponent, as_exponent, carmichael_prime_power
from .padic import (
    CapacityError,
    ModPE,
    TruncatedValuation,
    check_prime,
    ord_int,
)

STIRLING_CAP = 10**4
DEFAULT_WINDOW = 60
WINDOW_STEP = 30
STABLE_RUN = 25
DEFAULT_RETRIES = 4


class PrecisionError(Exception):
    """All scanned terms stayed indistinguishable from zero at the precision cap.

    Carries the best partial result on the ``partial`` attribute.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def stirling_exact(k: int, m: int) -> int:
    """S(k, m) by the triangle recurrence S(k,m) = m S(k-1,m) + S(k-1,m-1)."""
    if k < 0 or m < 0:
        raise ValueError(f"need k, m >= 0, got k={k}, m={m}")
    if k > STIRLING_CAP:
        raise CapacityError(f"exact Stirling numbers capped at k <= {STIRLING_CAP}, got k={k}")
    if m > k:
        return 0
    row = [1] + [0] * m  # row of S(0, *)
    for i in range(1, k + 1):
        hi = min(i, m)
        for j in range(hi, 0, -1):
            row[j] = j * row[j] + row[j - 1]
        row[0] = 0
    return row[m]


def stirling_rows(k_max: int, m_max: int):
    """Yield (k, row) for k = 0..k_max with row[j] = S(k, j), j <= min(k, m_max)."""
    if k_max > STIRLING_CAP:
        raise CapacityError(f"exact Stirling numbers capped at k <= {STIRLING_CAP}, got k={k_max}")
    row = [1]
    yield 0, row[:]
    for i in range(1, k_max + 1):
        hi = min(i, m_max)
        if hi >= len(row):
            row.append(0)
        for j in range(hi, 0, -1):
            row[j] = j * row[j] + (row[j - 1] if j - 1 < len(row) else 0)
        row[0] = 0
        yield i, row[:]


def mstirling_mod(k, m: int, p: int, E: int) -> ModPE:
    """m! * S(k, m) modulo p**E for a possibly huge structured exponent k.

    Uses the surjection count sum(C(m,j) (-1)**(m-j) j**k); binomials are
    carried incrementally as unit * p**t so division by j stays legal in
    Z/p**E.  The j = 0 term follows the convention 0**0 = 1, which makes
    the formula correct at k = 0.
    """
    check_prime(p)
    if m < 0:
        raise ValueError(f"m must be >= 0, got m={m}")
    if E < 1:
        raise ValueError(f"precision E must be >= 1, got E={E}")
    k = as_exponent(k)
    M = p**E
    lam = carmichael_prime_power(p, E)
    k_unit = k.mod(lam)  # exponent residue for bases coprime to p
    k_small = k.value() if k.materializable else None
    ppow = [1]
    for _ in range(E - 1):
        ppow.append(ppow[-1] * p)

    u, t = 1, 0  # C(m, j) = u * p**t with u a unit mod M
    total = 0
    sign = 1 if m % 2 == 0 else -1  # (-1)**(m-j) at j = 0
    for j in range(m + 1):
        if j:
            num = m - j + 1
            while num % p == 0:
                num //= p
                t += 1
            den = j
            while den % p == 0:
                den //= p
                t -= 1
            u = u * num % M
            if den != 1:
                u = u * pow(den, -1, M) % M
        if j == 0:
            pw = 1 if (k_small == 0) else 0
        elif j % p:
            pw = pow(j, k_unit, M)
        elif k_small is None:
            pw = 0
        else:
            v = 0
            jj = j
            while jj % p == 0:
                v += 1
                jj //= p
            pw = 0 if v * k_small >= E else pow(j, k_small, M)
        if pw and t < E:
            term = u * ppow[t] % M * pw % M
            total = (total + sign * term) % M
        sign = -sign
    return ModPE(total, p, E)


def default_precision(p: int, n: int) -> int:
    """Working precision: a proven cap on certified minima for odd p, plus margin.

    The cap floor((n-1)(1 + 1/(p-1) + 1/(p-1)**2)) is used as a sizing
    heuristic for every p; the engine doubles the precision on demand.
    """
    q = p - 1
    return max(1, (n - 1) * (q * q + q + 1) // (q * q)) + 8


@dataclass(frozen=True)
class StirlingQuery:
    """One minimum-order query: prime, scan start, structured exponent."""

    p: int
    n: int
    k: StructuredExponent

    def __post_init__(self):
        check_prime(self.p)
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got n={self.n}")
        k = as_exponent(self.k)
        object.__setattr__(self, "k", k)
        if k.materializable and k.value() < self.n:
            raise ValueError(f"k must be >= n, got k={k} < n={self.n}")


@dataclass(frozen=True)
class StableParams:
    """Stabilization data for the family k = (p-1) p**L + d.

    N is the guaranteed-bound threshold, N0 the order of the first nonzero
    family sum, L0 the minimum order over the scan, m0 the smallest m
    attaining it.  The family value L0 applies to every L >= max(N, N0).
    """

    N: int
    N0: int
    L0: int
    m0: int
    m_scanned: tuple[int, int]


@dataclass(frozen=True)
class EpResult:
    """Result of a minimum-order scan."""

    value: TruncatedValuation
    m_scanned: tuple[int, int]
    certified: bool
    certificate: str  # "exact-finite-k" | "stable-family" | "heuristic-window"
    witness_m: int | None
    precision: int
    stable: StableParams | None = None


def _scan_min(p, n, k, E, m_hi, adaptive):
    """Scan trunc orders of m! S(k,m) for m from n; returns (best, witness, hi)."""
    best = None
    witness = None
    last_change = n
    m = n
    hi = m_hi
    while m <= hi:
        x = mstirling_mod(k, m, p, E)
        if x.residue:
            v = 0
            r = x.residue
            while r % p == 0:
                v += 1
                r //= p
            if best is None or v < best:
                best, witness, last_change = v, m, m
        if adaptive and m == hi and last_change > hi - STABLE_RUN:
            hi += WINDOW_STEP
        m += 1
    return best, witness, hi


def min_stirling_ord(
    p: int,
    n: int,
    k,
    window: int = DEFAULT_WINDOW,
    precision: int | None = None,
    retries: int = DEFAULT_RETRIES,
) -> EpResult:
    """Minimum of ord_p(m! S(k, m)) over m >= n, scanned modulo p**E.

    When k is materializable and k <= n + window the scan covers every m
    up to k (terms beyond vanish identically), so the result is exact and
    certified.  Otherwise a finite window [n, n+window] is scanned,
    extended while the running minimum keeps moving, and the result is a
    heuristic unless certified through the stable family path.  Whenever
    every scanned term is indistinguishable from zero the precision is
    doubled, up to ``retries`` times.
    """
    query = StirlingQuery(p, n, as_exponent(k))
    k = query.k
    if window < 0:
        raise ValueError(f"window must be >= 0, got {window}")
    exact_path = k.materializable and k.value() <= n + window
    E0 = default_precision(p, n) if precision is None else precision
    if E0 < 1:
        raise ValueError(f"precision must be >= 1, got {E0}")
    if retries < 0:
        raise ValueError(f"retries must be >= 0, got {retries}")
    E = E0
    for attempt in range(retries + 1):
        m_hi = k.value() if exact_path else n + window
        best, witness, hi = _scan_min(p, n, k, E, m_hi, adaptive=not exact_path)
        if best is not None:
            return EpResult(
                value=TruncatedValuation.exact_at(best),
                m_scanned=(n, hi),
                certified=exact_path,
                certificate="exact-finite-k" if exact_path else "heuristic-window",
                witness_m=witness,
                precision=E,
            )
        if attempt < retries:
            E *= 2
    partial = EpResult(
        value=TruncatedValuation.floor(E),
        m_scanned=(n, hi),
        certified=False,
        certificate="heuristic-window",
        witness_m=None,
        precision=E,
    )
    raise PrecisionError(
        f"every term for m in [{n}, {hi}] is divisible by {p}**{E}; "
        f"precision cap reached after {retries} retries",
        partial=partial,
    )


def stable_params(
    p: int,
    n: int,
    m_window: int = DEFAULT_WINDOW,
    d: int | None = None,
) -> StableParams:
    """Exact scan of the family sums S_m = sum(C(m,j)(-1)**j j**d, p not | j).

    These are the L-independent parts of (-1)**m m! S((p-1)p**L + d, m);
    the discarded parts are divisible by p**(L+1).  The scan starts at
    m = n and extends adaptively while the running minimum keeps moving.
    """
    check_prime(p)
    if n < 1:
        raise ValueError(f"n must be >= 1, got n={n}")
    if m_window < 0:
        raise ValueError(f"m_window must be >= 0, got {m_window}")
    if d is None:
        d = n - 1
    if d < 0:
        raise ValueError(f"d must be >= 0, got d={d}")
    N = n - 1 + n // (p * (p - 1))
    N0 = L0 = m0 = None
    m = n
    hi = n + m_window
    last_change = n
    while m <= hi:
        s = 0
        row = math.comb
        for j in range(1, m + 1):
            if j % p:
                term = row(m, j) * j**d
                s = s - term if j & 1 else s + term
        if s:
            v = ord_int(p, s).value
            if N0 is None:
                N0 = v
            if L0 is None or v < L0:
                L0, m0, last_change = v, m, m
        if m == hi and last_change > hi - STABLE_RUN:
            hi += WINDOW_STEP
        m += 1
    if N0 is None:
        raise ValueError(f"every family sum for m in [{n}, {hi}] vanished (p={p}, d={d})")
    return StableParams(N=N, N0=N0, L0=L0, m0=m0, m_scanned=(n, hi))


def stable_min_ord(
    p: int,
    n: int,
    L: int | None = None,
    d: int | None = None,
    window: int = DEFAULT_WINDOW,
    precision: int | None = None,
    retries: int = DEFAULT_RETRIES,
) -> EpResult:
    """Certified minimum order for the family exponent k = (p-1) p**L + d.

    L defaults to max(N, N0), the smallest height at which both the
    stabilization and the bound threshold are guaranteed.  The engine scan
    is cross-checked against the exact family value and must agree.
    """
    params = stable_params(p, n, m_window=window, d=d)
    floor_L = max(params.N, params.N0)
    if L is None:
        L = floor_L
    elif L < floor_L:
        raise ValueError(f"L={L} is below the stabilization threshold max(N, N0)={floor_L}")
    k = StructuredExponent.tower(p - 1, p, L, n - 1 if d is None else d)
    eng_window = max(window, params.m0 - n + STABLE_RUN)
    res = min_stirling_ord(p, n, k, window=eng_window, precision=precision, retries=retries)
    got = res.value.value
    if got != params.L0:
        raise AssertionError(
            f"engine minimum {got} disagrees with exact family value {params.L0} "
            f"(p={p}, n={n}, k={k})"
        )
    return EpResult(
        value=res.value,
        m_scanned=res.m_scanned,
        certified=True,
        certificate="stable-family",
        witness_m=res.witness_m,
        precision=res.precision,
        stable=params,
    )
