"""Integer polynomials and alternating binomial sums over residue classes.

The central object is the exact integer

    sum of C(n, k) * (-1)**k * f((k - r) / m)   over 0 <= k <= n, k = r (mod m)

together with its full-range floor variant, where f has integer
coefficients.  Two exact rewriting identities for these sums are checked
term by term; the order bounds themselves live in the verifier module.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, ascending powers.

    Trailing zero coefficients are stripped; the zero polynomial is the
    empty tuple.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        cs = tuple(self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def of(cls, coeffs) -> "IntPolynomial":
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPolynomial":
        if degree < 0:
            raise ValueError(f"degree must be >= 0, got {degree}")
        return cls((0,) * degree + (c,))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def shift(self, t: int) -> "IntPolynomial":
        """The polynomial x -> f(x + t)."""
        n = len(self.coeffs)
        out = [0] * n
        for j, a in enumerate(self.coeffs):
            if a == 0:
                continue
            tp = 1
            for i in range(j, -1, -1):
                out[i] += a * math.comb(j, i) * tp
                tp *= t
        return IntPolynomial(tuple(out))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)) + a[len(b) :])

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            if j == 0:
                term = str(abs(c))
            else:
                x = "x" if j == 1 else f"x^{j}"
                term = x if abs(c) == 1 else f"{abs(c)}*{x}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+{term}" if c > 0 else f"-{term}")
        return "".join(parts)


ZERO = IntPolynomial(())
ONE = IntPolynomial((1,))
X = IntPolynomial((0, 1))


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?x(?:\^(\d+))?$|^(\d+)$")


def parse_poly(text: str) -> IntPolynomial:
    """Parse "x^25", "3*x^2 - 1", "1" and similar."""
    if not isinstance(text, str):
        raise ValueError("empty polynomial")
    text = "".join(text.split())
    if not text:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        pos = 1
    while pos <= len(text) - 1:
        nxt = pos
        while nxt < len(text) and text[nxt] not in "+-":
            nxt += 1
        tok = text[pos:nxt]
        m = _TERM_RE.match(tok)
        if m is None:
            raise ValueError(f"bad polynomial term {tok!r} in {text!r}")
        if m.group(3) is not None:
            deg, c = 0, int(m.group(3))
        else:
            deg = int(m.group(2)) if m.group(2) is not None else 1
            c = int(m.group(1)) if m.group(1) is not None else 1
        coeffs[deg] = coeffs.get(deg, 0) + sign * c
        if nxt == len(text):
            break
        sign = -1 if text[nxt] == "-" else 1
        pos = nxt + 1
        if pos == len(text):
            raise ValueError(f"dangling {text[nxt]!r} at end of {text!r}")
    out = [0] * (max(coeffs) + 1 if coeffs else 0)
    for d, c in coeffs.items():
        out[d] = c
    return IntPolynomial(tuple(out))


def binom_exact(n: int, k: int) -> int:
    """C(n, k), with value 0 outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def poly_delta(f: IntPolynomial) -> IntPolynomial:
    """Forward difference x -> f(x+1) - f(x); drops the degree by one."""
    return f.shift(1) - f


def binom_poly(l: int) -> IntPolynomial:
    """Falling factorial x(x-1)...(x-l+1), the numerator of C(x, l)."""
    if l < 0:
        raise ValueError(f"l must be >= 0, got l={l}")
    out = ONE
    for i in range(l):
        out = out * IntPolynomial((-i, 1))
    return out


@dataclass(frozen=True)
class ResidueClassSumSpec:
    """Parameters of one alternating residue-class sum."""

    n: int
    r: int
    m: int
    f: IntPolynomial

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got n={self.n}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got m={self.m}")

    def value(self) -> int:
        return alt_sum(self.n, self.r, self.m, self.f)


_ROW_CAP = 4096


@lru_cache(maxsize=64)
def _comb_row(n: int) -> tuple[int, ...]:
    return tuple(math.comb(n, k) for k in range(n + 1))


def _evaluator(f: IntPolynomial):
    """A fast exact evaluation callable for f (monomials bypass Horner)."""
    cs = f.coeffs
    if not cs:
        return lambda x: 0
    if len(cs) == 1:
        c = cs[0]
        return lambda x: c
    if not any(cs[:-1]):
        l, c = len(cs) - 1, cs[-1]
        if c == 1:
            return lambda x: x**l
        return lambda x: c * x**l
    return f.__call__


def alt_sum(n: int, r: int, m: int, f: IntPolynomial) -> int:
    """Exact value of sum(C(n,k)(-1)**k f((k-r)/m)) over k = r (mod m), 0<=k<=n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got n={n}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got m={m}")
    start = r % m
    if start > n:
        return 0
    ev = _evaluator(f)
    row = _comb_row(n) if n <= _ROW_CAP else None
    x = (start - r) // m
    total = 0
    for k in range(start, n + 1, m):
        term = (row[k] if row is not None else math.comb(n, k)) * ev(x)
        total = total - term if k & 1 else total + term
        x += 1
    return total


def alt_floor_sum(n: int, r: int, m: int, f: IntPolynomial) -> int:
    """Exact value of sum(C(n,k)(-1)**k f(floor((k-r)/m))) over all 0<=k<=n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got n={n}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got m={m}")
    ev = _evaluator(f)
    row = _comb_row(n) if n <= _ROW_CAP else None
    total = 0
    for k in range(n + 1):
        term = (row[k] if row is not None else math.comb(n, k)) * ev((k - r) // m)
        total = total - term if k & 1 else total + term
    return total


def check_floor_identity(n: int, m: int, r: int, f: IntPolynomial) -> bool:
    """Exact identity turning a floor-weighted full sum into a residue-class sum.

    For n >= 1:
        alt_floor_sum(n, r, m, f)
            == - alt_sum(n-1, r-1+m, m, delta f)
    where the right side runs over k = r-1+m (mod m) with argument
    (k - (r-1+m))/m.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got n={n}")
    lhs = alt_floor_sum(n, r, m, f)
    rhs = -alt_sum(n - 1, r - 1 + m, m, poly_delta(f))
    return lhs == rhs


def check_split_identity(n: int, m: int, r: int, f: IntPolynomial) -> bool:
    """Exact convolution identity splitting off the constant part of f.

    For n >= 1, with r_j = r - j + m - 1 and df the forward difference:
        alt_sum(n, r, m, f) - f(floor((n-r)/m)) * alt_sum(n, r, m, 1)
            == - sum_{j=0}^{n-1} C(n,j) * alt_sum(j, r, m, 1)
                                       * alt_sum(n-j-1, r_j, m, df)
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got n={n}")
    df = poly_delta(f)
    lhs = alt_sum(n, r, m, f) - f((n - r) // m) * alt_sum(n, r, m, ONE)
    row = _comb_row(n) if n <= _ROW_CAP else None
    rhs = 0
    for j in range(n):
        a = alt_sum(j, r, m, ONE)
        if a == 0:
            continue
        b = alt_sum(n - j - 1, r - j + m - 1, m, df)
        if b == 0:
            continue
        rhs += (row[j] if row is not None else math.comb(n, j)) * a * b
    return lhs == -rhs
