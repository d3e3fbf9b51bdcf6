"""Exact p-adic arithmetic primitives.

Valuations, truncated (finite-precision) valuations, and residues modulo
p**E.  Everything here is exact integer arithmetic: a quantity computed
modulo p**E is reported as a floor ("at least E") whenever the residue
cannot distinguish it from zero, never silently rounded.
"""

from __future__ import annotations

from dataclasses import dataclass


class CapacityError(Exception):
    """Raised when a request exceeds a hard size cap instead of churning forever."""


_KNOWN_PRIMES: set[int] = set()


def is_prime(p: int) -> bool:
    """Trial-division primality test, meant for the small primes used as bases."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    """Return p if prime, else raise ValueError naming the offending value."""
    if p in _KNOWN_PRIMES:
        return p
    if not is_prime(p):
        raise ValueError(f"p must be a prime, got p={p!r}")
    if p < 10**6:
        _KNOWN_PRIMES.add(p)
    return p


@dataclass(frozen=True)
class Valuation:
    """A p-adic order: an integer, or infinite (the order of 0).

    ``value`` is None for the infinite valuation.  Orders of rationals may
    be negative, so no sign constraint is imposed on finite values.
    """

    value: int | None = None

    @classmethod
    def finite(cls, v: int) -> "Valuation":
        return cls(v)

    @classmethod
    def infinite(cls) -> "Valuation":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def _key(self):
        return float("inf") if self.value is None else self.value

    def __lt__(self, other) -> bool:
        return self._key() < _val_key(other)

    def __le__(self, other) -> bool:
        return self._key() <= _val_key(other)

    def __gt__(self, other) -> bool:
        return self._key() > _val_key(other)

    def __ge__(self, other) -> bool:
        return self._key() >= _val_key(other)

    def __add__(self, shift) -> "Valuation":
        if isinstance(shift, Valuation):
            if self.value is None or shift.value is None:
                return Valuation(None)
            return Valuation(self.value + shift.value)
        if self.value is None:
            return self
        return Valuation(self.value + shift)

    __radd__ = __add__

    def __sub__(self, shift: int) -> "Valuation":
        return self.__add__(-shift)

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


def _val_key(x):
    if isinstance(x, Valuation):
        return x._key()
    return x


@dataclass(frozen=True)
class TruncatedValuation:
    """A p-adic order measured through a residue modulo p**E.

    Either exact (the order was visible below the precision) or a floor:
    ``floor(E)`` means only "order >= E" is known.  Comparisons against
    integer bounds are three-valued and return None when the truncated
    information cannot decide.
    """

    value: int
    exact: bool

    @classmethod
    def exact_at(cls, v: int) -> "TruncatedValuation":
        return cls(v, True)

    @classmethod
    def floor(cls, E: int) -> "TruncatedValuation":
        return cls(E, False)

    def at_least(self, bound: int) -> bool | None:
        if self.exact:
            return self.value >= bound
        return True if self.value >= bound else None

    def less_than(self, bound: int) -> bool | None:
        ge = self.at_least(bound)
        return None if ge is None else not ge

    def equals(self, v: int) -> bool | None:
        if self.exact:
            return self.value == v
        return False if v < self.value else None

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"


@dataclass(frozen=True)
class ModPE:
    """A residue in Z/p**E that remembers which ring it lives in.

    Arithmetic with a ModPE at a different (p, E) is rejected; plain ints
    are coerced.
    """

    residue: int
    p: int
    E: int

    def __post_init__(self):
        check_prime(self.p)
        if self.E < 1:
            raise ValueError(f"precision E must be >= 1, got E={self.E}")
        m = self.p**self.E
        if not 0 <= self.residue < m:
            object.__setattr__(self, "residue", self.residue % m)

    @property
    def modulus(self) -> int:
        return self.p**self.E

    def _coerce(self, other) -> int:
        if isinstance(other, int):
            return other
        if isinstance(other, ModPE):
            if (other.p, other.E) != (self.p, self.E):
                raise ValueError(
                    f"mixed residue rings: {self.p}**{self.E} vs {other.p}**{other.E}"
                )
            return other.residue
        raise TypeError(f"cannot combine ModPE with {type(other).__name__}")

    def __add__(self, other) -> "ModPE":
        return ModPE(self.residue + self._coerce(other), self.p, self.E)

    __radd__ = __add__

    def __sub__(self, other) -> "ModPE":
        return ModPE(self.residue - self._coerce(other), self.p, self.E)

    def __rsub__(self, other) -> "ModPE":
        return ModPE(self._coerce(other) - self.residue, self.p, self.E)

    def __mul__(self, other) -> "ModPE":
        return ModPE(self.residue * self._coerce(other), self.p, self.E)

    __rmul__ = __mul__

    def __neg__(self) -> "ModPE":
        return ModPE(-self.residue, self.p, self.E)

    def __pow__(self, k: int) -> "ModPE":
        if k < 0:
            raise ValueError("negative powers are not defined in Z/p**E")
        return ModPE(pow(self.residue, k, self.modulus), self.p, self.E)


def trunc_val(x: ModPE) -> TruncatedValuation:
    """Order of the integer behind x, as far as precision E can see."""
    if x.residue == 0:
        return TruncatedValuation.floor(x.E)
    v = 0
    r = x.residue
    while r % x.p == 0:
        v += 1
        r //= x.p
    return TruncatedValuation.exact_at(v)


@dataclass(frozen=True)
class PrimePowerCtx:
    """A prime p with a residue-class modulus p**alpha and working precision E."""

    p: int
    alpha: int
    E: int = 1

    def __post_init__(self):
        check_prime(self.p)
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got alpha={self.alpha}")
        if self.E < 1:
            raise ValueError(f"precision E must be >= 1, got E={self.E}")

    @property
    def residue_modulus(self) -> int:
        return self.p**self.alpha

    @property
    def modulus(self) -> int:
        return self.p**self.E


def ord_int(p: int, x: int) -> Valuation:
    """p-adic order of an integer; the order of 0 is infinite.

    Negative integers have the order of their absolute value.
    """
    check_prime(p)
    if x == 0:
        return Valuation.infinite()
    x = abs(x)
    v = 0
    while x % p == 0:
        v += 1
        x //= p
    return Valuation(v)


def ord_factorial(p: int, m: int) -> int:
    """p-adic order of m!, by Legendre's formula sum(floor(m/p**i))."""
    check_prime(p)
    if m < 0:
        raise ValueError(f"m must be >= 0, got m={m}")
    total = 0
    q = p
    while q <= m:
        total += m // q
        q *= p
    return total


def least_residue(a: int, m: int) -> int:
    """The representative of a mod m lying in [0, m)."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got m={m}")
    return a % m


def carries(p: int, a: int, b: int) -> int:
    """Number of carries when a and b are added in base p.

    By Kummer's theorem this equals the p-adic order of the binomial
    coefficient C(a+b, a).
    """
    check_prime(p)
    if a < 0 or b < 0:
        raise ValueError(f"carry counting needs a, b >= 0, got a={a}, b={b}")
    count = 0
    carry = 0
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        count += carry
        a //= p
        b //= p
    return count


def euler_phi_prime_power(p: int, alpha: int) -> int:
    """Euler totient of p**alpha for alpha >= 1."""
    check_prime(p)
    if alpha < 1:
        raise ValueError(f"totient of p**alpha needs alpha >= 1, got alpha={alpha}")
    return (p - 1) * p ** (alpha - 1)
