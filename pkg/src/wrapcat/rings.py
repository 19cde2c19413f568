"""Exact coefficient rings: the rationals, prime fields, and the integers.

Scalars are plain Python objects (``Fraction`` for Q, ``int`` for F_p and Z),
normalised through the ring so that equality is literal equality.  No floats
appear anywhere in the engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SchemaError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """One of Q, F_p (p prime) or Z, with exact scalar arithmetic."""

    kind: str  # "Q" | "Fp" | "Z"
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Q", "Fp", "Z"):
            raise SchemaError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp" and not _is_prime(self.p):
            raise SchemaError(f"characteristic {self.p} is not prime")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rationals() -> "CoefficientRing":
        return CoefficientRing("Q")

    @staticmethod
    def prime_field(p: int) -> "CoefficientRing":
        return CoefficientRing("Fp", p)

    @staticmethod
    def integers() -> "CoefficientRing":
        return CoefficientRing("Z")

    @staticmethod
    def from_token(token: str) -> "CoefficientRing":
        """Parse a coefficient token: "Q", "F2", "Fp:<p>", "Z"."""
        if token == "Q":
            return CoefficientRing.rationals()
        if token == "Z":
            return CoefficientRing.integers()
        if token == "F2":
            return CoefficientRing.prime_field(2)
        if token.startswith("Fp:"):
            return CoefficientRing.prime_field(int(token[3:]))
        raise SchemaError(f"unknown coefficient token {token!r}")

    def token(self) -> str:
        if self.kind == "Q":
            return "Q"
        if self.kind == "Z":
            return "Z"
        return "F2" if self.p == 2 else f"Fp:{self.p}"

    @property
    def is_field(self) -> bool:
        return self.kind in ("Q", "Fp")

    # -- scalar arithmetic -------------------------------------------------

    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def normalize(self, x):
        if self.kind == "Q":
            return Fraction(x)
        if self.kind == "Fp":
            return int(x) % self.p
        return int(x)

    def add(self, a, b):
        return self.normalize(a + b)

    def sub(self, a, b):
        return self.normalize(a - b)

    def mul(self, a, b):
        return self.normalize(a * b)

    def neg(self, a):
        return self.normalize(-a)

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return Fraction(1) / a
        if self.kind == "Fp":
            return pow(int(a), self.p - 2, self.p)
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def is_unit(self, a) -> bool:
        if self.is_zero(a):
            return False
        return True if self.is_field else a in (1, -1)

    # -- exact string serialization -----------------------------------------

    def parse_scalar(self, text: str):
        """Parse an exact scalar string: "3/2", "-1", "2 mod 5"."""
        text = text.strip()
        if self.kind == "Fp" and " mod " in text:
            value, modulus = text.split(" mod ")
            if int(modulus) != self.p:
                raise SchemaError(
                    f"scalar {text!r} declared mod {modulus}, ring has p={self.p}")
            text = value.strip()
        try:
            if self.kind == "Q":
                return Fraction(text)
            if "/" in text:
                raise SchemaError(f"fractional scalar {text!r} in ring {self.token()}")
            return self.normalize(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"cannot parse scalar {text!r}: {exc}") from exc

    def format_scalar(self, x) -> str:
        x = self.normalize(x)
        if self.kind == "Q":
            return str(x)
        if self.kind == "Fp":
            return f"{x} mod {self.p}"
        return str(x)
