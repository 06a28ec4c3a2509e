"""Theta characteristics as pairs of bit vectors over F2.

A characteristic ``(delta', delta'')`` in (1/2)Z^g/Z^g x (1/2)Z^g/Z^g is stored as
two tuples of bits; bit ``b`` stands for the coordinate ``b/2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


def _bits(values, name: str) -> tuple[int, ...]:
    out = tuple(int(v) for v in values)
    if any(b not in (0, 1) for b in out):
        raise DomainError(f"{name} must contain only bits 0/1", value=list(out))
    return out


@dataclass(frozen=True)
class Characteristic:
    dp: tuple[int, ...]
    dpp: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dp", _bits(self.dp, "dp"))
        object.__setattr__(self, "dpp", _bits(self.dpp, "dpp"))
        if len(self.dp) != len(self.dpp) or not self.dp:
            raise DomainError(
                "delta' and delta'' must have the same positive length",
                dp=list(self.dp), dpp=list(self.dpp),
            )

    @property
    def genus(self) -> int:
        return len(self.dp)

    @classmethod
    def zero(cls, g: int) -> "Characteristic":
        return cls((0,) * g, (0,) * g)

    @classmethod
    def from_halves(cls, dp, dpp) -> "Characteristic":
        """Build from half-integer coordinates, reducing mod Z."""
        def to_bit(x):
            twice = 2 * float(x)
            if abs(twice - round(twice)) > 1e-12:
                raise DomainError("coordinates must be half-integers", value=float(x))
            return int(round(twice)) % 2

        return cls(tuple(to_bit(x) for x in dp), tuple(to_bit(x) for x in dpp))

    @property
    def eps_prime(self) -> np.ndarray:
        return np.asarray(self.dp, dtype=float) / 2

    @property
    def eps_dprime(self) -> np.ndarray:
        return np.asarray(self.dpp, dtype=float) / 2

    def parity(self) -> Parity:
        return parity(self)

    def to_json(self) -> dict:
        return {"g": self.genus, "dp": list(self.dp), "dpp": list(self.dpp)}

    @classmethod
    def from_json(cls, data: dict) -> "Characteristic":
        ch = cls(tuple(data["dp"]), tuple(data["dpp"]))
        if "g" in data and int(data["g"]) != ch.genus:
            raise DomainError("genus field disagrees with bit vectors", g=data["g"])
        return ch

    def __str__(self):
        halves = ",".join("½" if b else "0" for b in self.dp + self.dpp)
        return f"[{halves}]"


def parity(delta: Characteristic) -> Parity:
    dot = sum(a & b for a, b in zip(delta.dp, delta.dpp)) % 2
    return Parity.ODD if dot else Parity.EVEN


def direct_sum(first: Characteristic, second: Characteristic) -> Characteristic:
    return Characteristic(first.dp + second.dp, first.dpp + second.dpp)


def split(delta: Characteristic, g1: int) -> tuple[Characteristic, Characteristic]:
    if not 0 < g1 < delta.genus:
        raise DomainError("split point must satisfy 0 < g1 < g", g1=g1, g=delta.genus)
    return (
        Characteristic(delta.dp[:g1], delta.dpp[:g1]),
        Characteristic(delta.dp[g1:], delta.dpp[g1:]),
    )


def enumerate_characteristics(g: int) -> list[Characteristic]:
    """All 2^(2g) characteristics, lexicographic in the bit string dp + dpp."""
    if not 1 <= g <= 4:
        raise DomainError("enumeration is limited to 1 <= g <= 4", g=g)
    return [
        Characteristic(bits[:g], bits[g:])
        for bits in itertools.product((0, 1), repeat=2 * g)
    ]


def half_period(delta: Characteristic, omega) -> np.ndarray:
    """The 2-torsion point eps' + eps'' Omega (row-vector convention)."""
    omega = np.asarray(getattr(omega, "matrix", omega), dtype=complex)
    if omega.shape != (delta.genus, delta.genus):
        raise DomainError(
            "characteristic genus does not match period matrix size",
            g=delta.genus, shape=list(omega.shape),
        )
    return delta.eps_prime + delta.eps_dprime @ omega
