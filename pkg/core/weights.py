from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

from .combinatorics import bit_positions, pascal_row, preceq, supermasks_upto
from .errors import InvalidParametersError


class Trichotomy(str, Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"

    @classmethod
    def compare(cls, value: int, reference: int) -> "Trichotomy":
        if value < reference:
            return cls.LESS
        if value > reference:
            return cls.GREATER
        return cls.EQUAL


@dataclass(frozen=True, order=True)
class Esbf:
    """The elementary symmetric Boolean function σ_{n,d}."""

    n: int
    d: int

    def __post_init__(self):
        for name in ("n", "d"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidParametersError(f"{name} deve ser inteiro, recebido {value!r}")
        if self.n < 1:
            raise InvalidParametersError(f"n deve ser >= 1, recebido {self.n}")
        if not 1 <= self.d <= self.n:
            raise InvalidParametersError(f"d deve satisfazer 1 <= d <= n, recebido n={self.n}, d={self.d}")

    @property
    def half(self) -> int:
        return 1 << (self.n - 1)


@dataclass(frozen=True)
class SimplifiedVector:
    n: int
    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != self.n + 1:
            raise InvalidParametersError(f"vetor simplificado exige {self.n + 1} bits, recebeu {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise InvalidParametersError("vetor simplificado aceita apenas bits 0/1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "SimplifiedVector":
        return cls(len(bits) - 1, tuple(bits))

    @classmethod
    def indicator(cls, n: int, positions: Sequence[int]) -> "SimplifiedVector":
        bits = [0] * (n + 1)
        for i in positions:
            bits[i] = 1
        return cls(n, tuple(bits))

    def support(self) -> List[int]:
        return [i for i, b in enumerate(self.bits) if b]

    def __and__(self, other: "SimplifiedVector") -> "SimplifiedVector":
        if other.n != self.n:
            raise InvalidParametersError("vetores com n diferentes")
        return SimplifiedVector(self.n, tuple(a & b for a, b in zip(self.bits, other.bits)))


@dataclass(frozen=True)
class WeightReport:
    esbf: Esbf
    weight: int
    trichotomy: Trichotomy

    @property
    def balanced(self) -> bool:
        return self.trichotomy is Trichotomy.EQUAL

    @property
    def weight_hex(self) -> str:
        return format(self.weight, "x")


def value_vector(e: Esbf) -> SimplifiedVector:
    return SimplifiedVector(e.n, tuple(1 if preceq(e.d, i) else 0 for i in range(e.n + 1)))


def _subset_xor_transform(bits: Sequence[int]) -> Tuple[int, ...]:
    # out[i] = XOR of bits[k] over k ⪯ i; padded to a power of two, indices above n stay zero
    n = len(bits) - 1
    size = 1 << max(n, 0).bit_length()
    a = list(bits) + [0] * (size - len(bits))
    step = 1
    while step < size:
        for i in range(size):
            if i & step:
                a[i] ^= a[i ^ step]
        step <<= 1
    return tuple(a[: n + 1])


def mobius_value_from_anf(lam: SimplifiedVector) -> SimplifiedVector:
    return SimplifiedVector(lam.n, _subset_xor_transform(lam.bits))


def mobius_anf_from_value(v: SimplifiedVector) -> SimplifiedVector:
    # the transform is an involution over GF(2)
    return SimplifiedVector(v.n, _subset_xor_transform(v.bits))


def weight_exact(e: Esbf) -> WeightReport:
    row = pascal_row(e.n)
    weight = sum(row[i] for i in supermasks_upto(e.d, e.n))
    return WeightReport(e, weight, Trichotomy.compare(weight, e.half))


def is_balanced(e: Esbf) -> bool:
    return weight_exact(e).trichotomy is Trichotomy.EQUAL


def power_decomposition(d: int) -> List[int]:
    if not isinstance(d, int) or d < 1:
        raise InvalidParametersError(f"d deve ser >= 1, recebido {d!r}")
    return bit_positions(d)


def support_intersection(n: int, d: int) -> SimplifiedVector:
    """Bitwise AND of the value vectors of σ_{n,2^k} over the binary digits k of d."""
    parts = [value_vector(Esbf(n, 1 << k)) for k in power_decomposition(d)]
    result = parts[0]
    for part in parts[1:]:
        result = result & part
    return result


def balanced_degree_bound(n: int) -> int:
    """Largest d with wt(d) >= 2 for which σ_{n,d} can still be balanced."""
    return n // 2
