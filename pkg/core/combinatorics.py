"""Exact integer combinatorics on binary expansions.

Binomial rows are built once per n by the multiplicative sweep
C(n,k+1) = C(n,k)(n-k)/(k+1) and kept in an LRU cache, so a run over every d
for a fixed n touches a single row.
"""
from functools import lru_cache
from typing import Iterator, List, Tuple

from .errors import InvalidParametersError, InvalidResidueError

PASCAL_CACHE_ROWS = 1024


def _check_index(name: str, value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise InvalidParametersError(f"{name} deve ser um inteiro não negativo, recebido {value!r}")
    return value


@lru_cache(maxsize=PASCAL_CACHE_ROWS)
def pascal_row(n: int) -> Tuple[int, ...]:
    _check_index("n", n)
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return tuple(row)


def binomial(n: int, k: int) -> int:
    _check_index("n", n)
    _check_index("k", k)
    if k > n:
        return 0
    return pascal_row(n)[k]


def preceq(m: int, n: int) -> bool:
    """m ⪯ n: every binary digit of m is at most the matching digit of n."""
    return (m & n) == m


def lucas_parity(n: int, m: int) -> int:
    return 1 if preceq(m, n) else 0


def or_join(i: int, j: int) -> int:
    return i | j


def popcount(x: int) -> int:
    return bin(x).count("1")


def bit_positions(x: int) -> List[int]:
    return [k for k in range(x.bit_length()) if (x >> k) & 1]


def supermasks_upto(d: int, n: int) -> Iterator[int]:
    """Yield every i in [0, n] with d ⪯ i, by completing d with submasks of its free bits."""
    if d > n:
        return
    free = ~d & ((1 << n.bit_length()) - 1)
    q = free
    while True:
        i = d | q
        if i <= n:
            yield i
        if q == 0:
            break
        q = (q - 1) & free


def residue_class_sum(n: int, L: int, i: int) -> int:
    _check_index("n", n)
    if L < 1 or i < 0 or i >= L:
        raise InvalidResidueError(f"resíduo inválido: i={i}, L={L} (exige L >= 1 e 0 <= i < L)")
    return sum(pascal_row(n)[i::L])
