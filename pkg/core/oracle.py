"""Brute-force ground truth for small n.

Nothing here uses the binary-digit shortcut of the weight engine: parities of
C(w,d) come from an additive Pascal triangle, and the literal path visits every
one of the 2^n inputs.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_SETTINGS
from .errors import CapExceededError
from .weights import Esbf

logger = logging.getLogger(__name__)

LITERAL_BLOCK_BITS = 16


@dataclass(frozen=True)
class TruthTableSummary:
    n: int
    d: int
    weight: int
    per_level_counts: Tuple[int, ...]


def _additive_pascal(n: int) -> List[List[int]]:
    rows = [[1]]
    for _ in range(n):
        prev = rows[-1]
        rows.append([1] + [prev[k] + prev[k + 1] for k in range(len(prev) - 1)] + [1])
    return rows


def _level_parities(n: int, d: int) -> List[int]:
    """C(w, d) mod 2 for w = 0..n, by Pascal's rule over GF(2) restricted to column d."""
    column = [1] + [0] * d
    parities = []
    for _ in range(n + 1):
        parities.append(column[d])
        column = [1] + [column[k] ^ column[k - 1] for k in range(1, d + 1)]
    return parities


def brute_force_weight(e: Esbf, cap: Optional[int] = None) -> TruthTableSummary:
    cap = DEFAULT_SETTINGS.oracle_level_cap if cap is None else cap
    if e.n > cap:
        raise CapExceededError(e.n, cap)
    triangle = _additive_pascal(e.n)
    counts = tuple(
        triangle[e.n][i] if i >= e.d and triangle[i][e.d] % 2 == 1 else 0 for i in range(e.n + 1)
    )
    return TruthTableSummary(e.n, e.d, sum(counts), counts)


def _count_block(parity: np.ndarray, n: int, start: int, stop: int) -> int:
    x = np.arange(start, stop, dtype=np.uint32)
    weights = np.zeros(x.shape, dtype=np.uint8)
    for k in range(n):
        weights += ((x >> k) & 1).astype(np.uint8)
    return int(parity[weights].sum(dtype=np.int64))


def literal_enumeration_weight(e: Esbf, cap: Optional[int] = None) -> int:
    cap = DEFAULT_SETTINGS.oracle_literal_cap if cap is None else cap
    if e.n > cap:
        raise CapExceededError(e.n, cap)
    parity = np.array(_level_parities(e.n, e.d), dtype=np.int64)
    total = 1 << e.n
    block = 1 << LITERAL_BLOCK_BITS
    # blocks are input-prefix ranges; their counts simply add up
    return sum(_count_block(parity, e.n, start, min(start + block, total)) for start in range(0, total, block))


def evaluate_anf(e: Esbf, x: Sequence[int]) -> int:
    """σ_{n,d}(x) as the XOR of every degree-d monomial x_{i_1}...x_{i_d}."""
    if len(x) != e.n:
        raise ValueError(f"entrada com {len(x)} bits, esperado {e.n}")
    value = 0
    for monomial in combinations(range(e.n), e.d):
        if all(x[i] for i in monomial):
            value ^= 1
    return value
