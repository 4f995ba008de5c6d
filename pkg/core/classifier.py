"""Decide balancedness of σ_{n,d} from the known weight theorems.

Rules are tried in a fixed order and every condition that was looked at is
recorded in the verdict trace, so two runs always produce identical verdicts:

  1. d = 1                       -> BalancedLinear
  2. d = 2^s                     -> Theorem-2 (n ≡ 3 mod 4), Theorem-4 (n >= 3),
                                    Theorem-1 (n < 3); direction from the
                                    residue table of wt(σ_{n,2^s})
  3. d odd                       -> Corollary-3
  4. d even, wt(d) >= 2          -> Theorem-3 (r = -1) or Theorem-5 (r in 0..2),
                                    sub-cases (1), (2), (3) in order
  5. otherwise                   -> Conjecture-2 shapes (OpenCase1 / OpenCase2)
"""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .closed_forms import trichotomy_weight_pow2
from .combinatorics import popcount, preceq
from .errors import UnrepresentableError
from .weights import Esbf, Trichotomy, power_decomposition, weight_exact

logger = logging.getLogger(__name__)


class VerdictKind(str, Enum):
    BALANCED_LINEAR = "BalancedLinear"
    BALANCED_POW2_FAMILY = "BalancedPow2Family"
    NOT_BALANCED_LESS = "NotBalancedLess"
    NOT_BALANCED_GREATER = "NotBalancedGreater"
    OPEN_CASE_1 = "OpenCase1"
    OPEN_CASE_2 = "OpenCase2"

    @property
    def balanced(self) -> bool:
        return self in (VerdictKind.BALANCED_LINEAR, VerdictKind.BALANCED_POW2_FAMILY)

    @property
    def not_balanced(self) -> bool:
        return self in (VerdictKind.NOT_BALANCED_LESS, VerdictKind.NOT_BALANCED_GREATER)

    @property
    def open(self) -> bool:
        return self in (VerdictKind.OPEN_CASE_1, VerdictKind.OPEN_CASE_2)


@dataclass(frozen=True)
class TraceStep:
    condition: str
    outcome: bool


@dataclass(frozen=True)
class Verdict:
    esbf: Esbf
    kind: VerdictKind
    rule: str
    trace: Tuple[TraceStep, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "n": self.esbf.n,
            "d": self.esbf.d,
            "kind": self.kind.value,
            "rule": self.rule,
            "trace": [{"condition": s.condition, "outcome": s.outcome} for s in self.trace],
        }


@dataclass(frozen=True)
class CanonicalParams:
    """n = 2^{t+1} l + r with l odd, t >= 1, r in {-1, 0, 1, 2}; optionally d = 2^{t+1} d' + d''."""

    t: int
    l: int
    r: int
    d_hi: Optional[int] = None
    d_lo: Optional[int] = None

    @property
    def c(self) -> int:
        return (self.l - 1) // 2

    @property
    def n(self) -> int:
        return (self.l << (self.t + 1)) + self.r

    def with_degree(self, d: int) -> "CanonicalParams":
        d_hi, d_lo = divmod(d, 1 << (self.t + 1))
        return replace(self, d_hi=d_hi, d_lo=d_lo)


def _two_adic_valuation(x: int) -> int:
    return (x & -x).bit_length() - 1


def canonicalize(n: int) -> CanonicalParams:
    if n < 3:
        raise UnrepresentableError(f"n={n} não admite a forma 2^(t+1)·l + r (exige n >= 3)")
    # n ≡ 3, 0, 1, 2 (mod 4) -> r = -1, 0, 1, 2; the remaining 2^{t+1} l is a multiple of 4
    r = {3: -1, 0: 0, 1: 1, 2: 2}[n % 4]
    m = n - r
    t = _two_adic_valuation(m) - 1
    return CanonicalParams(t=t, l=m >> (t + 1), r=r)


class _Trace:
    def __init__(self):
        self.steps: List[TraceStep] = []

    def check(self, condition: str, outcome: bool) -> bool:
        self.steps.append(TraceStep(condition, bool(outcome)))
        return bool(outcome)


def _direction(trichotomy: Trichotomy) -> VerdictKind:
    # Equal never reaches here: outside the 2^{t+1} l - 1 family the residue table is strict
    if trichotomy is Trichotomy.GREATER:
        return VerdictKind.NOT_BALANCED_GREATER
    return VerdictKind.NOT_BALANCED_LESS


def _classify_power_of_two(e: Esbf, trace: _Trace) -> Tuple[VerdictKind, str]:
    s = e.d.bit_length() - 1
    trichotomy = trichotomy_weight_pow2(e.n, s)
    trace.check(f"wt(σ_{e.n},{e.d}) residue table gives {trichotomy.value}", True)
    if e.n < 3:
        rule = "Theorem-1"
    elif trace.check("n ≡ 3 (mod 4)", e.n % 4 == 3):
        params = canonicalize(e.n)
        trace.check(f"n = 2^(t+1)·l - 1 with t={params.t}, l={params.l}", True)
        rule = "Theorem-2"
        if trace.check(f"1 <= s={s} <= t={params.t}", 1 <= s <= params.t):
            return VerdictKind.BALANCED_POW2_FAMILY, rule
    else:
        rule = "Theorem-4"
    return _direction(trichotomy), rule


def _corollary4(e: Esbf) -> bool:
    d1 = power_decomposition(e.d)[0]
    return not preceq(2 * e.d, e.n) or preceq((1 << (d1 + 2)) - 1, e.n)


def _classify_even_composite(e: Esbf, trace: _Trace) -> Tuple[VerdictKind, str]:
    params = canonicalize(e.n).with_degree(e.d)
    t, l, r, c = params.t, params.l, params.r, params.c
    d_hi, d_lo = params.d_hi, params.d_lo
    trace.check(f"n = 2^(t+1)·l + r with t={t}, l={l}, r={r}", True)
    trace.check(f"d = 2^(t+1)·d' + d'' with d'={d_hi}, d''={d_lo}", True)
    trace.check("2d ⋠ n or 2^(d_1+2) - 1 ⪯ n", _corollary4(e))
    hi_outside = not preceq(d_hi, c)

    if r == -1:
        if trace.check("l = 1", l == 1):
            return VerdictKind.NOT_BALANCED_LESS, "Theorem-3(1)"
        if trace.check("l >= 3 and d'' > 0", d_lo > 0):
            return VerdictKind.NOT_BALANCED_LESS, "Theorem-3(2)"
        if trace.check(f"l >= 3 and d'' = 0 and d' ⋠ c={c}", hi_outside):
            return VerdictKind.NOT_BALANCED_LESS, "Theorem-3(3)"
    else:
        if trace.check("l = 1", l == 1):
            return VerdictKind.NOT_BALANCED_LESS, "Theorem-5(1)"
        if trace.check(f"l >= 3 and d'' = 0 and d' ⋠ c={c}", d_lo == 0 and hi_outside):
            return VerdictKind.NOT_BALANCED_LESS, "Theorem-5(2)"
        if trace.check(
            f"l >= 3 and d'' > 0 and (d' ⋠ c={c} or d'' != 2^t)",
            d_lo > 0 and (hi_outside or d_lo != (1 << t)),
        ):
            return VerdictKind.NOT_BALANCED_LESS, "Theorem-5(3)"

    if trace.check(f"d'' = 0, wt(d') >= 2, d' ⪯ c={c}", d_lo == 0 and popcount(d_hi) >= 2):
        return VerdictKind.OPEN_CASE_1, "Conjecture-2(1)"
    trace.check(f"d'' = 2^t, 1 <= d' ⪯ c={c}, r in {{0,1,2}}", d_lo == (1 << t) and d_hi >= 1 and r >= 0)
    return VerdictKind.OPEN_CASE_2, "Conjecture-2(2)"


def classify(e: Esbf) -> Verdict:
    trace = _Trace()
    d = e.d
    if trace.check("d = 1", d == 1):
        kind, rule = VerdictKind.BALANCED_LINEAR, "Linear"
    elif trace.check("d is a power of two", popcount(d) == 1):
        kind, rule = _classify_power_of_two(e, trace)
    elif trace.check("d > 1 is odd", d % 2 == 1):
        kind, rule = VerdictKind.NOT_BALANCED_LESS, "Corollary-3"
    else:
        trace.check("d is even and wt(d) >= 2", True)
        kind, rule = _classify_even_composite(e, trace)
    return Verdict(e, kind, rule, tuple(trace.steps))


def open_cases(n_max: int) -> List[Esbf]:
    if n_max < 3:
        raise UnrepresentableError(f"n_max deve ser >= 3, recebido {n_max}")
    found = []
    for n in range(3, n_max + 1):
        for d in range(2, n + 1, 2):
            e = Esbf(n, d)
            if classify(e).kind.open:
                found.append(e)
    logger.info("open_cases(%d): %d pares", n_max, len(found))
    return found


def two_power_certificate(e: Esbf) -> Optional[Tuple[int, int]]:
    """First bit pair 1 <= t < s of d with wt(σ_{n,2^t+2^s}) < 2^{n-1}, found by exact weights.

    When such a pair exists, σ_{n,d} has strictly smaller support and is not balanced.
    """
    bits = [k for k in power_decomposition(e.d) if k >= 1]
    for i, t in enumerate(bits):
        for s in bits[i + 1:]:
            report = weight_exact(Esbf(e.n, (1 << t) + (1 << s)))
            if report.trichotomy is Trichotomy.LESS:
                return t, s
    return None
