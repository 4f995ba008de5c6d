"""Trigonometric closed forms for residue-class binomial sums and weights.

Every evaluation runs in mpmath interval arithmetic, so the returned
enclosure [lower, upper] is guaranteed to contain the true value. Since the
true value is an integer count, a half-width below 1/2 certifies the nearest
integer. Equality with 2^{n-1} is never decided here; see
``trichotomy_weight_pow2`` and the exact weight engine for that.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import mpmath
from mpmath.ctx_iv import MPIntervalContext

from .config import DEFAULT_SETTINGS, Settings
from .errors import InvalidParametersError, PrecisionInsufficientError
from .weights import Trichotomy

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ClosedFormEval:
    lower: Fraction
    upper: Fraction
    precision_bits: int
    escalations: int = 0

    @property
    def value(self) -> Fraction:
        return (self.lower + self.upper) / 2

    @property
    def error_bound(self) -> Fraction:
        return (self.upper - self.lower) / 2

    @property
    def certified(self) -> bool:
        return self.error_bound < HALF

    @property
    def nearest(self) -> int:
        return int((self.value + HALF) // 1)


@lru_cache(maxsize=32)
def _interval_context(precision_bits: int) -> MPIntervalContext:
    # one context per precision; never mutated after creation
    ctx = MPIntervalContext()
    ctx.prec = precision_bits
    return ctx


def _to_fraction(point, precision_bits: int) -> Fraction:
    v = mpmath.mpf(point, prec=precision_bits)
    man, exp = v.man_exp
    if v < 0:
        man = -man
    return Fraction(man) * (Fraction(2) ** exp)


def _enclosure(x, precision_bits: int, escalations: int) -> ClosedFormEval:
    return ClosedFormEval(
        lower=_to_fraction(x.a, precision_bits),
        upper=_to_fraction(x.b, precision_bits),
        precision_bits=precision_bits,
        escalations=escalations,
    )


def _angle(ctx, numerator: int, denominator: int):
    """Interval enclosure of numerator*π/denominator, reduced modulo 2π first."""
    k = numerator % (2 * denominator)
    return ctx.pi * k / denominator


@lru_cache(maxsize=64)
def _cos_table(precision_bits: int, L: int) -> Tuple:
    """cos(kπ/L) for k = 0..2L-1."""
    ctx = _interval_context(precision_bits)
    return tuple(ctx.cos(_angle(ctx, k, L)) for k in range(2 * L))


@lru_cache(maxsize=256)
def _doubled_cos_powers(precision_bits: int, n: int, L: int) -> Tuple:
    """(2cos(jπ/L))^n for j = 0..L/2-1; shared by every residue i."""
    cosines = _cos_table(precision_bits, L)
    return tuple((2 * cosines[j]) ** n for j in range(L >> 1))


def _pow2(ctx, k: int):
    return ctx.mpf(2) ** k


def _certified(
    what: str,
    n: int,
    evaluate: Callable[[MPIntervalContext], object],
    precision_bits: Optional[int],
    escalate: bool,
    settings: Settings,
) -> ClosedFormEval:
    bits = precision_bits if precision_bits is not None else settings.default_precision(n)
    escalations = 0
    while True:
        result = _enclosure(evaluate(_interval_context(bits)), bits, escalations)
        if result.certified:
            return result
        if not escalate or bits * 2 > settings.precision_cap_bits:
            raise PrecisionInsufficientError(what, bits, result.error_bound)
        logger.debug("%s: cota %.3g com %d bits, dobrando precisão", what, float(result.error_bound), bits)
        bits *= 2
        escalations += 1


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParametersError(message)


def residue_class_sum_closed(
    n: int,
    p: int,
    i: int,
    precision_bits: Optional[int] = None,
    escalate: bool = True,
    settings: Settings = DEFAULT_SETTINGS,
) -> ClosedFormEval:
    _require(n >= 1, f"n deve ser >= 1, recebido {n}")
    _require(p >= 1, f"p deve ser >= 1, recebido {p}")
    L = 1 << p
    _require(0 <= i < L, f"i deve satisfazer 0 <= i < 2^p, recebido i={i}, p={p}")

    def evaluate(ctx):
        cosines = _cos_table(ctx.prec, L)
        powers = _doubled_cos_powers(ctx.prec, n, L)
        total = ctx.mpf(0)
        for j in range(1, (L >> 1)):
            total += powers[j] * cosines[(j * (n - 2 * i)) % (2 * L)]
        return _pow2(ctx, n - p) + _pow2(ctx, 1 - p) * total

    return _certified(f"A_{n}^{L}({i})", n, evaluate, precision_bits, escalate, settings)


def trichotomy_weight_pow2(n: int, t: int) -> Trichotomy:
    """Relation of wt(σ_{n,2^t}) to 2^{n-1} from the residue of n modulo 2^{t+2}."""
    _require(t >= 1 and (1 << t) <= n, f"exige t >= 1 e 2^t <= n, recebido n={n}, t={t}")
    r = n % (1 << (t + 2))
    half = 1 << (t + 1)
    if r == half - 1 or r == 2 * half - 1:
        return Trichotomy.EQUAL
    if r <= half - 2:
        return Trichotomy.LESS
    return Trichotomy.GREATER


def weight_pow2_closed(
    n: int,
    t: int,
    precision_bits: Optional[int] = None,
    escalate: bool = True,
    settings: Settings = DEFAULT_SETTINGS,
) -> ClosedFormEval:
    _require(t >= 1 and (1 << t) <= n, f"exige t >= 1 e 2^t <= n, recebido n={n}, t={t}")
    M = 1 << (t + 1)
    r = n % (1 << (t + 2))

    def evaluate(ctx):
        total = ctx.mpf(0)
        for j in range(1, 1 << t, 2):
            a = _angle(ctx, j, M)
            total += ctx.cos(a) ** n / ctx.sin(a) * ctx.sin(_angle(ctx, j * (r + 1), M))
        return _pow2(ctx, n - 1) - _pow2(ctx, n - t) * total

    return _certified(f"wt(σ_{n},{1 << t})", n, evaluate, precision_bits, escalate, settings)


def weight_pow2_plus1_closed(
    n: int,
    t: int,
    precision_bits: Optional[int] = None,
    escalate: bool = True,
    settings: Settings = DEFAULT_SETTINGS,
) -> ClosedFormEval:
    _require(t >= 1 and (1 << t) + 1 <= n, f"exige t >= 1 e 2^t + 1 <= n, recebido n={n}, t={t}")
    M = 1 << (t + 1)
    l_prime, r = divmod(n, M)
    sign = 1 if l_prime % 2 == 1 else -1

    def evaluate(ctx):
        total = ctx.mpf(0)
        for j in range(1, 1 << t, 2):
            a = _angle(ctx, j, M)
            total += ctx.cos(a) ** (n - 1) * ctx.sin(_angle(ctx, j * r, M)) / ctx.sin(a)
        return _pow2(ctx, n - 2) + sign * _pow2(ctx, n - t - 1) * total

    return _certified(f"wt(σ_{n},{(1 << t) + 1})", n, evaluate, precision_bits, escalate, settings)


def quarter_trichotomy_pow2_plus1(n: int, t: int) -> Optional[Trichotomy]:
    """Relation of wt(σ_{n,2^t+1}) to 2^{n-2} where it is provable, else None.

    With n = 2^{t+1} l' + r, 0 <= r < 2^{t+1}: r = 0 gives equality; l' even
    and r >= 1 gives Less. Other cases carry no claim.
    """
    _require(t >= 1 and (1 << t) + 1 <= n, f"exige t >= 1 e 2^t + 1 <= n, recebido n={n}, t={t}")
    l_prime, r = divmod(n, 1 << (t + 1))
    if r == 0:
        return Trichotomy.EQUAL
    if l_prime % 2 == 0:
        return Trichotomy.LESS
    return None


def weight_two_powers_closed(
    n: int,
    t: int,
    s: int,
    precision_bits: Optional[int] = None,
    escalate: bool = True,
    settings: Settings = DEFAULT_SETTINGS,
) -> ClosedFormEval:
    _require(1 <= t < s, f"exige 1 <= t < s, recebido t={t}, s={s}")
    d = (1 << t) + (1 << s)
    _require(d <= n, f"exige 2^t + 2^s <= n, recebido n={n}, d={d}")
    Q = 1 << (s + 1)
    P = 1 << (t + 1)
    shift = n - (1 << t) + 1

    def evaluate(ctx):
        main = ctx.mpf(0)
        for j in range(1, 1 << s, 2):
            a = _angle(ctx, j, Q)
            numerator = ctx.sin(_angle(ctx, j << t, Q)) * ctx.sin(_angle(ctx, j * shift, Q))
            denominator = ctx.sin(a) * ctx.sin(_angle(ctx, j << (t + 1), Q))
            main += ctx.cos(a) ** n * numerator / denominator
        # terms j = m 2^{s-t}, m odd, of the full sum over j, where sin(2^{t+1} a_j) vanishes
        degenerate = ctx.mpf(0)
        for m in range(1, 1 << t, 2):
            b = _angle(ctx, m, P)
            term = ctx.cos(b) ** n * ctx.cos(_angle(ctx, m * shift, P)) / ctx.sin(b)
            degenerate += term if (m >> 1) % 2 == 0 else -term
        return _pow2(ctx, n - 2) - _pow2(ctx, n - s) * main - _pow2(ctx, n - t - 1) * degenerate

    return _certified(f"wt(σ_{n},{d})", n, evaluate, precision_bits, escalate, settings)


def pow2_coefficients(
    n: int, t: int, precision_bits: Optional[int] = None, settings: Settings = DEFAULT_SETTINGS
) -> List[Tuple[int, Fraction, Fraction]]:
    """Enclosures of (cos(jπ/2^{t+1}))^n csc(jπ/2^{t+1}) for odd j <= 2^t - 1."""
    _require(t >= 1, f"t deve ser >= 1, recebido {t}")
    bits = precision_bits if precision_bits is not None else settings.default_precision(n)
    ctx = _interval_context(bits)
    M = 1 << (t + 1)
    out = []
    for j in range(1, 1 << t, 2):
        a = _angle(ctx, j, M)
        x = ctx.cos(a) ** n / ctx.sin(a)
        out.append((j, _to_fraction(x.a, bits), _to_fraction(x.b, bits)))
    return out
