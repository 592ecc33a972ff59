"""Exact combinatorial primitives shared by every other module.

All counts are Python big integers and every ratio is a
``fractions.Fraction`` (re-exported as :data:`Rational`), so the core never
touches floating point.  Decimal strings exist only at output boundaries via
:func:`to_decimal`.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) with out-of-range k mapped to 0.

    The bound expressions rely on C(c - 1, t - 1) vanishing once the
    replication t exceeds the cut size c, so k < 0 and k > n return 0
    instead of raising.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def surjection_count(k: int, s: int) -> int:
    """Number of functions from a k-element set onto an s-element set.

    Inclusion-exclusion:  sum_{i=0..s} (-1)^i C(s, i) (s - i)^k.
    The sum itself evaluates to 0 whenever s > k (no map can be onto).
    """
    if k < 1 or s < 1:
        raise ValueError(f"k and s must be positive, got k={k}, s={s}")
    total = 0
    for i in range(s + 1):
        term = binom(s, i) * (s - i) ** k
        total += -term if i % 2 else term
    return total


def to_decimal(value: Fraction, digits: int) -> str:
    """Render an exact rational as a fixed-point decimal string.

    Lossy by design (round half to even on the last digit); used only when
    emitting CSV/JSON for consumers that want decimals.
    """
    if digits < 0:
        raise ValueError(f"digits must be nonnegative, got {digits}")
    negative = value < 0
    magnitude = -value if negative else value
    scale = 10**digits
    whole, rem = divmod(magnitude.numerator * scale, magnitude.denominator)
    doubled = 2 * rem
    if doubled > magnitude.denominator or (
        doubled == magnitude.denominator and whole % 2 == 1
    ):
        whole += 1
    int_part, frac_part = divmod(whole, scale)
    text = str(int_part) if digits == 0 else f"{int_part}.{frac_part:0{digits}d}"
    return f"-{text}" if negative and whole != 0 else text
