"""Small numeric helpers shared across modules.

Floor/ceil with a snap guard: parameter combinations frequently put values
exactly on integer boundaries (e.g. a range that is an exact multiple of the
site side), where a one-ULP rounding error in `x` would flip floor/ceil to
the wrong integer.  Values within SNAP_EPS (relative) of an integer are
snapped to that integer first.
"""

import math

SNAP_EPS = 1e-9


def snap(x: float) -> float:
    r = round(x)
    if abs(x - r) <= SNAP_EPS * max(1.0, abs(x)):
        return float(r)
    return x


def snap_floor(x: float) -> int:
    return int(math.floor(snap(x)))


def snap_ceil(x: float) -> int:
    return int(math.ceil(snap(x)))


def ceil_plus(x: float) -> int:
    """max(ceil(x), 0) with the snap guard."""
    return max(snap_ceil(x), 0)


def floor_plus(x: float) -> int:
    """max(floor(x), 0) with the snap guard."""
    return max(snap_floor(x), 0)


def pow_prob(base: float, exponent: float) -> float:
    """base**exponent for base in [0, 1], exponent >= 0, with 0**0 = 1.

    Computed in log space so that huge exponents (p̄^1000-scale terms in
    telescoping sums) underflow to 0.0 cleanly instead of raising.
    """
    if exponent == 0.0:
        return 1.0
    if base == 0.0:
        return 0.0
    if base == 1.0:
        return 1.0
    return math.exp(exponent * math.log(base))
