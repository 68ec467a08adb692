"""Small shared helpers."""

from fractions import Fraction


class _Infinite:
    """Singleton marker for an infinite dimension."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    def __bool__(self):
        return True


INFINITE = _Infinite()


def is_finite(x) -> bool:
    return isinstance(x, int)


def binomial(k: int, i: int) -> Fraction:
    """Binomial coefficient function C(k, i) for any integer k, i >= 0."""
    if i < 0:
        raise ValueError("lower index must be >= 0")
    num = Fraction(1)
    for t in range(i):
        num *= Fraction(k - t)
    for t in range(1, i + 1):
        num /= t
    return num


def stabilized_difference(values: dict):
    """First difference of an integer-keyed table once three in a row agree.

    Returns (difference, k at which the stable run starts), or (None, None).
    """
    ks = sorted(values)
    diffs = [values[k + 1] - values[k] for k in ks[:-1]]
    for t in range(len(diffs) - 2):
        if diffs[t] == diffs[t + 1] == diffs[t + 2]:
            return diffs[t], ks[t]
    return None, None
