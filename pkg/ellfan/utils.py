from fractions import Fraction
from functools import reduce
from math import gcd

import scipy.special


def binomial(n, k):
    if k < 0 or k > n:
        return 0
    return int(scipy.special.comb(n, k, exact=True))


def lcm(a, b):
    a, b = abs(int(a)), abs(int(b))
    if a == 0 or b == 0:
        return 0
    return a // gcd(a, b) * b


def lcm_all(values):
    return reduce(lcm, values, 1)


def gcd_all(values):
    return reduce(gcd, (abs(int(v)) for v in values), 0)


def to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError("cannot read an exact rational from " + repr(value))


def fraction_to_str(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return str(value.numerator) + "/" + str(value.denominator)


def fold_mod_two(dims):
    """Fold a degree -> dimension table into its Z/2-graded totals."""
    folded = {0: 0, 1: 0}
    for degree, dim in dims.items():
        folded[int(degree) % 2] += dim
    return folded
