"""Size guards for the exhaustive routines.

Every brute-force path (n! permutations, 2^n assignments, local varieties)
checks its input size against a limit.  Setting the environment variable
``GISO_FORGE_GUARD_OVERRIDE`` to a non-empty value other than ``0`` disables
the checks.
"""
import os
from fractions import Fraction

ENV_VAR = "GISO_FORGE_GUARD_OVERRIDE"


class GuardError(ValueError):
    """Input exceeds the size limit of an exhaustive routine."""


def guards_disabled():
    return os.environ.get(ENV_VAR, "") not in ("", "0")


def check_guard(what, value, limit):
    if value > limit and not guards_disabled():
        raise GuardError(
            f"{what} = {value} exceeds guard {limit} (set {ENV_VAR}=1 to override)"
        )


def as_fraction(x):
    """Exact rational from an int, Fraction, str or float (floats via repr, so 0.1 -> 1/10)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)
