"""Small integer helpers and the sum-DoF upper bound."""

from fractions import Fraction


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def residue(a: int, q: int) -> int:
    """Least positive residue of ``a`` mod ``q``; multiples of ``q`` map to ``q``."""
    r = a % q
    return q if r == 0 else r


def tau_of(G: int, L: int) -> int:
    """Maximum number of users a packet may be visible to, ``ceil(L/G)``."""
    return ceil_div(L, G)


def rho_of(G: int, L: int) -> int:
    """Null-space dimension left after zero-forcing ``tau-1`` users."""
    return residue(L, G)


def dof_upper_bound(G: int, L: int, K: int, gamma) -> Fraction:
    """``min{KG, G*K*gamma + G*ceil(L/G)}`` as an exact rational."""
    gamma = Fraction(gamma)
    if not 0 <= gamma <= 1:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    return min(Fraction(K * G), G * K * gamma + G * tau_of(G, L))


def format_fraction(x) -> str:
    """Render a rational as ``P/Q`` (denominator always printed)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
