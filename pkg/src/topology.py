"""
Closed-form Euler numbers of X(m) and the per-(N, m) invariant report

T is the (1, n+1) hypersurface in P^1 x P^n. sigma_n is the Euler number
of its smooth fibre over P^1 and d_n counts the singular fibres.
"""

import logging
from typing import Optional

from .curves import build_C, build_L, certify_C, certify_L, free_numeric_test
from .lattice import canonical_class, pairing
from .models import EulerBreakdown, InvariantReport, VerificationError
from .smoothing import SurfaceModel, b2_of_X, b2_of_X0, d_semistability_check

logger = logging.getLogger(__name__)


def _require_positive(name: str, value: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def sigma(n: int) -> int:
    """((-n)^{n+1} + n^2 + 2n) / (n+1)"""
    _require_positive("n", n)
    quotient, remainder = divmod((-n) ** (n + 1) + n * n + 2 * n, n + 1)
    if remainder:
        raise VerificationError(f"n+1 does not divide the sigma numerator at n={n}")
    return quotient


def hypersurface_euler(n: int) -> int:
    """e(H_{n+1}) for a degree n+1 hypersurface in P^n, the other printed form of sigma"""
    _require_positive("n", n)
    quotient, remainder = divmod((-n) ** (n + 1) - 1, n + 1)
    if remainder:
        raise VerificationError(f"n+1 does not divide (-n)^(n+1) - 1 at n={n}")
    return (n + 1) + quotient


def discriminant_degree(n: int) -> int:
    """d_n = (n+1) n^n, the number of singular fibres of T -> P^1"""
    _require_positive("n", n)
    return (n + 1) * n ** n


def delta(n: int) -> int:
    return (-1) ** n * discriminant_degree(n)


def gamma(m: int) -> int:
    """e(C_m) = -18(27m^2 - 2m + 5)"""
    _require_positive("m", m)
    return -18 * (27 * m * m - 2 * m + 5)


def gamma_from_lattice(m: int) -> int:
    """-(k + C_m).C_m by adjunction on S"""
    c_m = build_C(m)
    return -pairing(canonical_class() + c_m, c_m)


def euler_closed(n: int, m: int) -> int:
    return (gamma(m) - 12) * sigma(n) + 24 * delta(n)


def euler_breakdown(n: int, m: int) -> EulerBreakdown:
    s = sigma(n)
    d = discriminant_degree(n)
    dl = delta(n)
    g = gamma(m)

    e_T = 2 * s + dl
    e_X2 = 3 * e_T
    e_Gamma = g * s + 18 * dl
    e_X1 = (g + 6) * s + 21 * dl
    e_X12 = 12 * s
    e_X = e_X1 + e_X2 - 2 * e_X12

    # blowing up P^2 x T; the elliptic centres over F_1..F_m add nothing
    if e_X1 != 3 * e_T + e_Gamma:
        raise VerificationError(f"Blow-up count for e(X1) fails at n={n}, m={m}")
    if e_X != euler_closed(n, m):
        raise VerificationError(f"Mayer-Vietoris disagrees with the closed form at n={n}, m={m}")

    return EulerBreakdown(
        n=n, m=m, sigma_n=s, d_n=d, delta_n=dl, gamma_m=g,
        e_T=e_T, e_X1=e_X1, e_X2=e_X2, e_X12=e_X12,
        e_Cm=g, e_Gamma=e_Gamma, discriminant_points=18 * d, e_X=e_X,
    )


def sign_trend(n: int, m_from: int, m_to: int) -> str:
    """increasing, decreasing, constant or mixed behaviour of e(X) over m"""
    if m_to <= m_from:
        raise ValueError(f"Need m_from < m_to, got {m_from}..{m_to}")
    values = [euler_closed(n, m) for m in range(m_from, m_to + 1)]
    steps = [b - a for a, b in zip(values, values[1:])]
    if all(s == 0 for s in steps):
        return "constant"
    if all(s > 0 for s in steps):
        return "increasing"
    if all(s < 0 for s in steps):
        return "decreasing"
    return "mixed"


def theorem_b2(N: int, m: int) -> int:
    """b_2(X) = m + 10 for N = 4 and m + 2 for N >= 5"""
    if N == 4:
        return m + 10
    if N >= 5:
        return m + 2
    raise ValueError(f"b_2 formula covers N >= 4, got N={N}")


def theorem_report(N: int, m: int, alpha_cap: Optional[int] = None) -> InvariantReport:
    if isinstance(N, bool) or not isinstance(N, int) or N < 3:
        raise ValueError(f"N must be an integer >= 3, got {N!r}")
    _require_positive("m", m)
    n = N - 2
    in_range = N >= 4

    b2_X0 = b2_X = None
    if in_range:
        model = SurfaceModel.for_dimension(n)
        b2_X0 = b2_of_X0(model, m)
        b2_X = b2_of_X(model, m)
        if b2_X != theorem_b2(N, m):
            raise VerificationError(f"b_2(X)={b2_X} disagrees with m-formula at N={N}, m={m}")
    else:
        logger.info(f"N={N} lies outside the b_2 range; reporting e(X) only")

    cap = m if alpha_cap is None else min(m, alpha_cap)
    L = build_L(m)
    C = build_C(m)
    cert_L = certify_L(m, cap)
    cert_C = certify_C(m, cap)
    euler = euler_breakdown(n, m)

    return InvariantReport(
        N=N,
        n=n,
        m=m,
        b2_X0=b2_X0,
        b2_X=b2_X,
        e=euler.e_X,
        a=N - 2,
        euler=euler,
        alpha_cap=cap,
        ample_L=cert_L.verdict,
        ample_C=cert_C.verdict,
        free_L=free_numeric_test(L, cert_L),
        free_C=free_numeric_test(C, cert_C),
        d_semistable=d_semistability_check(m).holds,
        in_theorem_range=in_range,
        hypotheses=cert_L.hypotheses,
    )
