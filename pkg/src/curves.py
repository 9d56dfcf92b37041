"""
(-1)-classes, the divisors L_m and C_m, and the ampleness certificate

A (-1)-class alpha*h - sum(beta_i e_i) solves
    alpha^2 - sum beta_i^2 = -1,   3*alpha - sum beta_i = 1.
On a general rational elliptic surface (no (-2)-curves) these are exactly
the (-1)-curves, and Nakai-Moishezon reduces to positivity on them.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from math import isqrt
from typing import Iterator, List, Optional, Tuple

from sympy import Matrix

from .cremona import phi_pullback_closed
from .lattice import (
    LatticeVector, basis_e, basis_h, canonical_class, degree, fibre_class, pairing
)
from .models import AmpleCertificate, CurveClass, CurveKind, Verdict, VerificationError

logger = logging.getLogger(__name__)

NO_MINUS_TWO_CURVES = "no_minus_two_curves"
PHI_PULLBACK_NEF = "phi_pullback_nef"


def _min_square_sum(total: int, slots: int) -> int:
    """Smallest sum of squares of `slots` integers adding up to `total`"""
    q, r = divmod(total, slots)
    return slots * q * q + r * (2 * q + 1)


def _integer_points(total: int, squares: int, slots: int) -> Iterator[Tuple[int, ...]]:
    """All integer vectors of length `slots` with given sum and sum of squares,
    in lexicographic order"""
    if slots == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    if squares < 0 or (squares - total) % 2:
        return
    if _min_square_sum(total, slots) > squares:
        return
    bound = isqrt(squares)
    for b in range(-bound, bound + 1):
        for tail in _integer_points(total - b, squares - b * b, slots - 1):
            yield (b, *tail)


def _class_from_betas(alpha: int, betas: Tuple[int, ...]) -> CurveClass:
    return CurveClass.classify(LatticeVector((alpha, *(-b for b in betas))))


@lru_cache(maxsize=None)
def minus_one_classes_of_degree(alpha: int) -> Tuple[CurveClass, ...]:
    if alpha < 0:
        raise ValueError(f"Degree must be non-negative, got {alpha}")
    classes = tuple(
        _class_from_betas(alpha, betas)
        for betas in _integer_points(3 * alpha - 1, alpha * alpha + 1, 9)
    )
    logger.debug(f"degree {alpha}: {len(classes)} (-1)-classes")
    return classes


@lru_cache(maxsize=None)
def minus_two_roots_of_degree(alpha: int) -> Tuple[CurveClass, ...]:
    """Classes with square -2 orthogonal to k and h-coefficient alpha"""
    if alpha < 0:
        raise ValueError(f"Degree must be non-negative, got {alpha}")
    return tuple(
        _class_from_betas(alpha, betas)
        for betas in _integer_points(3 * alpha, alpha * alpha + 2, 9)
    )


def enumerate_minus_one_classes(alpha_max: int, workers: int = 1) -> List[CurveClass]:
    """Every (-1)-class with 0 <= alpha <= alpha_max, ordered by (alpha, beta)"""
    if alpha_max < 0:
        raise ValueError(f"alpha_max must be non-negative, got {alpha_max}")
    degrees = range(alpha_max + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(minus_one_classes_of_degree, degrees))
    else:
        shards = [minus_one_classes_of_degree(a) for a in degrees]

    classes = [c for shard in shards for c in shard]
    for c in classes:
        if c.kind is not CurveKind.MINUS_ONE:
            raise VerificationError(f"Enumerated class {c.vector} is not a (-1)-class")
    return classes


def _require_positive(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")


def build_L(m: int) -> LatticeVector:
    """L_m = h + phi_m^* h + m k"""
    _require_positive(m)
    return basis_h() + phi_pullback_closed(m) + m * canonical_class()


def build_C(m: int) -> LatticeVector:
    """C_m = 3h + 3 phi_m^* h + (m - 2) k"""
    _require_positive(m)
    return 3 * basis_h() + 3 * phi_pullback_closed(m) + (m - 2) * canonical_class()


def riemann_roch_chi(x: LatticeVector) -> int:
    """chi(O_S(x)) = 1 + (x^2 - k.x)/2"""
    twice = pairing(x, x) - pairing(canonical_class(), x)
    return 1 + twice // 2


def nef_excess(target: LatticeVector, m: int) -> Optional[Tuple[int, int, int]]:
    """Write target - L_m = a h + b phi_m^*h + c f with a, b, c >= 0.

    Returns (a, b, c) or None when no such non-negative integer
    decomposition exists.
    """
    excess = target - build_L(m)
    generators = (basis_h(), phi_pullback_closed(m), fibre_class())
    gram = Matrix([[pairing(u, v) for v in generators] for u in generators])
    rhs = Matrix([pairing(excess, u) for u in generators])
    if gram.det() == 0:
        return None
    solution = gram.LUsolve(rhs)
    if not all(value.is_integer for value in solution):
        return None
    a, b, c = (int(value) for value in solution)
    if a * generators[0] + b * generators[1] + c * generators[2] != excess:
        return None
    if min(a, b, c) < 0:
        return None
    return (a, b, c)


def ample_test(L: LatticeVector, alpha_cap: int,
               tail_rule_m: Optional[int] = None) -> AmpleCertificate:
    """Nakai-Moishezon on a general rational elliptic surface.

    Positivity is checked on every (-1)-class of degree <= alpha_cap. With
    tail_rule_m, classes of degree > m are covered by
    L.C >= (h + m k).C = alpha - m, which needs phi_m^* h to be nef and
    L - L_m to be a non-negative combination of nef classes.
    """
    if alpha_cap < 0:
        raise ValueError(f"alpha_cap must be non-negative, got {alpha_cap}")

    square = pairing(L, L)
    fiber_degree = degree(L)
    failed = None
    if square <= 0:
        failed = "square"
    elif fiber_degree <= 0:
        failed = "fiber_degree"

    classes = enumerate_minus_one_classes(alpha_cap)
    witness = None
    min_pairing = None
    for c in classes:
        p = pairing(L, c.vector)
        if min_pairing is None or p < min_pairing:
            min_pairing = p
        if p <= 0 and witness is None:
            witness = c
    if witness is not None and failed is None:
        failed = "minus_one_curve"

    hypotheses = [NO_MINUS_TWO_CURVES]
    tail_certified = False
    decomposition = None
    if tail_rule_m is not None:
        hypotheses.append(PHI_PULLBACK_NEF)
        decomposition = nef_excess(L, tail_rule_m)
        phi = phi_pullback_closed(tail_rule_m)
        phi_nonnegative = all(pairing(phi, c.vector) >= 0 for c in classes)
        tail_certified = decomposition is not None and phi_nonnegative

    if failed is not None:
        verdict = Verdict.NOT_AMPLE
    elif tail_certified and alpha_cap >= tail_rule_m:
        verdict = Verdict.AMPLE_CERTIFIED
    else:
        verdict = Verdict.AMPLE_UP_TO_DEGREE

    return AmpleCertificate(
        target=L,
        m=tail_rule_m,
        checked_alpha_max=alpha_cap,
        square=square,
        fiber_degree=fiber_degree,
        tail_certified=tail_certified,
        verdict=verdict,
        witness=witness,
        failed_condition=failed,
        classes_checked=len(classes),
        min_pairing=min_pairing,
        euler_characteristic=riemann_roch_chi(L),
        tail_decomposition=decomposition,
        hypotheses=tuple(hypotheses),
    )


def free_numeric_test(L: LatticeVector, cert: AmpleCertificate) -> bool:
    """Ample and of fibre degree >= 2, so the restriction to a smooth
    anticanonical fibre is free"""
    if cert.target != L:
        raise ValueError("Certificate does not belong to this class")
    return cert.is_certified and degree(L) >= 2


def certify_L(m: int, alpha_cap: Optional[int] = None) -> AmpleCertificate:
    return ample_test(build_L(m), m if alpha_cap is None else alpha_cap, m)


def certify_C(m: int, alpha_cap: Optional[int] = None) -> AmpleCertificate:
    return ample_test(build_C(m), m if alpha_cap is None else alpha_cap, m)


def exceptional_margin(m: int) -> int:
    """min_i L_m.e_i; the reduction to beta_i >= 0 needs this >= 9m^2 - 4m"""
    L = build_L(m)
    return min(pairing(L, basis_e(i)) for i in range(1, 10))


def proof_bound_violations(m: int, alpha_max: Optional[int] = None) -> List[CurveClass]:
    """(-1)-classes with alpha <= m where L_m.C < 2m + 2 alpha"""
    top = m if alpha_max is None else min(m, alpha_max)
    L = build_L(m)
    return [
        c for c in enumerate_minus_one_classes(top)
        if pairing(L, c.vector) < 2 * m + 2 * c.alpha
    ]


def proof_bound_holds(m: int, alpha_max: Optional[int] = None) -> bool:
    return not proof_bound_violations(m, alpha_max)
