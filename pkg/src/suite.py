"""
One-shot verification suite

Every check is a plain function over the configured ranges. Checks run on
a thread pool through the event loop and their results are collected in
declaration order, so the summary does not depend on scheduling.
"""

import asyncio
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Callable, List, Tuple

from .config import SuiteConfig
from .cremona import (
    Root, iter_phi_pullbacks, phi_pullback_closed, psi_step, quadratic_pullback, reflect
)
from .curves import (
    build_C, build_L, certify_C, certify_L, exceptional_margin, free_numeric_test,
    minus_one_classes_of_degree, proof_bound_violations, riemann_roch_chi
)
from .lattice import (
    LatticeVector, basis_e, basis_h, canonical_class, combine, degree, fibre_class,
    pairing, triple_sum
)
from .models import CheckResult, SuiteSummary, VerificationError
from .smoothing import (
    SurfaceModel, b2_of_X, b2_of_X0, d_semistability_check, forced_effective,
    image_rank, independence_rank, nonprojectivity_kernel
)
from .topology import (
    discriminant_degree, euler_breakdown, gamma, gamma_from_lattice,
    hypersurface_euler, sigma, theorem_b2
)

logger = logging.getLogger(__name__)

ALL_ROOTS = tuple(Root(t) for t in combinations(range(1, 10), 3))
SIGN_LAW_M = 100
SAMPLES_PER_M = 200
DIVISIBILITY_N_MAX = 60


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise VerificationError(message)


class VerificationSuite:
    """Runs the named checks for one SuiteConfig"""

    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self.checks: List[Tuple[str, Callable[[], Tuple[int, str]]]] = [
            ("reflection_properties", self.check_reflections),
            ("pullback_anchors", self.check_pullback_anchors),
            ("closed_vs_iterative", self.check_closed_vs_iterative),
            ("divisor_identities", self.check_divisor_identities),
            ("ampleness_certificates", self.check_ampleness),
            ("proof_bound", self.check_proof_bound),
            ("d_semistability", self.check_d_semistability),
            ("betti_grid", self.check_betti_grid),
            ("nonprojectivity_kernel", self.check_kernel),
            ("euler_grid", self.check_euler_grid),
        ]

    @property
    def certify_max(self) -> int:
        return min(self.cfg.m_max, self.cfg.alpha_cap)

    @property
    def sample_count(self) -> int:
        """random_samples, capped at SAMPLES_PER_M * m_max for short runs"""
        return min(self.cfg.random_samples, SAMPLES_PER_M * self.cfg.m_max)

    def check_reflections(self) -> Tuple[int, str]:
        k = canonical_class()
        for root in ALL_ROOTS:
            _expect(pairing(root.vector, root.vector) == -2, f"{root} is not a -2 vector")
            _expect(pairing(root.vector, k) == 0, f"{root} is not orthogonal to k")

        rng = random.Random(self.cfg.seed)

        def sample() -> LatticeVector:
            return LatticeVector(tuple(rng.randint(-20, 20) for _ in range(10)))

        for _ in range(self.sample_count):
            x, y = sample(), sample()
            root = rng.choice(ALL_ROOTS)
            rx, ry = reflect(x, root), reflect(y, root)
            _expect(pairing(rx, ry) == pairing(x, y), f"isometry fails for {x}, {y}, {root}")
            _expect(reflect(rx, root) == x, f"involution fails for {x}, {root}")
            _expect(reflect(k, root) == k, f"{root} moves k")
        return self.sample_count, f"{len(ALL_ROOTS)} roots, {self.sample_count} samples"

    def check_pullback_anchors(self) -> Tuple[int, str]:
        h = basis_h()
        _expect(quadratic_pullback(1, 2, 3) == 2 * h - triple_sum(1), "phi_123^* h != 2h - f1")
        _expect(psi_step(h) == combine(8, (-1, -2, -4)), "psi^* h != 8h - f1 - 2f2 - 4f3")
        _expect(
            psi_step(psi_step(h)) == combine(28, (-6, -9, -12)),
            "psi_1^* h != 28h - 6f1 - 9f2 - 12f3",
        )
        _expect(psi_step(canonical_class()) == canonical_class(), "psi moves k")
        return 4, "psi^*h and psi_1^*h reproduced"

    def check_closed_vs_iterative(self) -> Tuple[int, str]:
        for m, image in iter_phi_pullbacks(self.cfg.m_max):
            _expect(image == phi_pullback_closed(m), f"closed form differs at m={m}")
            _expect(degree(image) == 3, f"degree of phi_{m}^*h is not 3")
            _expect(pairing(image, image) == 1, f"phi_{m}^*h is not of square 1")
        return self.cfg.m_max + 1, f"m = 0..{self.cfg.m_max}"

    def check_divisor_identities(self) -> Tuple[int, str]:
        for m in range(1, self.cfg.m_max + 1):
            L, C = build_L(m), build_C(m)
            phi = phi_pullback_closed(m)
            _expect(pairing(L, L) == 54 * m * m - 12 * m + 4, f"L_{m}^2 is off")
            _expect(degree(L) == 6, f"L_{m}.f != 6")
            _expect(degree(C) == 18, f"C_{m}.f != 18")
            _expect(C == L + 2 * (basis_h() + phi) + 2 * fibre_class(), f"C_{m} != L_{m} + nef part")
            _expect(gamma_from_lattice(m) == gamma(m), f"adjunction disagrees with gamma at m={m}")
            _expect(riemann_roch_chi(L) == 27 * m * m - 6 * m + 6, f"chi(L_{m}) is off")
            _expect(exceptional_margin(m) >= 9 * m * m - 4 * m, f"L_{m}.E_i below 9m^2 - 4m")
        return self.cfg.m_max, f"m = 1..{self.cfg.m_max}"

    def check_ampleness(self) -> Tuple[int, str]:
        counts = tuple(len(minus_one_classes_of_degree(a)) for a in range(3))
        _expect(counts == (9, 36, 126), f"(-1)-class counts {counts} != (9, 36, 126)")
        for m in range(1, self.certify_max + 1):
            for name, target, cert in (
                ("L", build_L(m), certify_L(m)),
                ("C", build_C(m), certify_C(m)),
            ):
                _expect(cert.is_certified, f"{name}_{m}: {cert.verdict.value} ({cert.failed_condition})")
                _expect(free_numeric_test(target, cert), f"{name}_{m} is not free")
        return 2 * self.certify_max, f"L_m and C_m for m = 1..{self.certify_max}"

    def check_proof_bound(self) -> Tuple[int, str]:
        for m in range(1, self.certify_max + 1):
            bad = proof_bound_violations(m)
            _expect(not bad, f"L_{m}.C < 2m + 2 alpha for {bad[0].vector if bad else ''}")
        return self.certify_max, f"m = 1..{self.certify_max}"

    def check_d_semistability(self) -> Tuple[int, str]:
        perturbation = basis_e(1) if self.cfg.inject_fault else None
        for m in range(1, self.cfg.m_max + 1):
            report = d_semistability_check(m, perturbation)
            _expect(report.holds, f"m={m}: lhs {report.lhs} != rhs {report.rhs}")
        return self.cfg.m_max, f"m = 1..{self.cfg.m_max}"

    def check_betti_grid(self) -> Tuple[int, str]:
        cases = 0
        skipped = [n for n in self.cfg.n_set if n < 2]
        for n in self.cfg.n_set:
            if n < 2:
                continue
            model = SurfaceModel.for_dimension(n)
            for m in range(1, self.cfg.m_max + 1):
                b0 = b2_of_X0(model, m)
                _expect(b0 == m + model.rho_T + 1, f"b2(X0) = {b0} at n={n}, m={m}")
                _expect(image_rank(model, m) == model.rho_T + 2, f"image rank off at n={n}, m={m}")
                _expect(b2_of_X(model, m) == theorem_b2(n + 2, m), f"b2(X) off at n={n}, m={m}")
                cases += 1
        detail = f"{cases} (n, m) pairs"
        if skipped:
            detail += f"; n={skipped} outside the Picard model"
        return cases, detail

    def check_kernel(self) -> Tuple[int, str]:
        for m in range(1, self.cfg.m_max + 1):
            _expect(independence_rank(m) == 3, f"h, phi_{m}^*h, k are dependent")
            _expect(forced_effective(m) == (0, 0), f"effective kernel not trivial at m={m}")
            _expect(nonprojectivity_kernel(m, 0, 0, 0).forced == (0, 0), f"(0,0,0) rejected at m={m}")
            _expect(not nonprojectivity_kernel(m, 1, 0, 0).consistent, f"(1,0,0) accepted at m={m}")
        return self.cfg.m_max, f"m = 1..{self.cfg.m_max}"

    def check_euler_grid(self) -> Tuple[int, str]:
        for n in range(1, DIVISIBILITY_N_MAX + 1):
            _expect(sigma(n) == hypersurface_euler(n), f"sigma_{n} != e(H_{n + 1})")
        cases = 0
        for n in self.cfg.n_set:
            for m in range(1, self.cfg.m_max + 1):
                breakdown = euler_breakdown(n, m)
                _expect(breakdown.discriminant_points == 18 * discriminant_degree(n), "18 d_n")
                if n == 2:
                    _expect(breakdown.e_X == 288, f"e(X) = {breakdown.e_X} at n=2, m={m}")
                cases += 1
            e_far = euler_breakdown(n, SIGN_LAW_M).e_X
            if n % 2:
                _expect(e_far < 0, f"e(X) not negative for odd n={n}")
            elif n >= 4:
                _expect(e_far > 0, f"e(X) not positive for even n={n}")
        return cases, f"{cases} (n, m) pairs, sign law at m={SIGN_LAW_M}"

    def _timed(self, name: str, check: Callable[[], Tuple[int, str]]) -> CheckResult:
        start = time.perf_counter()
        try:
            cases, detail = check()
            result = CheckResult(name, True, detail, cases)
        except (VerificationError, ValueError) as e:
            result = CheckResult(name, False, str(e))
        result.seconds = time.perf_counter() - start
        if result.passed:
            logger.info(f"✅ {name}: {result.detail}")
        else:
            logger.error(f"❌ {name}: {result.detail}")
        return result

    async def run_all(self) -> SuiteSummary:
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=self.cfg.workers) as pool:
            results = await asyncio.gather(*(
                loop.run_in_executor(pool, self._timed, name, check)
                for name, check in self.checks
            ))
        return SuiteSummary(checks=list(results), config=self.cfg.summary())


def run_suite(cfg: SuiteConfig) -> SuiteSummary:
    logger.info(f"Running verification suite: m_max={cfg.m_max}, alpha_cap={cfg.alpha_cap}, n_set={cfg.n_set}")
    summary = asyncio.run(VerificationSuite(cfg).run_all())
    if summary.passed:
        logger.info(f"✅ All {len(summary.checks)} checks passed in {summary.total_seconds:.2f}s")
    else:
        logger.error(f"❌ Failing checks: {', '.join(summary.failing)}")
    return summary
