"""
Core models for the Cremona smoothing verifier

Report records carry to_dict()/from_dict() so that every result can be
emitted as JSON and read back without loss. Integers may arrive as decimal
strings (large values are serialized that way), hence the _int coercion.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from .lattice import LatticeVector, degree, pairing


class VerificationError(RuntimeError):
    """An internal identity that must hold did not hold"""


class CurveKind(Enum):
    MINUS_ONE = "minus_one"
    MINUS_TWO_ROOT = "minus_two_root"
    OTHER = "other"


class Verdict(Enum):
    """Outcome of an ampleness test"""
    AMPLE_CERTIFIED = "ample_certified"
    AMPLE_UP_TO_DEGREE = "ample_up_to_degree"
    NOT_AMPLE = "not_ample"


class OutputFormat(Enum):
    JSON = "json"
    TABLE = "table"
    CSV = "csv"


def _int(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError(f"Expected an integer, got {value!r}")
    return int(value)


def _opt_int(value: Any) -> Optional[int]:
    return None if value is None else _int(value)


def _vector(value: Any) -> LatticeVector:
    return LatticeVector(tuple(_int(x) for x in value))


@dataclass(frozen=True)
class CurveClass:
    """A class alpha*h - sum(beta_i e_i) together with its kind"""
    vector: LatticeVector
    kind: CurveKind

    @classmethod
    def classify(cls, vector: LatticeVector) -> 'CurveClass':
        square = pairing(vector, vector)
        deg = degree(vector)
        if square == -1 and deg == 1:
            kind = CurveKind.MINUS_ONE
        elif square == -2 and deg == 0:
            kind = CurveKind.MINUS_TWO_ROOT
        else:
            kind = CurveKind.OTHER
        return cls(vector, kind)

    @property
    def alpha(self) -> int:
        return self.vector.h_coefficient

    @property
    def betas(self) -> Tuple[int, ...]:
        return tuple(-b for b in self.vector.e_coefficients)

    @property
    def gammas(self) -> Tuple[int, int, int]:
        b = self.betas
        return (b[0] + b[1] + b[2], b[3] + b[4] + b[5], b[6] + b[7] + b[8])

    def as_row(self) -> List[int]:
        """(alpha, beta_1..beta_9), the CSV layout"""
        return [self.alpha, *self.betas]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'vector': self.vector.to_list(),
            'kind': self.kind.value,
            'alpha': self.alpha,
            'betas': list(self.betas),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CurveClass':
        return cls(vector=_vector(data['vector']), kind=CurveKind(data['kind']))


@dataclass(frozen=True)
class AmpleCertificate:
    """Result of the Nakai-Moishezon test restricted to (-1)-classes"""
    target: LatticeVector
    m: Optional[int]
    checked_alpha_max: int
    square: int
    fiber_degree: int
    tail_certified: bool
    verdict: Verdict
    witness: Optional[CurveClass] = None
    failed_condition: Optional[str] = None
    classes_checked: int = 0
    min_pairing: Optional[int] = None
    euler_characteristic: int = 0
    tail_decomposition: Optional[Tuple[int, int, int]] = None
    hypotheses: Tuple[str, ...] = ()

    @property
    def is_certified(self) -> bool:
        return self.verdict is Verdict.AMPLE_CERTIFIED

    def to_dict(self) -> Dict[str, Any]:
        return {
            'target': self.target.to_list(),
            'm': self.m,
            'checked_alpha_max': self.checked_alpha_max,
            'square': self.square,
            'fiber_degree': self.fiber_degree,
            'euler_characteristic': self.euler_characteristic,
            'classes_checked': self.classes_checked,
            'min_pairing': self.min_pairing,
            'tail_decomposition': (
                list(self.tail_decomposition)
                if self.tail_decomposition is not None else None
            ),
            'tail_certified': self.tail_certified,
            'verdict': self.verdict.value,
            'failed_condition': self.failed_condition,
            'witness': self.witness.to_dict() if self.witness else None,
            'hypotheses': list(self.hypotheses),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AmpleCertificate':
        tail = data.get('tail_decomposition')
        witness = data.get('witness')
        return cls(
            target=_vector(data['target']),
            m=_opt_int(data.get('m')),
            checked_alpha_max=_int(data['checked_alpha_max']),
            square=_int(data['square']),
            fiber_degree=_int(data['fiber_degree']),
            tail_certified=bool(data['tail_certified']),
            verdict=Verdict(data['verdict']),
            witness=CurveClass.from_dict(witness) if witness else None,
            failed_condition=data.get('failed_condition'),
            classes_checked=_int(data.get('classes_checked', 0)),
            min_pairing=_opt_int(data.get('min_pairing')),
            euler_characteristic=_int(data.get('euler_characteristic', 0)),
            tail_decomposition=tuple(_int(x) for x in tail) if tail is not None else None,
            hypotheses=tuple(data.get('hypotheses', ())),
        )


@dataclass(frozen=True)
class EulerBreakdown:
    """Euler numbers of every stratum of X0(m) and of the smoothing X(m)"""
    n: int
    m: int
    sigma_n: int
    d_n: int
    delta_n: int
    gamma_m: int
    e_T: int
    e_X1: int
    e_X2: int
    e_X12: int
    e_Cm: int
    e_Gamma: int
    discriminant_points: int
    e_X: int

    @property
    def N(self) -> int:
        return self.n + 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            'N': self.N,
            'n': self.n,
            'm': self.m,
            'sigma_n': self.sigma_n,
            'd_n': self.d_n,
            'delta_n': self.delta_n,
            'gamma_m': self.gamma_m,
            'e_T': self.e_T,
            'e_X1': self.e_X1,
            'e_X2': self.e_X2,
            'e_X12': self.e_X12,
            'e_Cm': self.e_Cm,
            'e_Gamma': self.e_Gamma,
            'discriminant_points': self.discriminant_points,
            'e_X': self.e_X,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EulerBreakdown':
        names = (
            'n', 'm', 'sigma_n', 'd_n', 'delta_n', 'gamma_m', 'e_T', 'e_X1',
            'e_X2', 'e_X12', 'e_Cm', 'e_Gamma', 'discriminant_points', 'e_X',
        )
        return cls(**{name: _int(data[name]) for name in names})


@dataclass(frozen=True)
class InvariantReport:
    """Everything the construction predicts for one pair (N, m)"""
    N: int
    n: int
    m: int
    b2_X0: Optional[int]
    b2_X: Optional[int]
    e: int
    a: int
    euler: EulerBreakdown
    alpha_cap: int
    ample_L: Verdict
    ample_C: Verdict
    free_L: bool
    free_C: bool
    d_semistable: bool
    in_theorem_range: bool
    hypotheses: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'N': self.N,
            'n': self.n,
            'm': self.m,
            'b2_X0': self.b2_X0,
            'b2_X': self.b2_X,
            'e': self.e,
            'a': self.a,
            'in_theorem_range': self.in_theorem_range,
            'alpha_cap': self.alpha_cap,
            'ample_L': self.ample_L.value,
            'ample_C': self.ample_C.value,
            'free_L': self.free_L,
            'free_C': self.free_C,
            'd_semistable': self.d_semistable,
            'hypotheses': list(self.hypotheses),
            'euler': self.euler.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'InvariantReport':
        return cls(
            N=_int(data['N']),
            n=_int(data['n']),
            m=_int(data['m']),
            b2_X0=_opt_int(data.get('b2_X0')),
            b2_X=_opt_int(data.get('b2_X')),
            e=_int(data['e']),
            a=_int(data['a']),
            euler=EulerBreakdown.from_dict(data['euler']),
            alpha_cap=_int(data['alpha_cap']),
            ample_L=Verdict(data['ample_L']),
            ample_C=Verdict(data['ample_C']),
            free_L=bool(data['free_L']),
            free_C=bool(data['free_C']),
            d_semistable=bool(data['d_semistable']),
            in_theorem_range=bool(data['in_theorem_range']),
            hypotheses=tuple(data.get('hypotheses', ())),
        )


@dataclass(frozen=True)
class SemistabilityReport:
    """Both sides of 3(h + phi_m^*h) + 2f = m f + c_m"""
    m: int
    holds: bool
    lhs: LatticeVector
    rhs: LatticeVector

    @property
    def difference(self) -> LatticeVector:
        return self.lhs - self.rhs

    def to_dict(self) -> Dict[str, Any]:
        return {
            'm': self.m,
            'holds': self.holds,
            'lhs': self.lhs.to_list(),
            'rhs': self.rhs.to_list(),
            'difference': self.difference.to_list(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SemistabilityReport':
        return cls(
            m=_int(data['m']),
            holds=bool(data['holds']),
            lhs=_vector(data['lhs']),
            rhs=_vector(data['rhs']),
        )


@dataclass(frozen=True)
class BettiReport:
    """Picard ranks of X0(m) and X(m) read off the restriction map"""
    n: int
    m: int
    rho_T: int
    columns: int
    quotient_rank: int
    image_rank: int
    b2_X0: int
    b2_X: int
    invariants: Tuple[int, ...] = ()
    labels: Tuple[str, ...] = ()
    matrix: Optional[Tuple[Tuple[int, ...], ...]] = None

    @property
    def expected_b2_X0(self) -> int:
        return self.m + self.rho_T + 1

    @property
    def agrees(self) -> bool:
        return self.b2_X0 == self.expected_b2_X0 and self.b2_X == self.b2_X0 - 1

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'N': self.n + 2,
            'n': self.n,
            'm': self.m,
            'rho_T': self.rho_T,
            'columns': self.columns,
            'quotient_rank': self.quotient_rank,
            'image_rank': self.image_rank,
            'b2_X0': self.b2_X0,
            'b2_X': self.b2_X,
            'agrees': self.agrees,
            'invariants': list(self.invariants),
        }
        if self.matrix is not None:
            data['labels'] = list(self.labels)
            data['matrix'] = [list(row) for row in self.matrix]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'BettiReport':
        matrix = data.get('matrix')
        return cls(
            n=_int(data['n']),
            m=_int(data['m']),
            rho_T=_int(data['rho_T']),
            columns=_int(data['columns']),
            quotient_rank=_int(data['quotient_rank']),
            image_rank=_int(data['image_rank']),
            b2_X0=_int(data['b2_X0']),
            b2_X=_int(data['b2_X']),
            invariants=tuple(_int(x) for x in data.get('invariants', ())),
            labels=tuple(data.get('labels', ())),
            matrix=(
                tuple(tuple(_int(x) for x in row) for row in matrix)
                if matrix is not None else None
            ),
        )


@dataclass(frozen=True)
class KernelReport:
    """Matching condition (a + 3c)[h] + 3c[h'] = a'[h'] in Pic S / Z k"""
    m: int
    a: int
    c: int
    a_prime: int
    consistent: bool
    effective: bool
    forced: Optional[Tuple[int, int]]
    independence_rank: int
    n: Optional[int] = None

    @property
    def algebraic_dimension(self) -> Optional[int]:
        """a(X) = N - 2 = n once every candidate pencil is forced to vanish"""
        return self.n

    def to_dict(self) -> Dict[str, Any]:
        return {
            'm': self.m,
            'a': self.a,
            'c': self.c,
            'a_prime': self.a_prime,
            'consistent': self.consistent,
            'effective': self.effective,
            'forced': list(self.forced) if self.forced is not None else None,
            'independence_rank': self.independence_rank,
            'n': self.n,
            'algebraic_dimension': self.algebraic_dimension,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'KernelReport':
        forced = data.get('forced')
        return cls(
            m=_int(data['m']),
            a=_int(data['a']),
            c=_int(data['c']),
            a_prime=_int(data['a_prime']),
            consistent=bool(data['consistent']),
            effective=bool(data['effective']),
            forced=tuple(_int(x) for x in forced) if forced is not None else None,
            independence_rank=_int(data['independence_rank']),
            n=_opt_int(data.get('n')),
        )


@dataclass
class CheckResult:
    """One named check of the verification suite"""
    name: str
    passed: bool
    detail: str = ""
    cases: int = 0
    seconds: float = 0.0

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        data = {
            'name': self.name,
            'passed': self.passed,
            'cases': self.cases,
            'detail': self.detail,
        }
        if include_timings:
            data['seconds'] = round(self.seconds, 4)
        return data


@dataclass
class SuiteSummary:
    """Outcome of a full verification run"""
    checks: List[CheckResult] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failing(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    @property
    def total_seconds(self) -> float:
        return sum(check.seconds for check in self.checks)

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        data = {
            'passed': self.passed,
            'failing': self.failing,
            'config': self.config,
            'checks': [c.to_dict(include_timings) for c in self.checks],
        }
        if include_timings:
            data['total_seconds'] = round(self.total_seconds, 4)
        return data
