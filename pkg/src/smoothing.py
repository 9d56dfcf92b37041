"""
Picard-group bookkeeping of the SNC variety X0(m) = X1 U X2

X1 is P^2 x T blown up along the curves F_1..F_m and Gamma_m, X2 is the
copy glued through Psi_m, and the double locus is X12 = S x T. The kernel
of the restriction map R into Pic X12 is Pic X0, one rank above H^2 of
the smoothing X(m).

Integer linear algebra goes through SymPy's Smith normal decomposition
over ZZ, so ranks and kernels are exact.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM, DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from .cremona import phi_pullback_closed
from .curves import build_C
from .lattice import (
    RANK, LatticeVector, basis_h, canonical_class, fibre_class, pairing
)
from .models import BettiReport, KernelReport, SemistabilityReport, VerificationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurfaceModel:
    """Minimal model of T, the (1, n+1) hypersurface in P^1 x P^n

    Only the Picard rank rho_T and the canonical class k_T enter any
    computation.
    """
    n: int
    rho_T: int
    k_T: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if len(self.k_T) != self.rho_T:
            raise ValueError(
                f"k_T has {len(self.k_T)} coordinates, expected {self.rho_T}"
            )

    @classmethod
    def for_dimension(cls, n: int) -> 'SurfaceModel':
        if isinstance(n, bool) or not isinstance(n, int):
            raise ValueError(f"n must be an integer, got {n!r}")
        if n == 2:
            # T is a rational elliptic surface: blow-up basis of Z^{1,9}
            return cls(n=2, rho_T=RANK, k_T=canonical_class().coords)
        if n >= 3:
            # basis (class from P^1, class from P^n); adjunction gives (-1, 0)
            return cls(n=n, rho_T=2, k_T=(-1, 0))
        raise ValueError(f"No Picard model of T for n={n}; need n >= 2")

    @property
    def N(self) -> int:
        return self.n + 2


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense rows x cols matrix of Python ints"""
    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        if len(entries) != self.rows:
            raise ValueError(f"Expected {self.rows} rows, got {len(entries)}")
        for row in entries:
            if len(row) != self.cols:
                raise ValueError(f"Ragged row of length {len(row)}, expected {self.cols}")
            for value in row:
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ValueError(f"Entry {value!r} is not an integer")
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> 'IntegerMatrix':
        rows = [tuple(int(x) for x in row) for row in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(len(rows), width, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> 'IntegerMatrix':
        height = rows if rows is not None else (len(columns[0]) if columns else 0)
        return cls.from_rows(
            [[col[i] for col in columns] for i in range(height)], cols=len(columns)
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'IntegerMatrix':
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def from_domain(cls, dm: DomainMatrix) -> 'IntegerMatrix':
        rows, cols = dm.shape
        return cls(rows, cols, tuple(tuple(int(x) for x in row) for row in dm.to_list()))

    def to_domain(self) -> DomainMatrix:
        if self.rows == 0 or self.cols == 0:
            return DomainMatrix.zeros((self.rows, self.cols), ZZ).to_dense()
        return DM([list(row) for row in self.entries], ZZ)

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def hstack(self, other: 'IntegerMatrix') -> 'IntegerMatrix':
        if other.rows != self.rows:
            raise ValueError(f"Row mismatch: {self.rows} vs {other.rows}")
        return IntegerMatrix(
            self.rows, self.cols + other.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def transpose(self) -> 'IntegerMatrix':
        return IntegerMatrix.from_columns(list(self.entries), rows=self.cols)

    def __matmul__(self, other: 'IntegerMatrix') -> 'IntegerMatrix':
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch: {self.cols} vs {other.rows}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return IntegerMatrix.zeros(self.rows, other.cols)
        return IntegerMatrix.from_domain(self.to_domain() * other.to_domain())

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class SmithForm:
    """D = U * M * V with U, V unimodular"""
    D: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix
    invariants: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def kernel_rank(self) -> int:
        return self.V.rows - self.rank

    def kernel_basis(self) -> List[Tuple[int, ...]]:
        """Columns of V past the rank span the integer kernel of M"""
        return [self.V.column(j) for j in range(self.rank, self.V.cols)]


def smith_normal_form(M: IntegerMatrix) -> SmithForm:
    D, U, V = smith_normal_decomp(M.to_domain())
    D, U, V = (IntegerMatrix.from_domain(x) for x in (D, U, V))
    diagonal = [D.entries[i][i] for i in range(min(D.rows, D.cols))]
    invariants = tuple(abs(d) for d in diagonal if d != 0)
    for left, right in zip(invariants, invariants[1:]):
        if right % left:
            raise VerificationError(f"Invariant factors {invariants} break divisibility")
    return SmithForm(D=D, U=U, V=V, invariants=invariants)


def integer_rank(M: IntegerMatrix) -> int:
    return smith_normal_form(M).rank


@dataclass(frozen=True)
class PicardPresentation:
    """Pic X12 = (Pic S + Pic T) / Z (-k, k_T)"""
    ambient_rank: int
    relation: Tuple[int, ...]

    @property
    def quotient_rank(self) -> int:
        return self.ambient_rank - 1

    @property
    def torsion_free(self) -> bool:
        """A primitive relation leaves no torsion in the quotient"""
        column = IntegerMatrix.from_columns([self.relation])
        return smith_normal_form(column).invariants == (1,)

    @property
    def relation_square_on_S(self) -> int:
        return pairing(LatticeVector(self.relation[:RANK]), LatticeVector(self.relation[:RANK]))


def pic_X12_presentation(model: SurfaceModel, m: int = 1) -> PicardPresentation:
    relation = fibre_class().coords + tuple(model.k_T)
    presentation = PicardPresentation(ambient_rank=RANK + model.rho_T, relation=relation)
    if presentation.relation_square_on_S != 0:
        raise VerificationError("K_S^2 must vanish on a rational elliptic surface")
    return presentation


def _gluing_curve_class(m: int) -> LatticeVector:
    if m == 0:
        return 3 * basis_h() + 3 * phi_pullback_closed(0) - 2 * canonical_class()
    return build_C(m)


def _t_unit(model: SurfaceModel, i: int, sign: int = 1) -> Tuple[int, ...]:
    coords = [0] * model.rho_T
    coords[i] = sign
    return tuple(coords)


def restriction_labels(model: SurfaceModel, m: int, with_exceptional: bool = True) -> List[str]:
    t_labels = [f"t{i + 1}" for i in range(model.rho_T)]
    labels = ["X1:h"] + [f"X1:{t}" for t in t_labels]
    if with_exceptional:
        labels += [f"X1:E{j}" for j in range(1, m + 1)]
    labels += ["X1:F", "X2:h'"] + [f"X2:{t}" for t in t_labels]
    return labels


def restriction_matrix(model: SurfaceModel, m: int, with_exceptional: bool = True) -> IntegerMatrix:
    """Matrix of R = (i1^*, -i2^*) into Z^{10 + rho_T}, before the quotient"""
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    zero_T = (0,) * model.rho_T
    zero_S = (0,) * RANK
    columns = [basis_h().coords + zero_T]
    columns += [zero_S + _t_unit(model, i) for i in range(model.rho_T)]
    if with_exceptional:
        # E_j restricts to the fibre F_j, of class -k
        columns += [fibre_class().coords + zero_T] * m
    columns.append(_gluing_curve_class(m).coords + zero_T)
    columns.append((-phi_pullback_closed(m)).coords + zero_T)
    columns += [zero_S + _t_unit(model, i, -1) for i in range(model.rho_T)]
    return IntegerMatrix.from_columns(columns, rows=RANK + model.rho_T)


def _augmented(model: SurfaceModel, m: int, with_exceptional: bool = True) -> IntegerMatrix:
    R = restriction_matrix(model, m, with_exceptional)
    relation = pic_X12_presentation(model, m).relation
    return R.hstack(IntegerMatrix.from_columns([relation], rows=R.rows))


@lru_cache(maxsize=None)
def _augmented_form(model: SurfaceModel, m: int, with_exceptional: bool = True) -> SmithForm:
    return smith_normal_form(_augmented(model, m, with_exceptional))


def image_rank(model: SurfaceModel, m: int, with_exceptional: bool = True) -> int:
    """Rank of Im R inside Pic X12"""
    return _augmented_form(model, m, with_exceptional).rank - 1


def b2_of_X0(model: SurfaceModel, m: int, with_exceptional: bool = True) -> int:
    """Kernel rank of R modulo the relation; without the E_j columns this is
    the rank contributed by X1 and X2 alone"""
    kernel = _augmented_form(model, m, with_exceptional).kernel_rank
    if with_exceptional and m >= 1 and kernel != m + model.rho_T + 1:
        raise VerificationError(
            f"Kernel rank {kernel} disagrees with m + rho_T + 1 = {m + model.rho_T + 1}"
        )
    return kernel


def b2_of_X(model: SurfaceModel, m: int) -> int:
    """Clemens-map sequence: H^2(X) is Pic X0 modulo the class of X1"""
    return b2_of_X0(model, m) - 1


def kernel_generators(model: SurfaceModel, m: int,
                      with_exceptional: bool = True) -> List[Tuple[int, ...]]:
    """Integer kernel of R modulo the relation, relation coordinate dropped"""
    return [vec[:-1] for vec in _augmented_form(model, m, with_exceptional).kernel_basis()]


def betti_report(model: SurfaceModel, m: int, emit_matrices: bool = False) -> BettiReport:
    form = _augmented_form(model, m)
    R = restriction_matrix(model, m)
    report = BettiReport(
        n=model.n,
        m=m,
        rho_T=model.rho_T,
        columns=R.cols,
        quotient_rank=pic_X12_presentation(model, m).quotient_rank,
        image_rank=form.rank - 1,
        b2_X0=b2_of_X0(model, m),
        b2_X=b2_of_X(model, m),
        invariants=form.invariants,
        labels=tuple(restriction_labels(model, m)) if emit_matrices else (),
        matrix=R.entries if emit_matrices else None,
    )
    logger.debug(f"betti n={model.n} m={m}: b2(X0)={report.b2_X0} b2(X)={report.b2_X}")
    return report


def d_semistability_check(m: int, perturbation: Optional[LatticeVector] = None) -> SemistabilityReport:
    """3(h + phi_m^*h) + 2f = F_1 + ... + F_m + Gamma_m as classes on D1 = S"""
    f = fibre_class()
    lhs = 3 * (basis_h() + phi_pullback_closed(m)) + 2 * f
    c_m = build_C(m)
    if perturbation is not None:
        c_m = c_m + perturbation
    rhs = m * f + c_m
    report = SemistabilityReport(m=m, holds=lhs == rhs, lhs=lhs, rhs=rhs)
    if not report.holds:
        logger.warning(f"d-semistability fails at m={m}: difference {report.difference}")
    return report


def independence_rank(m: int) -> int:
    """Rank of {h, phi_m^*h, k}; 3 means [h], [h'] are independent in Pic S / Z k"""
    rows = [basis_h().coords, phi_pullback_closed(m).coords, canonical_class().coords]
    return integer_rank(IntegerMatrix.from_rows(rows))


def _matching_matrix(m: int) -> IntegerMatrix:
    h = basis_h()
    h_prime = phi_pullback_closed(m)
    # unknowns (a, c, a', t): a h + c (3h + 3h') - a' h' + t k = 0
    columns = [h, 3 * h + 3 * h_prime, -h_prime, canonical_class()]
    return IntegerMatrix.from_columns([v.coords for v in columns], rows=RANK)


def matching_solutions(m: int) -> List[Tuple[int, int, int]]:
    """Integer kernel of the matching condition in (a, c, a')"""
    solutions = []
    for vec in smith_normal_form(_matching_matrix(m)).kernel_basis():
        triple = vec[:3]
        if any(triple):
            if triple[1] < 0 or (triple[1] == 0 and triple[0] < 0):
                triple = tuple(-x for x in triple)
            solutions.append(triple)
    return solutions


def forced_effective(m: int) -> Optional[Tuple[int, int]]:
    """(a, a') once a >= 0 and a' >= 0 are imposed on the kernel; None if
    effectivity leaves a non-trivial ray"""
    solutions = matching_solutions(m)
    if len(solutions) != 1:
        raise VerificationError(f"Expected a rank-one matching kernel, got {solutions}")
    a, _, a_prime = solutions[0]
    # t * (a, a') >= 0 componentwise has only t = 0 when the signs are opposite
    if a * a_prime < 0:
        return (0, 0)
    return None


def _multiple_of_canonical(v: LatticeVector) -> bool:
    t = v.coords[1]
    return v == t * canonical_class()


def nonprojectivity_kernel(m: int, a: int, c: int, a_prime: int,
                           n: Optional[int] = None) -> KernelReport:
    h = basis_h()
    h_prime = phi_pullback_closed(m)
    residual = (a + 3 * c) * h + 3 * c * h_prime - a_prime * h_prime
    consistent = _multiple_of_canonical(residual)
    if consistent != (a_prime == 3 * c and a + 3 * c == 0):
        raise VerificationError(f"Matching condition at m={m} depends on more than a, c, a'")
    effective = a >= 0 and a_prime >= 0
    return KernelReport(
        m=m,
        a=a,
        c=c,
        a_prime=a_prime,
        consistent=consistent,
        effective=effective,
        forced=(a, a_prime) if consistent and effective else None,
        independence_rank=independence_rank(m),
        n=n,
    )


def k3_fibre_blowup_points(m: int) -> int:
    """C_m.f: points blown up on the P^2 in a general fibre of X0 -> T"""
    return pairing(build_C(m), fibre_class())
