import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.cremona import phi_pullback_closed
from src.curves import build_C
from src.lattice import basis_e, basis_h, canonical_class, fibre_class, pairing
from src.models import BettiReport, KernelReport, SemistabilityReport
from src.smoothing import (
    IntegerMatrix, SurfaceModel, b2_of_X, b2_of_X0, betti_report, d_semistability_check,
    forced_effective, image_rank, independence_rank, integer_rank, k3_fibre_blowup_points,
    kernel_generators, matching_solutions, nonprojectivity_kernel, pic_X12_presentation,
    restriction_labels, restriction_matrix, smith_normal_form
)

small_matrices = st.integers(1, 5).flatmap(
    lambda rows: st.integers(1, 5).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-9, 9), min_size=cols, max_size=cols),
            min_size=rows, max_size=rows,
        )
    )
).map(IntegerMatrix.from_rows)


@pytest.fixture
def rational_elliptic():
    return SurfaceModel.for_dimension(2)


@pytest.fixture
def fibred_threefold():
    return SurfaceModel.for_dimension(3)


# --- Surface models ---
def test_surface_models(rational_elliptic, fibred_threefold):
    assert rational_elliptic.rho_T == 10
    assert rational_elliptic.k_T == canonical_class().coords
    assert fibred_threefold.rho_T == 2
    assert fibred_threefold.k_T == (-1, 0)
    assert SurfaceModel.for_dimension(7).N == 9


def test_surface_model_rejects_small_n():
    with pytest.raises(ValueError):
        SurfaceModel.for_dimension(1)
    with pytest.raises(ValueError):
        SurfaceModel(n=2, rho_T=3, k_T=(1,))


# --- Smith normal form ---
def test_snf_examples():
    identity = IntegerMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert smith_normal_form(identity).invariants == (1, 1, 1)
    assert smith_normal_form(identity).rank == 3

    diag = IntegerMatrix.from_rows([[2, 0], [0, 4]])
    assert smith_normal_form(diag).invariants == (2, 4)

    zero = IntegerMatrix.zeros(2, 3)
    form = smith_normal_form(zero)
    assert form.rank == 0
    assert form.kernel_rank == 3


def test_snf_torsion():
    m = IntegerMatrix.from_rows([[12, 6, 4], [3, 9, 6], [2, 16, 14]])
    assert smith_normal_form(m).invariants == (1, 10, 30)


@settings(max_examples=1000, deadline=None)
@given(small_matrices)
def test_snf_factors_are_unimodular(M):
    form = smith_normal_form(M)
    assert form.U @ M @ form.V == form.D
    assert abs(form.U.to_domain().det()) == 1
    assert abs(form.V.to_domain().det()) == 1
    for i in range(form.D.rows):
        for j in range(form.D.cols):
            if i != j:
                assert form.D.entries[i][j] == 0
    for a, b in zip(form.invariants, form.invariants[1:]):
        assert b % a == 0
    assert form.rank + form.kernel_rank == M.cols


@settings(max_examples=200, deadline=None)
@given(small_matrices)
def test_kernel_basis_is_annihilated(M):
    for vec in smith_normal_form(M).kernel_basis():
        column = IntegerMatrix.from_columns([vec])
        assert M @ column == IntegerMatrix.zeros(M.rows, 1)


def test_integer_matrix_shapes():
    m = IntegerMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert m.transpose().entries == ((1, 4), (2, 5), (3, 6))
    assert m.column(1) == (2, 5)
    assert m.hstack(IntegerMatrix.from_rows([[7], [8]])).cols == 4
    with pytest.raises(ValueError):
        IntegerMatrix(2, 2, ((1, 2), (3,)))
    with pytest.raises(ValueError):
        m.hstack(IntegerMatrix.zeros(3, 1))


# --- Picard presentation and restriction map ---
def test_pic_X12_presentation(rational_elliptic, fibred_threefold):
    p2 = pic_X12_presentation(rational_elliptic, 1)
    assert p2.quotient_rank == 19
    assert p2.relation_square_on_S == 0
    assert p2.torsion_free
    assert pic_X12_presentation(fibred_threefold, 1).quotient_rank == 11


def test_restriction_matrix_shape(rational_elliptic):
    R = restriction_matrix(rational_elliptic, 3)
    assert (R.rows, R.cols) == (20, 26)
    labels = restriction_labels(rational_elliptic, 3)
    assert len(labels) == 26
    assert labels[0] == "X1:h"
    assert R.column(labels.index("X1:F"))[:10] == build_C(3).coords
    assert R.column(labels.index("X2:h'"))[:10] == (-phi_pullback_closed(3)).coords
    assert R.column(labels.index("X1:E2"))[:10] == fibre_class().coords


def test_restriction_matrix_without_exceptional(fibred_threefold):
    R = restriction_matrix(fibred_threefold, 4, with_exceptional=False)
    assert R.cols == 2 * 2 + 3
    assert len(restriction_labels(fibred_threefold, 4, with_exceptional=False)) == R.cols


@pytest.mark.parametrize("n, m, expected", [(2, 1, 12), (3, 1, 4), (2, 7, 18)])
def test_b2_of_X0(n, m, expected):
    assert b2_of_X0(SurfaceModel.for_dimension(n), m) == expected


@pytest.mark.parametrize("n, m, expected", [(2, 5, 15), (3, 5, 7), (4, 1, 3)])
def test_b2_of_X(n, m, expected):
    assert b2_of_X(SurfaceModel.for_dimension(n), m) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_betti_grid(n):
    model = SurfaceModel.for_dimension(n)
    for m in range(1, 51):
        assert b2_of_X0(model, m) == m + model.rho_T + 1
        assert b2_of_X(model, m) == m + model.rho_T
        assert image_rank(model, m) == model.rho_T + 2


def test_degenerate_m_zero(rational_elliptic):
    assert b2_of_X0(rational_elliptic, 0) == rational_elliptic.rho_T + 2
    assert image_rank(rational_elliptic, 0) == rational_elliptic.rho_T + 1


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_kernel_without_exceptional_columns(n, m):
    model = SurfaceModel.for_dimension(n)
    assert b2_of_X0(model, m, with_exceptional=False) == model.rho_T + 1
    assert image_rank(model, m, with_exceptional=False) == model.rho_T + 2
    assert len(kernel_generators(model, m, with_exceptional=False)) == model.rho_T + 1
    # each E_j column adds one kernel generator
    assert b2_of_X0(model, m) - b2_of_X0(model, m, with_exceptional=False) == m


def test_kernel_generators_lie_in_kernel(fibred_threefold):
    m = 2
    R = restriction_matrix(fibred_threefold, m)
    relation = pic_X12_presentation(fibred_threefold, m).relation
    augmented = R.hstack(IntegerMatrix.from_columns([relation]))
    basis = kernel_generators(fibred_threefold, m)
    assert len(basis) == b2_of_X0(fibred_threefold, m)
    for vec in basis:
        image = R @ IntegerMatrix.from_columns([vec])
        # the image is a multiple of the relation column
        assert integer_rank(image.hstack(IntegerMatrix.from_columns([relation]))) <= 1
    assert augmented.cols == R.cols + 1


def test_betti_report(rational_elliptic):
    report = betti_report(rational_elliptic, 3, emit_matrices=True)
    assert report.b2_X0 == 14
    assert report.b2_X == 13
    assert report.agrees
    assert report.columns == 26
    assert len(report.matrix) == 20
    assert BettiReport.from_dict(report.to_dict()) == report
    assert 'matrix' not in betti_report(rational_elliptic, 3).to_dict()


# --- d-semistability ---
def test_d_semistability_holds_up_to_1000():
    for m in range(1, 1001):
        assert d_semistability_check(m).holds, m


def test_d_semistability_sides():
    report = d_semistability_check(1)
    assert report.lhs == 3 * (basis_h() + phi_pullback_closed(1)) + 2 * fibre_class()
    assert report.difference == 0 * basis_h()
    assert SemistabilityReport.from_dict(report.to_dict()) == report


def test_d_semistability_detects_perturbation():
    report = d_semistability_check(1, perturbation=basis_e(1))
    assert not report.holds
    assert report.difference == -basis_e(1)


# --- Non-projectivity kernel ---
def test_independence_rank():
    for m in range(1, 101):
        assert independence_rank(m) == 3


def test_matching_solutions():
    assert matching_solutions(1) == [(-3, 1, 3)]
    assert matching_solutions(17) == [(-3, 1, 3)]


def test_forced_effective():
    for m in range(1, 101):
        assert forced_effective(m) == (0, 0)


def test_nonprojectivity_kernel_examples():
    trivial = nonprojectivity_kernel(1, 0, 0, 0)
    assert trivial.consistent and trivial.forced == (0, 0)

    ineffective = nonprojectivity_kernel(1, 3, -1, -3)
    assert ineffective.consistent
    assert not ineffective.effective
    assert ineffective.forced is None

    assert not nonprojectivity_kernel(1, 1, 0, 0).consistent


def test_nonprojectivity_kernel_reports_algebraic_dimension():
    report = nonprojectivity_kernel(2, 0, 0, 0, n=3)
    assert report.algebraic_dimension == 3
    assert report.independence_rank == 3
    assert KernelReport.from_dict(report.to_dict()) == report


def test_k3_fibre_blowup_points():
    assert all(k3_fibre_blowup_points(m) == 18 for m in range(1, 30))
    assert pairing(build_C(4), fibre_class()) == 18
