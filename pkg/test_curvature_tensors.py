"""
Tests for the conformal, concircular and quasi-conformal tensors and the audits built on them.
"""

import numpy as np
import pytest

from Curvature_Tensors import (
    audit_identities,
    audit_theorem_concircular,
    audit_theorem_conformal,
    audit_theorem_quasiconformal,
    concircular_at,
    conformal_at,
    curvature_summary,
    einstein_check,
    flatness,
    quasi_conformal_at,
    tensor_at,
)
from Curvature_Tensors.tensors import pair_type, sample_bundles
from Data_Classes.classes import QuasiConformalParams, manifold_of
from Data_Classes.errors import DimensionMismatchError, MissingParamsError
from Geometry_Core.curvature import curvature_at
from Zoo import BUILTIN_NAMES, conformally_rescaled

S3_X_S1_POINT = [0.8, 1.0, 2.0, 0.5]


@pytest.fixture(scope="module")
def s3_x_s1_bundle(s3_x_s1):
    return curvature_at(s3_x_s1.base, S3_X_S1_POINT)


# ------------------------------------------------------------------ tensors

@pytest.mark.parametrize("tensor, params", [
    ("conformal", None),
    ("concircular", None),
    ("quasi", QuasiConformalParams(1.0, 0.0)),
    ("quasi", QuasiConformalParams(1.0, -0.25)),
    ("quasi", QuasiConformalParams(2.0, 3.0)),
])
def test_flat_space_has_flat_tensors(zoo, fast_samples, tensor, params):
    report = flatness(zoo("euclidean4").manifold, tensor, params=params, samples=fast_samples)
    assert report.max_component < 1e-9
    assert report.is_flat


@pytest.mark.parametrize("name", [name for name in BUILTIN_NAMES if name != "sphere2"])
def test_quasi_conformal_specializes_to_w_and_c(zoo, fast_samples, name):
    entry = zoo(name)
    target = entry.structure if entry.structure is not None else entry.manifold
    p, q = pair_type(target)
    for bundle in sample_bundles(target, fast_samples, 42):
        g = bundle.g
        W = concircular_at(bundle, g, p, q).components
        C = conformal_at(bundle, g, p, q).components
        np.testing.assert_allclose(quasi_conformal_at(bundle, g, p, q, QuasiConformalParams(1.0, 0.0)).components,
                                   W, rtol=0, atol=1e-12)
        np.testing.assert_allclose(
            quasi_conformal_at(bundle, g, p, q, QuasiConformalParams.default_for(2.0 * p + 2.0 * q)).components,
            C, rtol=0, atol=1e-12,
        )


def test_conformal_tensor_is_trace_free(zoo):
    bundle = curvature_at(zoo("s3_x_s3").manifold, [0.4, 1.0, 2.0, 1.2, 0.5, 3.0])
    C = conformal_at(bundle, bundle.g, 1, 1).components
    assert np.max(np.abs(np.einsum("llij->ij", C))) < 1e-11
    assert np.max(np.abs(C)) > 1e-2


@pytest.mark.parametrize("name, x", [
    ("euclidean4", [0.3, -0.5, 0.2, 0.7]),
    ("s3_x_s1", S3_X_S1_POINT),
    ("s3_x_s3", [0.4, 1.0, 2.0, 1.2, 0.5, 3.0]),
])
def test_conformal_tensor_is_conformally_invariant(zoo, name, x):
    entry = zoo(name)
    target = entry.structure if entry.structure is not None else entry.manifold
    p, q = pair_type(target)
    rescaled = conformally_rescaled(target, "0.1*x0 + 0.05*x1^2")
    assert pair_type(rescaled) == (p, q)
    before = curvature_at(manifold_of(target), x)
    after = curvature_at(manifold_of(rescaled), x)
    assert abs(after.scal - before.scal) > 1e-3
    C_before = conformal_at(before, before.g, p, q).components
    C_after = conformal_at(after, after.g, p, q).components
    np.testing.assert_allclose(C_after, C_before, atol=1e-6)


def test_tensor_at_dispatch(s3_x_s1_bundle):
    with pytest.raises(MissingParamsError):
        tensor_at(s3_x_s1_bundle, "quasi", 1, 0)
    with pytest.raises(ValueError):
        tensor_at(s3_x_s1_bundle, "weyl", 1, 0)
    assert tensor_at(s3_x_s1_bundle, "concircular", 1, 0).valence == (1, 3)


def test_type_must_match_dimension(s3_x_s1_bundle):
    with pytest.raises(DimensionMismatchError):
        conformal_at(s3_x_s1_bundle, s3_x_s1_bundle.g, 1, 1)


def test_conformal_tensor_needs_dimension_three(zoo):
    bundle = curvature_at(zoo("sphere2").manifold, [1.0, 0.3])
    with pytest.raises(DimensionMismatchError):
        conformal_at(bundle, bundle.g, 0, 0)
    with pytest.raises(DimensionMismatchError):
        audit_theorem_conformal(zoo("sphere2").manifold, samples=2)


def test_quasi_flatness_requires_params(s3_x_s1):
    with pytest.raises(MissingParamsError):
        flatness(s3_x_s1, "quasi", samples=2)


# ------------------------------------------------------------------ flatness, Einstein, summaries

def test_s3_x_s1_is_conformally_but_not_concircularly_flat(s3_x_s1, fast_samples):
    assert flatness(s3_x_s1, "conformal", samples=fast_samples).is_flat
    concircular = flatness(s3_x_s1, "concircular", samples=fast_samples)
    assert not concircular.is_flat
    assert concircular.tensor_name == "concircular"


def test_sphere4_is_einstein_and_concircularly_flat(zoo, fast_samples):
    M = zoo("sphere4").manifold
    report = einstein_check(M, samples=fast_samples)
    assert report.lambda_ == pytest.approx(3.0, abs=1e-8)
    assert report.is_einstein
    assert flatness(M, "concircular", samples=fast_samples).max_component < 1e-8


def test_s3_x_s1_is_not_einstein(s3_x_s1, fast_samples):
    report = einstein_check(s3_x_s1, samples=fast_samples)
    assert report.max_residual == pytest.approx(1.5, abs=1e-8)
    assert report.scal == pytest.approx(6.0, abs=1e-8)
    assert not report.is_einstein


def test_curvature_summary_at_a_point(zoo):
    summary = curvature_summary(zoo("sphere2").manifold, at=[1.0, 0.3])
    assert summary.points == 1
    assert summary.at == [1.0, 0.3]
    assert summary.scal_min == pytest.approx(2.0)
    assert summary.sectional_min == pytest.approx(1.0)
    assert summary.sectional_max == pytest.approx(1.0)
    with pytest.raises(DimensionMismatchError):
        curvature_summary(zoo("sphere2").manifold, at=[1.0])


def test_curvature_summary_ricci_eigenvalues(s3_x_s1, fast_samples):
    summary = curvature_summary(s3_x_s1, samples=fast_samples)
    np.testing.assert_allclose(summary.ricci_eigenvalues_min, [0.0, 2.0, 2.0, 2.0], atol=1e-8)
    np.testing.assert_allclose(summary.ricci_eigenvalues_max, [0.0, 2.0, 2.0, 2.0], atol=1e-8)
    assert summary.planes > 0
    assert summary.sectional_min >= -1e-8
    assert summary.sectional_max <= 1.0 + 1e-8


# ------------------------------------------------------------------ identity audit

@pytest.mark.parametrize("name, ric_zz", [("s3_x_s1", 2.0), ("s3_x_s3", 4.0)])
def test_reeb_curvature_identities(zoo, fast_samples, name, ric_zz):
    report = audit_identities(zoo(name).structure, samples=fast_samples)
    assert not report.failed_entries, [e.name for e in report.failed_entries]
    assert report.entry("Ric(Z,Z) = 2p+2q").value == ric_zz
    assert report.entry("R(X1,X2,Z,X3) as printed, all X").status == "finding"


def test_printed_four_argument_form_fails_off_the_horizontal(s3_x_s1, fast_samples):
    report = audit_identities(s3_x_s1, samples=fast_samples)
    assert report.entry("R(X1,X2,Z,X3) as printed, all X").max_residual > 1e-3
    assert report.entry("R(X1,Z)X2 = -[(dalpha1+dalpha2)(phi X1,X2)]Z, X horizontal").max_residual > 1e-3
    assert report.entry("R(X1,X2,Z,X3) as printed, X horizontal").status == "pass"


# ------------------------------------------------------------------ theorem audits

def test_conformal_audit_on_s3_x_s1(s3_x_s1, fast_samples):
    """A = 6/6, B = 1/2, the horizontal Ricci eigenvalue 2 is shifted by (2A+1)/(2B) = 3."""
    report = audit_theorem_conformal(s3_x_s1, samples=fast_samples)
    assert not report.gating
    assert report.entry("conformal tensor C = 0").status == "pass"
    assert report.entry("B = 1/(2p+2q)").value == pytest.approx(0.5)
    assert report.entry("A = scal/((2p+2q+1)(2p+2q))").value == pytest.approx(1.0, abs=1e-9)
    einstein1 = report.entry("Ric_H + (2A+1)/(2B) g_H = 0")
    assert einstein1.status == "finding"
    assert einstein1.max_residual == pytest.approx(5.0, abs=1e-9)
    scal1 = report.entry("scal - scal1")
    assert scal1.value == pytest.approx(-2.4)
    assert scal1.max_residual == pytest.approx(8.4, abs=1e-9)
    assert report.entry("Ric - (scal/n) g = 0 (conclusion: Einstein)").max_residual == pytest.approx(1.5, abs=1e-9)
    assert report.entry("k(X,Y) + A, X, Y horizontal").max_residual == pytest.approx(2.0, abs=1e-8)
    assert report.entry("k(X,Y) - printed value").value == pytest.approx(-14.4)


def test_conformal_audit_on_flat_torus(zoo, fast_samples):
    report = audit_theorem_conformal(zoo("flat_torus4").manifold, samples=fast_samples)
    assert report.entry("Ric_H + (2A+1)/(2B) g_H = 0").max_residual == pytest.approx(1.0, abs=1e-12)
    assert report.entry("A = scal/((2p+2q+1)(2p+2q))").value == 0.0


def test_conformal_audit_skips_steps_when_not_flat(s3_x_s3, fast_samples):
    report = audit_theorem_conformal(s3_x_s3, samples=fast_samples)
    assert report.entry("conformal tensor C = 0").status == "fail"
    step = report.entry("scal - scal1")
    assert step.status == "skip"
    assert step.max_residual is not None
    assert report.passed is False and report.gating is False


def test_concircular_audit_on_sphere4(zoo, fast_samples):
    report = audit_theorem_concircular(zoo("sphere4").manifold, samples=fast_samples)
    assert report.entry("concircular tensor W = 0").status == "pass"
    assert report.entry("W = 0 at a point => Ric - (scal/n) g = 0 there").status == "pass"
    conclusion = report.entry("Einstein (conclusion)")
    assert conclusion.status == "pass"
    assert conclusion.value == pytest.approx(3.0, abs=1e-8)


def test_concircular_audit_on_s3_x_s1(s3_x_s1, fast_samples):
    report = audit_theorem_concircular(s3_x_s1, samples=fast_samples)
    assert report.entry("concircular tensor W = 0").status == "fail"
    assert report.entry("W = 0 at a point => Ric - (scal/n) g = 0 there").status == "skip"
    assert report.entry("Einstein (conclusion)").status == "finding"


def test_quasi_audit_default_params_are_degenerate(s3_x_s1, fast_samples):
    report = audit_theorem_quasiconformal(s3_x_s1, samples=fast_samples)
    assert report.entry("quasi-conformal tensor C~ = 0").status == "pass"
    assert report.entry("a + b(2p+2q) != 0").note == "degenerate"
    step = report.entry("Ric - (scal/n) g = 0")
    assert step.status == "skip"
    assert step.note == "degenerate parameters"


def test_quasi_audit_on_sphere4_with_concircular_params(zoo, fast_samples):
    report = audit_theorem_quasiconformal(zoo("sphere4").manifold, params=QuasiConformalParams(1.0, 0.0),
                                          samples=fast_samples)
    assert report.entry("quasi-conformal tensor C~ = 0").status == "pass"
    assert report.entry("K = [a/(2p+2q+1) + 2b] scal/(2p+2q+2)").value == pytest.approx(1.0, abs=1e-8)
    assert report.entry("Ric - (scal/n) g = 0").max_residual < 1e-8
    assert report.entry("scal - 4(p+q)(p+q+1)").max_residual == pytest.approx(4.0, abs=1e-7)
    assert report.entry("Ric - 2(p+q) g = 0").max_residual == pytest.approx(1.0, abs=1e-8)
    assert all(entry.status != "fail" for entry in report.entries)


def test_quasi_audit_form_step_states_the_printed_coefficient(zoo, s3_x_s1, fast_samples):
    report = audit_theorem_quasiconformal(zoo("sphere4").manifold, params=QuasiConformalParams(1.0, 0.0),
                                          samples=fast_samples)
    form = report.entry("R - (p+q)/(2p+2q+1) [g g - g g] = 0")
    assert form.status == "finding"
    assert form.value == pytest.approx(1.0 / 3.0)
    # unit sphere: every frame component of R is 0 or +-1
    assert form.max_residual == pytest.approx(2.0 / 3.0, abs=1e-8)
    assert "(p+q)/(2p+2q+1) = 0.333333333333 taken as printed" in form.note
    assert "constant (2p+2q)/(2p+2q+1) = 0.666666666667" in form.note
    skipped = audit_theorem_quasiconformal(s3_x_s1, samples=fast_samples).entry("R - (p+q)/(2p+2q+1) [g g - g g] = 0")
    assert skipped.status == "skip"
    assert skipped.note.startswith("degenerate parameters. coefficient (p+q)/(2p+2q+1) = 0.333333333333")
