"""
Tests for the contact pair validators, decomposition, normality and the nabla phi identity.
"""

import math

import numpy as np
import pytest

from Contact_Pair import (
    almost_contact_normality,
    check_decomposable,
    check_nabla_phi,
    decompose,
    normality_check,
    run_structure_suite,
    validate_chart,
    validate_endomorphism,
    validate_metric,
    validate_pair,
    verify_reeb,
)
from Data_Classes.classes import ContactPairStructure
from Data_Classes.errors import DimensionMismatchError, NotDecomposableError, UnknownFieldError
from Data_Retrieval.spec_file import parse_spec_text
from Expression_Engine import expr_ast as ex
from Expression_Engine.expr_parser import parse

NEGATIVE_METRIC = """
[manifold]
name = negative_band
dim = 2

[box]
0 = -1, -0.5
1 = -1, 1

[metric]
0 0 = 1
1 1 = x0
"""

FLAT_PAIR_FAILURES = {
    "alpha1∧(dalpha1)^p∧alpha2∧(dalpha2)^q ≠ 0",
    "g(X, phi Y) = (dalpha1 + dalpha2)(X,Y)",
    "phi preserves TF_1 and TF_2",
    "nabla_X Z = -phi X",
}


def _with_endo_entry(S: ContactPairStructure, i: int, j: int, text: str) -> ContactPairStructure:
    rows = [list(row) for row in S.base.endo(S.phi)]
    rows[i][j] = ex.add(rows[i][j], parse(text, S.base.dim))
    base = S.base.with_fields(endos={S.phi: tuple(tuple(row) for row in rows)})
    return S.with_base(base)


def _failed(report) -> set:
    return {entry.name for entry in report.failed_entries}


# ------------------------------------------------------------------ full suite

@pytest.mark.parametrize("name", ["s3_x_s1", "s3_x_s3"])
def test_product_spheres_pass_every_structure_check(zoo, fast_samples, name):
    S = zoo(name).structure
    report = run_structure_suite(S, samples=fast_samples)
    assert report.passed, [e.name for e in report.failed_entries]
    chart = validate_chart(S.base, samples=fast_samples)
    assert chart.passed


def test_flat_pair_fails_only_the_contact_conditions(flat_pair4, fast_samples):
    report = run_structure_suite(flat_pair4, samples=fast_samples)
    assert _failed(report) == FLAT_PAIR_FAILURES
    assert report.entry("(dalpha1)^(p+1) = 0").status == "pass"
    assert report.entry("N_J = 0").status == "pass"
    assert validate_chart(flat_pair4.base, samples=fast_samples).passed


def test_suite_notes_carry_the_validator_title(s3_x_s1):
    report = run_structure_suite(s3_x_s1, samples=2)
    assert report.entry("phi Z1 = 0").note.startswith("[Endomorphism")


def test_results_do_not_depend_on_worker_count(s3_x_s1, fast_samples):
    serial = validate_metric(s3_x_s1, samples=fast_samples, seed=5, workers=1)
    threaded = validate_metric(s3_x_s1, samples=fast_samples, seed=5, workers=3)
    assert serial.model_dump() == threaded.model_dump()


# ------------------------------------------------------------------ validators

def test_validate_pair_entries(s3_x_s1, fast_samples):
    report = validate_pair(s3_x_s1, samples=fast_samples)
    assert report.names() == ["alpha1∧(dalpha1)^p∧alpha2∧(dalpha2)^q ≠ 0",
                              "(dalpha1)^(p+1) = 0", "(dalpha2)^(q+1) = 0"]
    top = report.entry("alpha1∧(dalpha1)^p∧alpha2∧(dalpha2)^q ≠ 0")
    # |coefficient| = sin(2 x0), x0 kept 0.1 away from 0 and pi/2
    assert top.value >= math.sin(0.2) - 1e-12
    assert report.passed


def test_reeb_equations(s3_x_s1, fast_samples):
    report = verify_reeb(s3_x_s1, samples=fast_samples)
    assert set(report.names()) >= {"alpha1(Z1) = 1", "alpha2(Z2) = 1", "alpha1(Z2) = 0", "alpha2(Z1) = 0",
                                   "i_Z1 dalpha1 = 0", "i_Z2 dalpha2 = 0", "[Z1, Z2] = 0"}
    assert report.passed


def test_tilted_reeb_field_fails_interior_product(s3_x_s1, fast_samples):
    M = s3_x_s1.base
    tilted = tuple(ex.add(c, ex.Constant(0.1)) if i == 0 else c for i, c in enumerate(M.vector("Z1")))
    S = s3_x_s1.with_base(M.with_fields(vectors={"Z1": tilted}))
    report = verify_reeb(S, samples=fast_samples)
    assert report.entry("alpha1(Z1) = 1").status == "pass"
    assert report.entry("i_Z1 dalpha1 = 0").status == "fail"
    assert report.entry("[Z1, Z2] = 0").status == "pass"


def test_endomorphism_checks_and_rank(s3_x_s3, fast_samples):
    report = validate_endomorphism(s3_x_s3, samples=fast_samples)
    for name in ("phi^2 = -I + alpha1⊗Z1 + alpha2⊗Z2", "phi Z1 = 0", "phi Z2 = 0",
                 "alpha1 ∘ phi = 0", "alpha2 ∘ phi = 0", "J^2 = -I", "T^2 = -I", "rank phi = 2p+2q = 4"):
        assert report.entry(name).status == "pass", name


def test_perturbed_phi_breaks_the_algebra(s3_x_s1, fast_samples):
    S = _with_endo_entry(s3_x_s1, 3, 2, "0.05*x0")
    report = validate_endomorphism(S, samples=fast_samples)
    assert report.entry("phi^2 = -I + alpha1⊗Z1 + alpha2⊗Z2").status == "fail"
    assert report.entry("alpha2 ∘ phi = 0").status == "fail"
    assert report.entry("alpha1 ∘ phi = 0").status == "pass"


def test_associated_metric(s3_x_s1, fast_samples):
    report = validate_metric(s3_x_s1, samples=fast_samples)
    assert report.passed
    assert report.entry("g(phi X, Y) = -g(X, phi Y)").provenance == "TRIVIAL"


def test_stretched_circle_breaks_compatibility(s3_x_s1, fast_samples):
    M = s3_x_s1.base
    rows = [list(row) for row in M.metric]
    rows[3][3] = ex.Constant(2.0)
    S = s3_x_s1.with_base(M.with_fields(metric=tuple(tuple(row) for row in rows)))
    report = validate_metric(S, samples=fast_samples)
    assert report.entry("g(Zi, Zj) = delta_ij").status == "fail"
    assert report.entry("g(X, Z2) = alpha2(X)").status == "fail"
    assert report.entry("g(X, Z1) = alpha1(X)").status == "pass"
    assert report.entry("g(X, phi Y) = (dalpha1 + dalpha2)(X,Y)").status == "pass"


def test_validate_chart_stops_at_indefinite_metric(fast_samples):
    report = validate_chart(parse_spec_text(NEGATIVE_METRIC), samples=fast_samples)
    assert report.names() == ["metric positive definite"]
    assert not report.passed


def test_validate_chart_entries(zoo, fast_samples):
    report = validate_chart(zoo("s3_x_s1").manifold, samples=fast_samples)
    assert {"metric positive definite", "g g_inv = I", "first Bianchi", "d(dalpha1) = 0",
            "d(dalpha2) = 0"} <= set(report.names())


def test_structure_type_must_match_dimension(s3_x_s1):
    with pytest.raises(DimensionMismatchError):
        ContactPairStructure(s3_x_s1.base, "alpha1", "alpha2", "Z1", "Z2", "phi", 1, 1)
    with pytest.raises(UnknownFieldError):
        ContactPairStructure(s3_x_s1.base, "alpha1", "beta", "Z1", "Z2", "phi", 1, 0)


# ------------------------------------------------------------------ decomposition

def test_decompose_on_s3_x_s1(s3_x_s1):
    x = [0.5, 1.0, 2.0, 3.0]
    X = np.array([1.0, 2.0, 3.0, 4.0])
    parts = decompose(s3_x_s1, X, x)
    s2, c2 = math.sin(0.5) ** 2, math.cos(0.5) ** 2
    assert parts.v1 == pytest.approx(2.0 * c2 + 3.0 * s2)
    assert parts.v2 == pytest.approx(4.0)
    np.testing.assert_allclose(parts.x1h, 0.0, atol=1e-12)
    z1, z2 = np.array([0.0, 1.0, 1.0, 0.0]), np.array([0.0, 0.0, 0.0, 1.0])
    np.testing.assert_allclose(parts.x1h + parts.x2h + parts.v1 * z1 + parts.v2 * z2, X, atol=1e-12)


def test_decompose_on_s3_x_s3_splits_the_factors(s3_x_s3):
    x = [0.5, 1.0, 2.0, 0.9, 0.3, 1.1]
    X = np.array([1.0, 0.5, -0.5, 2.0, 0.0, 0.0])
    parts = decompose(s3_x_s3, X, x)
    # TG_1 lies in the second factor, TG_2 in the first
    np.testing.assert_allclose(parts.x1h[:3], 0.0, atol=1e-12)
    np.testing.assert_allclose(parts.x2h[3:], 0.0, atol=1e-12)
    assert parts.x2h[0] == pytest.approx(1.0)
    assert parts.x1h[3] == pytest.approx(2.0)


@pytest.mark.parametrize("structure, x", [
    ("s3_x_s1", [0.5, 1.0, 2.0, 3.0]),
    ("s3_x_s3", [0.5, 1.0, 2.0, 0.9, 0.3, 1.1]),
])
def test_decompose_is_linear(request, structure, x):
    S = request.getfixturevalue(structure)
    rng = np.random.default_rng(7)
    X, Y = rng.standard_normal(len(x)), rng.standard_normal(len(x))
    a, b = rng.uniform(-3.0, 3.0, size=2)
    combined = decompose(S, a * X + b * Y, x)
    parts_x, parts_y = decompose(S, X, x), decompose(S, Y, x)
    for part in ("x1h", "x2h", "v1", "v2"):
        expected = a * np.asarray(getattr(parts_x, part)) + b * np.asarray(getattr(parts_y, part))
        np.testing.assert_allclose(getattr(combined, part), expected, rtol=0, atol=1e-10, err_msg=part)


def test_decompose_rejects_flat_pair(flat_pair4):
    with pytest.raises(NotDecomposableError):
        decompose(flat_pair4, [1.0, 0.0, 0.0, 0.0], [0.1, 0.2, 0.3, 0.4])


def test_check_decomposable_entries(s3_x_s3, fast_samples):
    report = check_decomposable(s3_x_s3, samples=fast_samples)
    assert report.names() == ["phi preserves TF_1 and TF_2",
                              "X = x1h + x2h + alpha1(X) Z1 + alpha2(X) Z2",
                              "alpha_i(x1h) = alpha_i(x2h) = 0"]
    assert report.passed


# ------------------------------------------------------------------ normality and nabla phi

def test_normality(s3_x_s1, fast_samples):
    report = normality_check(s3_x_s1, samples=fast_samples)
    assert report.names() == ["N_J = 0", "N_T = 0"]
    assert report.passed


def test_sasakian_sphere_is_normal_almost_contact(zoo, fast_samples):
    M = zoo("sasakian_s3").manifold
    report = almost_contact_normality(M, "phi", "eta", "xi", samples=fast_samples)
    entry = report.entry("[phi, phi] + 2 d eta ⊗ xi = 0")
    assert entry.status == "pass"
    assert entry.max_residual < 1e-7


def test_nabla_phi_identity(s3_x_s1, fast_samples):
    report = check_nabla_phi(s3_x_s1, samples=fast_samples)
    assert not report.failed_entries
    assert report.entry("nabla_X Z = -phi X").max_residual < 1e-8
    assert report.entry("nabla_X Zi = -phi_i X, all X").status == "finding"
