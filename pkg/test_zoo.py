"""
Tests for the built-in manifolds, the spec file format and the Hermitian pair construction.
"""

from dataclasses import replace

import pytest

from Contact_Pair import validate_endomorphism, validate_metric
from Data_Classes.classes import ChartedManifold, ContactPairStructure
from Data_Classes.errors import PrerequisiteFailed, SpecFileError, UnknownZooEntryError
from Data_Retrieval.spec_file import export_spec_text, load_spec_file, parse_spec_text
from Expression_Engine import expr_ast as ex
from Zoo import BUILTIN_NAMES, builtin, conformally_rescaled, hermitian_pair_build, hopf_pair_input, list_entries

HEADER = ["[manifold]", "name = broken", "dim = 2", "", "[box]", "0 = 0, 1", "1 = 0, 1", ""]


def _spec(*lines: str) -> str:
    return "\n".join(HEADER + list(lines)) + "\n"


# ------------------------------------------------------------------ registry

def test_registry_lists_every_builtin():
    names = [entry.name for entry in list_entries()]
    assert names == list(BUILTIN_NAMES)
    assert set(names) == {"euclidean4", "flat_torus4", "sphere2", "sphere3", "sphere4",
                          "sasakian_s3", "s3_x_s1", "s3_x_s3", "flat_pair4"}


def test_unknown_entry():
    with pytest.raises(UnknownZooEntryError) as info:
        builtin("klein_bottle")
    assert "s3_x_s1" in str(info.value)


def test_entry_types_and_expected_values():
    entry = builtin("s3_x_s1")
    assert entry.type_label == "(1,0)"
    assert builtin("s3_x_s3").type_label == "(1,1)"
    assert builtin("sphere2").type_label == "plain"
    assert builtin("sphere2").structure is None
    expected = entry.expected_map()
    assert expected["Ric(Z,Z)"].value == 2.0
    assert expected["Ric(Z,Z)"].provenance == "PAPER"
    assert expected["Einstein residual"].value == 1.5


def test_builtins_are_cached():
    assert builtin("sphere3") is builtin("sphere3")


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_export_parses_back_to_the_same_target(name):
    entry = builtin(name)
    target = entry.structure if entry.structure is not None else entry.manifold
    assert parse_spec_text(export_spec_text(target)) == target


def test_load_spec_file_round_trip(tmp_path):
    target = builtin("s3_x_s3").structure
    path = tmp_path / "s3_x_s3.cpc"
    path.write_text(export_spec_text(target), encoding="utf-8")
    assert load_spec_file(str(path)) == target


# ------------------------------------------------------------------ spec file errors

@pytest.mark.parametrize("lines, line", [
    (("[metric]", "0 0 = 1 +", "1 1 = 1"), 10),
    (("[metric]", "0 0 = 1", "1 1 = 1", "[tensor R]", "0 = 1"), 12),
    (("[metric]", "0 0 = 1"), 9),
    (("[metric]", "0 0 = 1", "2 2 = 1"), 11),
    (("[metric]", "0 0 = 1", "1 1 = 1", "0 0 = 2"), 12),
    (("[metric]", "0 0 = 1", "1 1 = tan(x0)"), 11),
    (("[metric]", "0 0 = 1", "1 1 = 1", "", "[vector X]", "0 = x2"), 14),
    (("[metric]", "0 0 = 1", "1 1 = 1", "", "[pair]", "alpha1 = a"), 13),
])
def test_spec_errors_carry_line_numbers(lines, line):
    with pytest.raises(SpecFileError) as info:
        parse_spec_text(_spec(*lines), source="broken.cpc")
    assert info.value.line == line
    assert str(info.value).startswith(f"broken.cpc:{line}: ")


def test_box_bounds_must_be_constant():
    text = "[manifold]\nname = b\ndim = 1\n[box]\n0 = x0, 1\n[metric]\n0 0 = 1\n"
    with pytest.raises(SpecFileError) as info:
        parse_spec_text(text)
    assert info.value.line == 5


def test_missing_sections():
    with pytest.raises(SpecFileError, match="missing \\[manifold\\]"):
        parse_spec_text("[metric]\n0 0 = 1\n")
    with pytest.raises(SpecFileError, match="missing \\[metric\\]"):
        parse_spec_text(_spec())


def test_pair_type_must_fit_dimension():
    text = export_spec_text(builtin("s3_x_s1").structure).replace("p = 1", "p = 2")
    with pytest.raises(SpecFileError, match="needs dimension"):
        parse_spec_text(text)


def test_unreadable_file(tmp_path):
    with pytest.raises(SpecFileError) as info:
        load_spec_file(str(tmp_path / "missing.cpc"))
    assert info.value.line is None


def test_spec_without_pair_is_a_plain_manifold():
    M = parse_spec_text(_spec("[metric]", "0 0 = 1", "1 1 = exp(x0)"))
    assert isinstance(M, ChartedManifold)
    assert M.coord_names == ("x0", "x1")
    assert M.metric[0][1] == ex.ZERO


# ------------------------------------------------------------------ rescaling

def test_conformal_rescaling_keeps_fields():
    S = builtin("s3_x_s1").structure
    rescaled = conformally_rescaled(S, "0.1*x0")
    assert isinstance(rescaled, ContactPairStructure)
    assert rescaled.base.name == "s3_x_s1_conformal"
    assert rescaled.base.forms == S.base.forms
    assert rescaled.base.metric != S.base.metric


# ------------------------------------------------------------------ Hermitian construction

@pytest.fixture(scope="module")
def hopf_build(fast_samples):
    return hermitian_pair_build(hopf_pair_input(), samples=fast_samples)


def test_hermitian_build_satisfies_its_hypotheses(hopf_build):
    structure, report = hopf_build
    gated = [entry for entry in report.entries if entry.status != "finding"]
    assert all(entry.status == "pass" for entry in gated), [e.name for e in report.failed_entries]
    for name in ("J xi1 = xi2", "phi1 J = -J phi1 = phi2", "phi2 phi1 = J - eta1⊗xi2 + eta2⊗xi1",
                 "phi^2 = -I + eta1⊗xi1 + eta2⊗xi2", "eta_i(xi_j) = delta_ij"):
        assert report.entry(name).status == "pass", name
    assert structure.phi == "phi_pair"
    assert structure.base.name == "hopf_pair"
    assert (structure.p, structure.q) == (1, 1)


def test_hermitian_build_records_printed_sign_as_finding(hopf_build):
    _, report = hopf_build
    printed = report.entry("phi2 phi1 = J + eta1⊗xi2 - eta2⊗xi1 (as printed)")
    assert printed.status == "finding"
    assert printed.max_residual == pytest.approx(2.0, abs=1e-8)


def test_built_structure_is_an_almost_contact_pair(hopf_build, fast_samples):
    structure, _ = hopf_build
    endomorphism = validate_endomorphism(structure, samples=fast_samples)
    assert endomorphism.entry("phi^2 = -I + alpha1⊗Z1 + alpha2⊗Z2").status == "pass"
    assert endomorphism.entry("rank phi = 2p+2q = 4").status == "pass"
    metric = validate_metric(structure, samples=fast_samples)
    assert metric.entry("g(phi X, phi Y) = g(X,Y) - alpha1(X)alpha1(Y) - alpha2(X)alpha2(Y)").status == "pass"
    assert metric.entry("g(Zi, Zj) = delta_ij").status == "pass"


def test_strict_mode_raises_on_broken_hypothesis(fast_samples):
    hermitian = hopf_pair_input()
    M = hermitian.base
    flipped = tuple(tuple(ex.scale(-1.0, c) for c in row) for row in M.endo("phi2"))
    broken = replace(hermitian, base=M.with_fields(endos={"phi2": flipped}))
    _, report = hermitian_pair_build(broken, samples=fast_samples)
    assert report.entry("phi1 J = -J phi1 = phi2").status == "fail"
    with pytest.raises(PrerequisiteFailed):
        hermitian_pair_build(broken, samples=fast_samples, strict=True)
