import pytest

from dmanifold.atlas import Atlas, Overlap, atlas_report, validate_overlap, validate_triple
from dmanifold.polyalg import Mat, PolyMap, PolyRing, Polynomial, variables
from dmanifold.stdmodel import new_std_model

(x,) = variables(1)
_, y = variables(2)

LINE = new_std_model(1, 0, [])
PLANE = new_std_model(2, 1, [y])
PLANE_SQ = new_std_model(2, 1, [y ** 2])
CUT = new_std_model(1, 1, [x])  # the point {0} as a chart with one obstruction


def mat(rows, r, c, n=1):
    return Mat.of(PolyRing(n), rows, r, c)


def line_to_plane(target=PLANE):
    ov = Overlap(PolyMap(1, 2, (x, Polynomial.zero(1))), mat([[]], 1, 0), witnesses=((0,),))
    return Atlas((LINE, target), 1, {(0, 1): ov})


def scalar_overlap(c, wit=((0,),)):
    return Overlap(PolyMap(1, 1, (c * x,)), mat([[c]], 1, 1), witnesses=wit)


def test_two_chart_atlas_passes():
    a = line_to_plane()
    v = validate_overlap(a, 0, 1)
    assert v and v.certificate["congruence_ok"] and v.certificate["exact_ok"]
    rep = atlas_report(a)
    assert rep.ok and rep.vdim == 1 and rep.to_json()["status"] == "PASS"


def test_square_section_fails_exactness_with_certificate():
    rep = atlas_report(line_to_plane(PLANE_SQ))
    v = rep.overlaps[(0, 1)]
    assert not rep.ok and not v
    assert v.certificate["congruence_ok"] and not v.certificate["exact_ok"]
    assert v.certificate["sequences"][0]["exact"] is False


def test_identity_overlap_passes():
    a = Atlas((CUT, CUT), 0, {(0, 1): scalar_overlap(1)})
    assert validate_overlap(a, 0, 1)


def test_two_charts_have_no_triples():
    rep = atlas_report(line_to_plane())
    assert rep.triples == {}


def three_charts(e13=1):
    ovs = {(0, 1): scalar_overlap(1), (1, 2): scalar_overlap(1), (0, 2): scalar_overlap(e13)}
    return Atlas((CUT, CUT, CUT), 0, ovs)


def test_three_identity_charts_pass():
    rep = atlas_report(three_charts())
    assert rep.ok and list(rep.triples) == [(0, 1, 2)]


def test_perturbed_transition_fails_the_triple():
    # e13 = 2x differs from e23 o e12 = x by x: in I_s but not in I_s^2
    a = three_charts(2)
    assert validate_overlap(a, 0, 2)
    v = validate_triple(a, 0, 1, 2)
    assert not v
    assert v.certificate["base_remainders"] == [{"component": 0, "remainder": x.to_terms()}]
    assert not atlas_report(a).ok


def test_mixed_vdims_name_the_chart():
    rep = atlas_report(Atlas((LINE, CUT), 1, {}))
    assert not rep.ok and rep.bad_charts == [1]


def test_empty_atlas_passes_with_warning():
    rep = atlas_report(Atlas((), 0, {}))
    assert rep.ok and rep.warnings


def test_missing_third_overlap_is_reported():
    ovs = {(0, 1): scalar_overlap(1), (0, 2): scalar_overlap(1)}
    v = validate_triple(Atlas((CUT, CUT, CUT), 0, ovs), 0, 1, 2)
    assert not v and "error" in v.certificate


def test_principal_open_needs_localization():
    # s = x(x-1) and x agree up to the unit -1/(x-1) near 0, so -s = x + O(s^2) only after inverting x-1
    X = new_std_model(1, 1, [x * (x - 1)])
    ov = Overlap(PolyMap(1, 1, (x,)), mat([[-1]], 1, 1), p=x - 1, witnesses=((0,),))
    a = Atlas((X, CUT), 0, {(0, 1): ov})
    v = validate_overlap(a, 0, 1)
    assert v and v.certificate["congruence_localization_power"] == 2
    assert not validate_overlap(a, 0, 1, cap=1)
    whole = Atlas((X, CUT), 0, {(0, 1): Overlap(ov.e, ov.ehat, None, ov.witnesses)})
    assert not validate_overlap(whole, 0, 1)
    bad = Atlas((X, CUT), 0, {(0, 1): Overlap(ov.e, ov.ehat, x - 1, ((1,),))})
    with pytest.raises(ValueError):
        validate_overlap(bad, 0, 1)


def test_adjoining_an_identity_chart_keeps_pass():
    a = line_to_plane()
    ident = Overlap(PolyMap.identity(1), mat([], 0, 0), witnesses=((0,),))
    b = Atlas((LINE, LINE, PLANE), 1, {(0, 1): ident, (0, 2): a.overlaps[(0, 1)], (1, 2): a.overlaps[(0, 1)]})
    assert atlas_report(b).ok


def test_reports_are_stable_under_reindexing():
    a = three_charts(2)
    b = Atlas(a.charts, a.vdim, dict(a.overlaps), names=("p", "q", "r"))
    assert atlas_report(a).to_json() == atlas_report(b).to_json()
    rep = atlas_report(a).to_json()
    assert rep["status"] == "FAIL" and rep["localization_cap"] == 4


def test_bad_shapes_are_rejected():
    with pytest.raises(ValueError):
        Atlas((LINE, PLANE), 1, {(1, 0): line_to_plane().overlaps[(0, 1)]})
    with pytest.raises(ValueError):
        Atlas((LINE, PLANE), 1, {(0, 1): Overlap(PolyMap.identity(1), mat([[]], 1, 0))})
