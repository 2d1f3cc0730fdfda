import pytest

from vassiliev.codes import (
    DiagramError,
    ParseError,
    SingularDiagram,
    braid_closure,
    linking_matrix_total,
    parse_gauss,
    parse_pd,
)

TREFOIL_GAUSS = "O1+U2+O3+U1+O2+U3+"
TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIG8_PD = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"


def test_parse_gauss_trefoil():
    d = parse_gauss(TREFOIL_GAUSS)
    assert d.n_crossings == 3
    assert d.n_nodes == 0
    assert d.n_components == 1
    assert d.writhe == 3


def test_parse_gauss_empty():
    d = parse_gauss("")
    assert d.n_components == 0
    assert d.n_crossings == 0


def test_parse_gauss_curl():
    d = parse_gauss("O1+U1+")
    assert d.n_crossings == 1
    assert d.n_components == 1
    assert d.writhe == 1


def test_parse_gauss_multicomponent():
    d = parse_gauss("O1+U2+;U1+O2+")
    assert d.n_components == 2
    assert d.n_crossings == 2
    assert linking_matrix_total(d) == 1


def test_parse_gauss_rejects_garbage():
    with pytest.raises(ParseError):
        parse_gauss("O1+U1")
    with pytest.raises(ParseError):
        parse_gauss("O1+X2-U1+")
    with pytest.raises(ParseError):
        parse_gauss("O1+U1-")  # mismatched signs
    with pytest.raises(ParseError):
        parse_gauss("O1+O1+")  # twice over
    with pytest.raises(ParseError):
        parse_gauss("O1+U1+O2+")  # unmatched crossing


def test_parse_pd_trefoil():
    d = parse_pd(TREFOIL_PD)
    assert d.n_crossings == 3
    assert d.n_components == 1
    assert d.writhe == -3  # standard code gives the left-handed picture
    assert set(d.signs.values()) == {-1}


def test_parse_pd_figure_eight():
    d = parse_pd(FIG8_PD)
    assert d.n_crossings == 4
    assert d.n_components == 1
    assert d.writhe == 0


def test_parse_pd_positive_curl():
    d = parse_pd("X(1,1,2,2)")
    assert d.n_crossings == 1
    assert d.n_components == 1
    assert d.writhe == 1


def test_parse_pd_node_lemniscate():
    d = parse_pd("V(1,2,1,2)")
    assert d.n_nodes == 1
    assert d.n_crossings == 0
    assert d.n_components == 1


def test_parse_pd_node_split_pair():
    d = parse_pd("V(1,1,2,2)")
    assert d.n_nodes == 1
    assert d.n_components == 2


def test_parse_pd_rejects_bad_arcs():
    with pytest.raises(ParseError):
        parse_pd("X(1,2,3,4)")  # arcs appear once only
    with pytest.raises(ParseError):
        parse_pd("X(1,1,1,2)")
    with pytest.raises(ParseError):
        parse_pd("frob(1,2,3,4)")


def test_pd_gauss_roundtrip_trefoil():
    d = parse_gauss(TREFOIL_GAUSS)
    again = parse_pd(d.to_pd())
    assert again == d
    assert parse_gauss(d.to_gauss()) == d


def test_pd_roundtrip_figure_eight():
    d = parse_pd(FIG8_PD)
    assert parse_pd(d.to_pd()) == d


def test_json_roundtrip_with_nodes():
    d = parse_pd("V(1,2,1,2)")
    again = SingularDiagram.from_json_dict(d.to_json_dict())
    assert again == d
    assert again.n_nodes == 1


def test_gauss_cannot_express_nodes():
    d = parse_pd("V(1,2,1,2)")
    with pytest.raises(DiagramError):
        d.to_gauss()


def test_switch_is_involution_and_flips_sign():
    d = parse_gauss(TREFOIL_GAUSS)
    sid = d.crossing_ids[0]
    s = d.switch_crossing(sid)
    assert s.sign(sid) == -d.sign(sid)
    assert s.switch_crossing(sid) == d
    assert s.writhe == d.writhe - 2


def test_smooth_changes_component_count_by_one():
    d = parse_gauss(TREFOIL_GAUSS)
    for sid in d.crossing_ids:
        s = d.smooth_crossing(sid)
        assert abs(s.n_components - d.n_components) == 1
        assert s.n_crossings == d.n_crossings - 1


def test_smooth_curl_gives_two_circles():
    d = parse_gauss("O1+U1+")
    s = d.smooth_crossing(1)
    assert s.n_components == 2
    assert s.n_crossings == 0


def test_resolve_node_conventions():
    d = parse_pd("V(1,2,1,2)")
    nid = d.node_ids[0]
    pos = d.resolve_node(nid, "positive")
    neg = d.resolve_node(nid, "negative")
    assert pos.n_crossings == 1 and pos.writhe == 1
    assert neg.n_crossings == 1 and neg.writhe == -1
    # switching the positive resolution gives exactly the negative one
    assert pos.switch_crossing(nid) == neg
    sm = d.resolve_node(nid, "smooth")
    assert sm.n_nodes == 0
    assert sm.n_components == 2


def test_resolve_positive_lemniscate_is_curl():
    d = parse_pd("V(1,2,1,2)")
    pos = d.resolve_node(d.node_ids[0], "positive")
    assert pos == parse_gauss("O1+U1+")


def test_equality_ignores_labels_rotation_component_order():
    a = parse_gauss(TREFOIL_GAUSS)
    b = parse_gauss("O7+U9+O4+U7+O9+U4+")
    c = parse_gauss("U3+O1+U2+O3+U1+O2+")  # rotated basepoint
    assert a == b == c
    assert len({a, b, c}) == 1
    two_a = parse_gauss("O1+U1+;O2-U2-")
    two_b = parse_gauss("O5-U5-;O9+U9+")
    assert two_a == two_b


def test_equality_distinguishes_signs():
    a = parse_gauss("O1+U1+")
    b = parse_gauss("O1-U1-")
    assert a != b


def test_braid_closure_trefoil():
    d = braid_closure([1, 1, 1])
    assert d.n_components == 1
    assert d.writhe == 3
    assert d == parse_gauss(TREFOIL_GAUSS)


def test_braid_closure_hopf_and_unlink():
    hopf = braid_closure([1, 1])
    assert hopf.n_components == 2
    assert linking_matrix_total(hopf) == 1
    unlink = braid_closure([], n_strands=2)
    assert unlink.n_components == 2
    assert unlink.n_crossings == 0


def test_braid_closure_negative_and_nodes():
    neg = braid_closure([-1, -1])
    assert linking_matrix_total(neg) == -1
    singular = braid_closure([("node", 1), 1, 1])
    assert singular.n_nodes == 1
    assert singular.n_crossings == 2
    assert singular.n_components == 1


def test_braid_closure_mirror():
    d = braid_closure([1, 1, 1])
    m = d.mirror()
    assert m == braid_closure([-1, -1, -1])
    assert m.writhe == -3


def test_writhe_invariant_under_reidemeister_like_words():
    # sigma1^3 in B2 vs its Markov stabilization in B3
    a = braid_closure([1, 1, 1])
    b = braid_closure([1, 1, 1, 2], n_strands=3)
    assert a.n_components == b.n_components == 1
    assert b.writhe == a.writhe + 1
