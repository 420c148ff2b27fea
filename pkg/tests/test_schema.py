import json

import pytest

from tribranch import (
    MonodromyH1,
    OpenBookSpec,
    PantsPath,
    SchemaError,
    SurfaceSig,
    check_essential,
    construct_outer,
    h1_open_book,
    rank_certificate,
    stabilize,
    standard_decomposition,
    validate_path,
    validate_spec,
)
from tribranch.schema import canonical_json, parse_spec, spec_to_json


def degenerate_spec(g, b, name=""):
    page = SurfaceSig(g, b)
    pd = standard_decomposition(page)
    path = PantsPath(start=pd, moves=[], closure={c: c for c in pd.edges})
    return OpenBookSpec(page=page, monodromy=MonodromyH1.identity(page),
                        pants_path=path, name=name)


def round_trip(spec: OpenBookSpec) -> OpenBookSpec:
    return parse_spec(json.loads(canonical_json(spec_to_json(spec))))


def test_spec_round_trip():
    spec = degenerate_spec(0, 5, name="fixture")
    back = round_trip(spec)
    assert back.page == spec.page
    assert back.monodromy.matrix == spec.monodromy.matrix
    assert back.pants_path.start == spec.pants_path.start
    assert back.pants_path.closure == spec.pants_path.closure
    assert back.name == "fixture"
    assert back.degenerate_path_convention is True


def test_schema_rejects_structural_problems():
    with pytest.raises(SchemaError):
        parse_spec([])
    with pytest.raises(SchemaError):
        parse_spec({"page": {"genus": 0}})  # boundary missing
    with pytest.raises(SchemaError):
        parse_spec({"page": {"genus": 0, "boundary": 3},
                    "monodromy": {"h1_matrix": [[1, 0], [1]]}})  # ragged
    with pytest.raises(SchemaError):
        parse_spec({"page": {"genus": 0, "boundary": True},
                    "monodromy": {"h1_matrix": []}})
    with pytest.raises(SchemaError):
        parse_spec({"page": {"genus": 0, "boundary": 3},
                    "monodromy": {"h1_matrix": [[1.5, 0], [0, 1]]}})


def test_wrong_matrix_size_is_domain_not_schema():
    spec = parse_spec({"page": {"genus": 0, "boundary": 5},
                       "monodromy": {"h1_matrix": [[1, 0], [0, 1]]}})
    report = validate_spec(spec)
    assert "matrix-dimension" in report.codes()


def test_pairing_survives_round_trip():
    from tribranch import A_MOVE, PantsMove, apply_move, enumerate_pairings
    from genutils import inverse_move

    page = SurfaceSig(0, 5)
    pd = standard_decomposition(page)
    mv = PantsMove("c1", "x1", A_MOVE, enumerate_pairings(pd, "c1")[2])
    mid = apply_move(pd, mv)
    inv = inverse_move(pd, mv, mid, "x2")
    final = apply_move(mid, inv)
    from tribranch import find_isomorphism

    path = PantsPath(start=pd, moves=[mv, inv],
                     closure=dict(find_isomorphism(final, pd)[1]))
    spec = OpenBookSpec(page=page, monodromy=MonodromyH1.identity(page),
                        pants_path=path)
    back = round_trip(spec)
    assert [m.to_json() for m in back.pants_path.moves] == [
        m.to_json() for m in spec.pants_path.moves
    ]
    assert validate_spec(back).ok


def test_stabilized_spec_round_trips_with_windings():
    spec = degenerate_spec(0, 5)
    res = stabilize(spec, site=2, extend_path=True)
    assert res.spec.windings is not None
    back = round_trip(res.spec)
    assert back.windings == res.spec.windings
    assert h1_open_book(back) == h1_open_book(res.spec)


def test_stabilized_spec_certifies_end_to_end():
    # Stabilizing a certified book keeps it certified and essential: the
    # windings absorb the boundary-parallel twist and the extended path
    # carries the outer construction through.
    spec = degenerate_spec(0, 5)
    res = stabilize(spec, site=2, extend_path=True)
    assert validate_spec(res.spec).ok
    cert = rank_certificate(res.spec)
    assert cert.verdict == "Certified" and cert.lower_bound == 4
    tc = construct_outer(res.spec)
    report = check_essential(tc, cert)
    assert report.verdict == "Essential"
    # And once more on top.
    res2 = stabilize(res.spec, site=res.spec.page.n_boundary, extend_path=True)
    cert2 = rank_certificate(res2.spec)
    tc2 = construct_outer(res2.spec)
    assert check_essential(tc2, cert2).verdict == "Essential"


def test_curve_permuting_closure_construction():
    # A monodromy that swaps the two parallel curves of this decomposition:
    # the wrap transports page pieces through the closure's vertex map.
    from tribranch import PantsDecomposition, check_local_models, euler_audit, validate_pants

    sig = SurfaceSig(1, 2)
    pd = PantsDecomposition.build(
        ["P0", "P1"],
        {"c1": (("P0", 1), ("P1", 1)), "c2": (("P0", 2), ("P1", 2))},
        {1: ("P0", 3), 2: ("P1", 3)},
    )
    assert validate_pants(sig, pd).ok
    path = PantsPath(start=pd, moves=[], closure={"c1": "c2", "c2": "c1"})
    assert validate_path(path).ok
    spec = OpenBookSpec(page=sig, monodromy=MonodromyH1.identity(sig),
                        pants_path=path)
    tc = construct_outer(spec)
    assert check_local_models(tc).ok
    assert euler_audit(tc).ok
    assert tc.is_connected()
    assert len(tc.circles) == 2 * 2 + 1 * 2
