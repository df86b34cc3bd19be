import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbforge import catalog
from rbforge.braces import (
    PostGroup, SkewBrace, associator, associator_identity_check, brace_from_rb, brace_from_rrb,
    brace_hom_preservation_check, brace_to_postgroup, check_brace, check_postgroup, check_two_sided,
    conjugation_postgroup, is_homomorphic_postgroup, is_lambda_homomorphic, lambda_of, nilpotent_postgroup,
    postgroup_to_brace, rrb_to_postgroup, trivial_brace, trivial_postgroup,
)
from rbforge.errors import IntertwiningError, InvalidBraceError, InvalidOperatorError, InvalidPostGroupError
from rbforge.groups import CarrierMap, FiniteGroup, build_group, find_isomorphism, homomorphisms, identify
from rbforge.operators import RBOperator, enumerate_rb


def all_rb_braces(spec):
    G = build_group(spec)
    return [brace_from_rb(RBOperator(f)) for f in enumerate_rb(G)]


def test_trivial_brace():
    for spec in ["Z4", "S3", "Q8"]:
        G = build_group(spec)
        assert check_brace(G, G) is None
        assert trivial_brace(G).is_trivial()


def test_z4_brace():
    brace = brace_from_rrb(catalog.z4_operator())
    assert check_brace(brace.dot, brace.circ) is None
    assert not brace.is_trivial()
    assert find_isomorphism(brace.circ, build_group("Z2xZ2")) is not None
    assert brace.circ_type() == "Z2xZ2"


def test_shifted_identity_is_rejected():
    Z4 = build_group("Z4")
    shifted = FiniteGroup([[(a + b - 1) % 4 for b in range(4)] for a in range(4)])
    assert shifted.identity == 1
    v = check_brace(Z4, shifted)
    assert v is not None and v.lhs != v.rhs
    a, b, c = v.witness
    o, d = shifted.table, Z4.table
    assert o[a][d[b][c]] == v.lhs
    assert d[d[o[a][b]][Z4.inverse[a]]][o[a][c]] == v.rhs
    with pytest.raises(InvalidBraceError):
        SkewBrace(Z4, shifted)


def test_two_sided_check_agrees_with_definition():
    for brace in [brace_from_rrb(catalog.z4_operator()), brace_from_rb(catalog.s3_operator()),
                  trivial_brace(build_group("S3"))]:
        d, o = brace.dot, brace.circ.table
        direct = all(o[d.mul(b, c)][a] == d.prod(o[b][a], d.inv(a), o[c][a]) for a in d for b in d for c in d)
        assert (check_two_sided(brace.dot, brace.circ) is None) == direct
    assert check_two_sided(build_group("S3"), build_group("S3")) is None


@pytest.mark.parametrize("spec", ["Z2", "Z3", "Z4", "Z2xZ2", "Z6", "Z2xZ4"])
def test_rb_braces_on_abelian_groups_are_trivial(spec):
    assert all(b.is_trivial() for b in all_rb_braces(spec))


def test_constant_operator_gives_trivial_brace():
    for spec in ["S3", "D4", "Q8"]:
        G = build_group(spec)
        assert brace_from_rb(RBOperator(CarrierMap.constant(G, G, G.identity))).is_trivial()


def test_s3_operator_brace():
    brace = brace_from_rb(catalog.s3_operator())
    assert brace.circ_type() == "Z6"
    assert sorted(identify(b.circ) for b in all_rb_braces("S3")) == ["S3", "S3"] + ["Z6"] * 6


def test_brace_constructors_need_validated_weight_one():
    B = RBOperator(CarrierMap.constant(build_group("S3"), build_group("S3"), 0), -1)
    with pytest.raises(InvalidOperatorError):
        brace_from_rb(B)


def test_lambda_map():
    G = build_group("S3")
    lam = lambda_of(trivial_brace(G))
    assert all(lam.perms[a] == tuple(G) for a in G)
    assert is_lambda_homomorphic(trivial_brace(G))
    brace = brace_from_rrb(catalog.z4_operator())
    assert lambda_of(brace).perms[1] == (0, 3, 2, 1)
    assert is_lambda_homomorphic(brace)


def test_brace_postgroup_round_trip():
    braces = [brace_from_rrb(catalog.z4_operator()), trivial_brace(build_group("Q8"))]
    braces += all_rb_braces("S3") + all_rb_braces("D4")[:10]
    for brace in braces:
        pg = brace_to_postgroup(brace)
        assert postgroup_to_brace(pg) == brace
        assert brace_to_postgroup(postgroup_to_brace(pg)) == pg


def test_trivial_brace_gives_trivial_postgroup():
    G = build_group("D4")
    assert brace_to_postgroup(trivial_brace(G)) == trivial_postgroup(G)


def test_rrb_postgroup_consistency():
    Q = catalog.z4_operator()
    assert rrb_to_postgroup(Q) == brace_to_postgroup(brace_from_rrb(Q))


def test_conjugation_postgroup_on_s3():
    pg = conjugation_postgroup(build_group("S3"))
    assert check_postgroup(pg.dot, pg.tri) is None
    assert not is_homomorphic_postgroup(pg)
    assert not is_lambda_homomorphic(postgroup_to_brace(pg))


def test_postgroup_check_reports_failures():
    G = build_group("Z3")
    collapsing = [[0, 0, 0]] * 3
    v = check_postgroup(G, collapsing)
    assert v.witness == (0, 0, 1)
    with pytest.raises(InvalidPostGroupError):
        PostGroup(G, collapsing)
    # translations are automorphisms but the composition law fails
    neg = [(0, 1, 2), (0, 2, 1), (0, 2, 1)]
    assert check_postgroup(G, neg) is not None


def test_right_distributivity_only_on_the_trivial_group():
    # e |> c = c in every post-group, so (e e) |> c = c c forces c = e
    assert is_homomorphic_postgroup(trivial_postgroup(build_group("Z1")))
    for spec in ["Z2", "S3", "Heis3"]:
        assert not is_homomorphic_postgroup(trivial_postgroup(build_group(spec)))
        assert not is_homomorphic_postgroup(conjugation_postgroup(build_group(spec)))


def test_associator_check():
    assert associator_identity_check(trivial_postgroup(build_group("Z1"))) is None
    H = build_group("Heis3")
    for n in (1, 2):
        pg = nilpotent_postgroup(H, n)
        # not homomorphic, so the default check does not apply
        assert associator_identity_check(pg) is None
        v = associator_identity_check(pg, unconditional=True)
        assert v is not None
        # in this family [a, b, c] = [c, a]^n, while a |> c = c [c, a]^n
        for a in H:
            for b in H:
                for c in list(H)[:5]:
                    assert associator(pg, a, b, c) == H.pow(H.commutator(c, a), n)


@pytest.mark.parametrize("spec", ["Heis3", "D4", "Q8"])
@pytest.mark.parametrize("n", [1, 2, 3, -1])
def test_nilpotent_postgroup(spec, n):
    G = build_group(spec)
    pg = nilpotent_postgroup(G, n)
    brace = postgroup_to_brace(pg)
    circ = brace.circ
    for a in G:
        for b in G:
            assert circ.mul(a, b) == G.prod(a, b, G.pow(G.commutator(b, a), n))
            assert circ.commutator(a, b) == G.pow(G.commutator(b, a), 2 * n - 1)
    assert circ.is_two_step_nilpotent
    assert is_lambda_homomorphic(brace)


def test_heis3_n2_is_abelian():
    G = build_group("Heis3")
    circ = postgroup_to_brace(nilpotent_postgroup(G, 2)).circ
    assert circ.is_abelian
    assert identify(circ) == "Z3xZ3xZ3"
    assert find_isomorphism(circ, G) is None
    assert identify(postgroup_to_brace(nilpotent_postgroup(G, 1)).circ) == "Heis3"


def test_nilpotent_postgroup_preconditions():
    with pytest.raises(ValueError):
        nilpotent_postgroup(build_group("Heis3"), 0)
    with pytest.raises(ValueError):
        nilpotent_postgroup(build_group("S3"), 1)
    for n in (1, 2, 5):
        pg = nilpotent_postgroup(build_group("Z2xZ4"), n)
        assert postgroup_to_brace(pg).is_trivial()


def test_hom_preservation_identity():
    B = catalog.s3_operator()
    assert brace_hom_preservation_check(CarrierMap.identity(B.group), B, B) is None


@pytest.mark.parametrize("specs", [("Z4", "Z4"), ("S3", "S3"), ("S3", "Z2"), ("Z4", "Z2xZ2")])
def test_hom_preservation_on_intertwining_maps(specs):
    G, H = build_group(specs[0]), build_group(specs[1])
    checked = 0
    for bg in enumerate_rb(G):
        for bh in enumerate_rb(H):
            BG, BH = RBOperator(bg), RBOperator(bh)
            for f in homomorphisms(G, H):
                if all(f(BG(g)) == BH(f(g)) for g in G):
                    assert brace_hom_preservation_check(f, BG, BH) is None
                    checked += 1
    assert checked > 0


def test_hom_preservation_error_path():
    B = catalog.s3_operator()
    G = B.group
    sign = homomorphisms(G, G)
    bad = next(f for f in sign if any(f(B(g)) != B(f(g)) for g in G))
    with pytest.raises(IntertwiningError):
        brace_hom_preservation_check(bad, B, B)
    with pytest.raises(IntertwiningError):
        brace_hom_preservation_check(CarrierMap(G, G, (0, 2, 1, 3, 4, 5)), B, B)


def test_json_round_trip():
    brace = brace_from_rrb(catalog.z4_operator())
    assert SkewBrace.from_json(brace.to_json()) == brace
    pg = brace_to_postgroup(brace)
    assert PostGroup.from_json(pg.to_json()) == pg


@settings(max_examples=40)
@given(st.sampled_from(["S3", "D4", "Q8", "Z2xZ2", "Z6"]), st.data())
def test_round_trip_property(spec, data):
    ops = enumerate_rb(build_group(spec))
    brace = brace_from_rb(RBOperator(data.draw(st.sampled_from(ops))))
    pg = brace_to_postgroup(brace)
    assert check_postgroup(pg.dot, pg.tri) is None
    assert postgroup_to_brace(pg) == brace
