import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbforge import catalog
from rbforge.braces import brace_from_rb, brace_from_rrb, nilpotent_postgroup, postgroup_to_brace, trivial_brace
from rbforge.groups import build_group
from rbforge.nilfree import NilWord, VerbalWord
from rbforge.operators import RBOperator, enumerate_rb
from rbforge.ybe import (
    ALL_FAMILIES, SUPPLEMENTARY_FAMILIES, LISTED_FAMILIES, FiniteSolution, Matrix2, VerbalSolution,
    abelianization_of, bar_verbal, braid_matrix_difference, check_braid_finite, check_verbal, classify_matrices,
    classify_verbal, matrix_forms, matrix_residue, matrix_ybe_check, sigma_conjugate, solution_from_brace,
    verbal_to_finite,
)

IDENTITY = (1, 0, 0, 0, 1, 0)


def naive_braid(S):
    n = S.n
    for x, y, z in itertools.product(range(n), repeat=3):
        a, b = S(x, y)
        b, c = S(b, z)
        a, b = S(a, b)
        p, q = S(y, z)
        r, p = S(x, p)
        p, q = S(p, q)
        if (a, b, c) != (r, p, q):
            return (x, y, z)
    return None


def rb_braces():
    out = [brace_from_rrb(catalog.z4_operator())]
    for spec in ["S3", "D4"]:
        out += [brace_from_rb(RBOperator(f)) for f in enumerate_rb(build_group(spec))[:6]]
    out += [postgroup_to_brace(nilpotent_postgroup(build_group("Heis3"), 1))]
    return out


# finite solutions


def test_identity_and_swap():
    for n in (1, 3, 5):
        assert check_braid_finite(FiniteSolution.from_function(n, lambda x, y: (x, y))) is None
        assert check_braid_finite(FiniteSolution.from_function(n, lambda x, y: (y, x))) is None


def test_z3_candidate_matches_naive():
    S = FiniteSolution.from_function(3, lambda x, y: (y, (x + y) % 3))
    v = check_braid_finite(S)
    assert (v is None) == (naive_braid(S) is None)
    assert v.witness == naive_braid(S)


@settings(max_examples=100)
@given(st.integers(1, 4), st.data())
def test_vectorised_check_matches_naive(n, data):
    cells = st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)
    S = FiniteSolution(n, data.draw(cells), data.draw(cells))
    v = check_braid_finite(S)
    w = naive_braid(S)
    assert (v is None) == (w is None)
    if v is not None:
        assert v.witness == w


def test_solution_from_trivial_brace():
    G = build_group("S3")
    S = solution_from_brace(trivial_brace(G))
    assert all(S(a, b) == (b, G.prod(G.inv(b), a, b)) for a in G for b in G)
    assert check_braid_finite(S) is None


def test_solutions_from_braces_and_sigma():
    for brace in rb_braces():
        S = solution_from_brace(brace)
        assert check_braid_finite(S) is None
        assert check_braid_finite(sigma_conjugate(S)) is None
        assert sigma_conjugate(sigma_conjugate(S)) == S


def test_sigma_fixed_points():
    ident = FiniteSolution.from_function(4, lambda x, y: (x, y))
    swap = FiniteSolution.from_function(4, lambda x, y: (y, x))
    assert sigma_conjugate(ident) == ident
    assert sigma_conjugate(swap) == swap


@settings(max_examples=100)
@given(st.integers(1, 3), st.data())
def test_sigma_preserves_braid_validity(n, data):
    cells = st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)
    S = FiniteSolution(n, data.draw(cells), data.draw(cells))
    assert (check_braid_finite(S) is None) == (check_braid_finite(sigma_conjugate(S)) is None)


# verbal solutions


def test_verbal_examples():
    assert check_verbal(VerbalSolution.from_tuple(IDENTITY)) is None
    for u, v in itertools.product(range(-3, 4), repeat=2):
        assert check_verbal(VerbalSolution.from_tuple((0, 1, u, 1, 0, v))) is None
    res = check_verbal(VerbalSolution.from_tuple((1, 0, 1, 0, 1, 0)))
    assert res is not None and any(any(c) for c in res.coords)


def test_bar_transform():
    ident = VerbalSolution.from_tuple(IDENTITY)
    assert bar_verbal(ident) == ident
    S = VerbalSolution.from_tuple((0, 0, 2, 1, 0, 0))  # ([y,x]^2, x)
    bar = bar_verbal(S)
    assert bar.as_tuple() == (0, 1, 0, 0, 0, -2)  # (y, [y,x]^-2)
    assert any(f.tag == "(y,[y,x]^u)" and f.match(bar.as_tuple()) == (-2,) for f in LISTED_FAMILIES)
    assert check_verbal(bar) is None


def test_bar_is_sigma_conjugation():
    x, y = NilWord.generator(2, 0), NilWord.generator(2, 1)
    for t in [(1, 2, -1, 0, 1, 2), (2, 1, 0, -1, 0, 1), (0, 1, 3, 1, 0, -2)]:
        S = VerbalSolution.from_tuple(t)
        bar = bar_verbal(S)
        # sigma S sigma (x, y) = swap(S(y, x))
        f, g = S(y, x)
        assert bar(x, y) == (g, f)
        assert bar_verbal(bar) == S


def test_family_matching_examples():
    assert [f.tag for f in LISTED_FAMILIES if f.match((0, 1, 0, 1, 0, 0)) == (0, 0)] == ["(y[y,x]^u,x[y,x]^v)"]
    assert LISTED_FAMILIES[0].match(IDENTITY) == ()
    assert len(LISTED_FAMILIES) == 16
    assert len({f.tag for f in ALL_FAMILIES}) == 20


@pytest.mark.parametrize("fam", ALL_FAMILIES, ids=lambda f: f.tag)
def test_family_soundness(fam):
    for params, S in fam.sweep(3):
        assert check_verbal(S) is None, (fam.tag, params)
        assert fam.match(S.as_tuple()) == params


def test_family_b_parity():
    fam = SUPPLEMENTARY_FAMILIES[2]
    assert fam.instantiate(1, 0) is None  # u(1 - uv) = 1 is odd
    assert fam.instantiate(1, 1).as_tuple() == (0, 1, 0, 1, 0, 0)


@pytest.fixture(scope="module")
def box2():
    return classify_verbal(2, 3, LISTED_FAMILIES, workers=1)


def test_listed_families_miss_passing_tuples(box2):
    report = box2
    assert len(report.passing) == 140
    assert report.failing_family_instances == []
    assert len(report.unmatched_passing) == 18
    assert (2, 1, 0, -1, 0, 1) in report.unmatched_passing
    for t in report.unmatched_passing:
        assert check_verbal(VerbalSolution.from_tuple(t)) is None


def test_extended_families_are_complete_in_the_box():
    report = classify_verbal(2, 3, ALL_FAMILIES, workers=1)
    assert report.clean
    data = report.to_json()
    assert set(data) == {"box", "families", "unmatched_passing", "failing_family_instances"}
    assert data["box"]["passing"] == 140


def test_classification_is_worker_independent():
    a = classify_verbal(1, 2, LISTED_FAMILIES, workers=1).to_json()
    b = classify_verbal(1, 2, LISTED_FAMILIES, workers=3).to_json()
    assert a == b


# abelianisation and matrices


def test_abelianization():
    assert abelianization_of(VerbalSolution.from_tuple(IDENTITY)) == Matrix2(1, 0, 0, 1)
    assert abelianization_of(VerbalSolution.from_tuple((0, 1, 2, 1, 0, -1))) == Matrix2(0, 1, 1, 0)


def test_passing_tuples_abelianise_to_solutions(box2):
    for t in box2.passing:
        assert matrix_ybe_check(abelianization_of(VerbalSolution.from_tuple(t))) is None


def test_matrix_examples():
    assert matrix_ybe_check(Matrix2(1, 0, 0, 1)) is None
    assert matrix_ybe_check(Matrix2(0, 1, 1, 0)) is None
    res = matrix_ybe_check(Matrix2(1, 1, 1, 1), 5)
    assert res is not None and res[0][1] == 1


@settings(max_examples=300)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_residue_formula_matches_products(a, b, c, d):
    M = Matrix2(a, b, c, d)
    assert matrix_residue(M) == braid_matrix_difference(M)
    assert matrix_residue(M, 7) == braid_matrix_difference(M, 7)


@pytest.mark.parametrize("q,passing", [(5, 68), (7, 136)])
def test_prime_classification(q, passing):
    report = classify_matrices(q=q)
    assert report.total == q ** 4
    assert report.equal
    # three q^2-element forms meeting pairwise and triply in the q - 1 matrices (0, b; c, 0) with bc = 1
    assert len(report.passing) == passing == 3 * q * q - 2 * (q - 1) + 1
    assert report.counts["(1, 0; 0, 1)"] == 1


def test_integer_box_classification():
    report = classify_matrices(box=3)
    assert report.equal


def test_composite_modulus_is_not_asserted():
    report = classify_matrices(q=4)
    assert not report.assert_equality
    assert report.clean
    assert not report.equal  # zero divisors give extra solutions
    with pytest.raises(ValueError):
        classify_matrices()


def test_matrix_forms():
    assert matrix_forms(Matrix2(0, 1, 1, 0)) == ["(1-bc, b; c, 0)", "(0, b; c, 1-bc)", "(0, b; c, 0)"]
    assert "(0, b; c, 0)" in matrix_forms(Matrix2(0, 2, 3, 0))
    assert matrix_forms(Matrix2(1, 0, 0, 1)) == ["(1, 0; 0, 1)"]


# verbal solutions on finite groups


def test_verbal_to_finite_examples():
    H = build_group("Heis3")
    ident = verbal_to_finite(VerbalSolution.from_tuple(IDENTITY), H)
    assert ident == FiniteSolution.from_function(27, lambda x, y: (x, y))
    S = verbal_to_finite(VerbalSolution.from_tuple((1, 1, 1, 0, 0, 0)), H)
    assert check_braid_finite(S) is None
    with pytest.raises(ValueError):
        verbal_to_finite(VerbalSolution.from_tuple(IDENTITY), build_group("S3"))


@pytest.mark.parametrize("spec", ["Heis3", "D4", "Q8"])
def test_families_on_finite_groups(spec):
    G = build_group(spec)
    for fam in ALL_FAMILIES:
        for params, S in fam.sweep(1):
            assert check_braid_finite(verbal_to_finite(S, G)) is None, (fam.tag, params)


def test_unmatched_tuples_work_on_finite_groups(box2):
    G = build_group("Heis3")
    for t in box2.unmatched_passing[:6]:
        assert check_braid_finite(verbal_to_finite(VerbalSolution.from_tuple(t), G)) is None


def test_failing_tuple_fails_somewhere():
    S = VerbalSolution.from_tuple((1, 0, 1, 0, 1, 0))
    assert check_verbal(S) is not None
    assert check_braid_finite(verbal_to_finite(S, build_group("Heis3"))) is not None
