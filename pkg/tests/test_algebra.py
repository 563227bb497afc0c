"""Homology, presentations, simplification, coset enumeration, parsing."""

import random

import pytest

from fakesurfaces.skeleta import enumerate_skeleta, skeleton_by_index
from fakesurfaces.surfaces import Surface, enumerate_surfaces
from fakesurfaces.algebra import (
    Presentation,
    PresentationSyntaxError,
    Pi1Verdict,
    bp_complexity,
    boundary_matrix,
    collapse_words,
    coset_enumerate,
    cyclic_reduce,
    det_bareiss,
    det_cofactor,
    format_presentation,
    free_reduce,
    is_acyclic,
    parse_presentation,
    pi1_trivial,
    presentation_of,
    smith_normal_form,
    spanning_tree,
    tietze_simplify,
)

ABALONE = ((1, 2, 2, 1, -2), (1,))


def test_spanning_tree_examples():
    assert spanning_tree(skeleton_by_index(1, 1)) == ()
    assert spanning_tree(skeleton_by_index(2, 1)) == (2,)
    for t in (2, 3, 4):
        for s in enumerate_skeleta(t):
            assert len(spanning_tree(s)) == t - 1


def test_collapse_words_matches_documented_renumbering():
    # complexity-2 sample: removing tree edge 2 shifts larger labels down
    sample = [[4, 2, -1, -1, -2, 3, 2, 1, -3], [2, -3], [4]]
    assert collapse_words(sample, [2]) == (
        (3, -1, -1, 2, 1, -2),
        (-2,),
        (3,),
    )


def test_boundary_matrix_abalone():
    s = skeleton_by_index(1, 1)
    m = boundary_matrix(Surface(s, ABALONE))
    assert m == [[2, 1], [1, 0]]
    assert det_bareiss(m) == -1
    assert is_acyclic(Surface(s, ABALONE))


def test_boundary_column_sums_bounded():
    s = skeleton_by_index(2, 1)
    for cfg, words in enumerate_surfaces(s):
        m = boundary_matrix(Surface(s, words))
        for j in range(len(m[0])):
            assert sum(abs(m[i][j]) for i in range(len(m))) <= 3


def test_det_oracles_agree_random():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(0, 5)
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        assert det_bareiss(m) == det_cofactor(m)


def test_det_oracles_agree_on_boundary_maps():
    for t in (1, 2):
        for s in enumerate_skeleta(t):
            for cfg, words in enumerate_surfaces(s):
                m = boundary_matrix(Surface(s, words))
                assert det_bareiss(m) == det_cofactor(m)


def test_acyclicity_matches_smith_form():
    for s in enumerate_skeleta(2):
        for cfg, words in enumerate_surfaces(s):
            f = Surface(s, words)
            m = boundary_matrix(f)
            unimodular = abs(det_bareiss(m)) == 1
            assert unimodular == (smith_normal_form(m) == [1] * len(m))
            assert unimodular == is_acyclic(f)


def test_even_exponent_sums_are_never_acyclic():
    # if every word has even exponent sum in some edge, the determinant
    # column is even, so |det| != 1
    s = skeleton_by_index(1, 1)
    for cfg, words in enumerate_surfaces(s):
        f = Surface(s, words)
        m = boundary_matrix(f)
        if any(all(m[i][j] % 2 == 0 for i in range(len(m))) for j in range(len(m[0]))):
            assert not is_acyclic(f)


def test_presentation_of_abalone():
    s = skeleton_by_index(1, 1)
    p = presentation_of(Surface(s, ABALONE))
    assert p.ngens == 2
    assert p.relators == ((1, 2, 2, 1, -2), (1,))


def test_presentation_balanced():
    for t in (1, 2, 3):
        for s in enumerate_skeleta(t):
            cfg, words = next(iter(enumerate_surfaces(s)))
            p = presentation_of(Surface(s, words))
            assert p.ngens == t + 1
            assert len(p.relators) == t + 1


def test_free_and_cyclic_reduction():
    assert free_reduce((1, -1, 2)) == (2,)
    assert free_reduce((1, 2, -2, -1)) == ()
    assert cyclic_reduce((1, 2, -1)) == (2,)
    assert cyclic_reduce((1, 2, 3, -2, -1)) == (3,)


def test_tietze_trivializes_abalone():
    s = skeleton_by_index(1, 1)
    p = tietze_simplify(presentation_of(Surface(s, ABALONE)))
    assert p.ngens == 0 and p.relators == ()


def test_tietze_single_relator():
    p = tietze_simplify(Presentation(1, ((1,),)))
    assert p.ngens == 0


def test_tietze_idempotent():
    cases = [
        Presentation(2, ((1, 2, 1, -2, -1, -2),)),
        parse_presentation("x,y|x^5y^-3,y^3(xy)^-2"),
        Presentation(1, ((1, 1, 1),)),
    ]
    for p in cases:
        once = tietze_simplify(p)
        assert tietze_simplify(once) == once


def test_tietze_preserves_group():
    # verdicts agree before and after simplification when both complete
    for text in ("a|a^5", "a,b|a^2,b^3,(ab)^2", "x,y|x^5y^-3,y^3(xy)^-2"):
        p = parse_presentation(text)
        v1 = coset_enumerate(p)
        v2 = coset_enumerate(tietze_simplify(p))
        assert v1.status == v2.status and v1.order == v2.order


def test_coset_enumeration_known_orders():
    assert coset_enumerate(parse_presentation("a|a^5")).order == 5
    assert coset_enumerate(parse_presentation("a,b|a^2,b^3,(ab)^2")).order == 6
    assert coset_enumerate(parse_presentation("i,j|i^4,i^2j^-2,j^-1iji")).order == 8
    v = coset_enumerate(parse_presentation("a,b|a^3,b^3,(ab)^3,(aB)^3"), cap=100000)
    assert v.order == 27  # Heisenberg group over F3


def test_binary_icosahedral_never_trivial():
    p = parse_presentation("x,y|x^5y^-3,y^3(xy)^-2")
    v = coset_enumerate(p)
    assert v.status == "finite" and v.order == 120
    assert not v.proven_trivial
    # simplification must not fake triviality either
    v2 = coset_enumerate(tietze_simplify(p))
    assert not v2.proven_trivial


def test_cap_exhaustion_is_inconclusive():
    assert coset_enumerate(Presentation(1, ()), cap=40).status == "inconclusive"
    assert coset_enumerate(parse_presentation("a,b|b"), cap=40).status == "inconclusive"
    # infinite cyclic quotient: never closes
    assert coset_enumerate(parse_presentation("a,b|abAB"), cap=50).status == "inconclusive"


def test_pi1_trivial_on_complexity1():
    s = skeleton_by_index(1, 1)
    for cfg, words in enumerate_surfaces(s):
        f = Surface(s, words)
        if is_acyclic(f):
            assert pi1_trivial(f).proven_trivial


def test_verdict_constructors():
    assert Pi1Verdict.trivial(1).proven_trivial
    assert Pi1Verdict.finite(120, 400).order == 120
    assert Pi1Verdict.inconclusive(10).order is None


def test_bp_complexity_examples():
    assert bp_complexity(parse_presentation("x|x^3")) == 1
    assert bp_complexity(parse_presentation("x,y|xyxy^-1x^-1y^-1")) == 3
    assert bp_complexity(parse_presentation("x|x^2")) == 0


def test_bp_complexity_more_hand_checks():
    # 2L - 4k - max occurrences + 2 against independent hand counts
    cases = [
        ("x|x^4", 2 * 4 - 4 - 4 + 2),
        ("x|x^5", 2 * 5 - 4 - 5 + 2),
        ("x,y|x^2,y^2", 2 * 4 - 8 - 2 + 2),
        ("x,y|x^3,y^2", 2 * 5 - 8 - 3 + 2),
        ("x,y|xyXY,x^2", 2 * 6 - 8 - 4 + 2),
        ("a,b,c|abc,bca,cab", 2 * 9 - 12 - 3 + 2),
        ("x,y|x^5y^-3,y^3(xy)^-2", 2 * 15 - 8 - 8 + 2),  # n_x=7, n_y=8
    ]
    for text, want in cases:
        assert bp_complexity(parse_presentation(text)) == want


def test_bp_complexity_precondition():
    with pytest.raises(ValueError, match="y"):
        bp_complexity(parse_presentation("x,y|x^3"))
    with pytest.raises(ValueError, match="y"):
        bp_complexity(parse_presentation("x,y|x^2,yx"))


def test_parse_presentation_examples():
    p = parse_presentation("x,y|xyXY")
    assert p.ngens == 2 and p.relators == ((1, 2, -1, -2),)
    p = parse_presentation("a|a^5")
    assert p.relators == ((1, 1, 1, 1, 1),)
    p = parse_presentation("x,y|x^5y^-3,y^3(xy)^-2")
    assert len(p.relators) == 2
    assert p.relators[1] == (2, 2, 2, -2, -1, -2, -1)


def test_parse_whitespace_and_round_trip():
    texts = ["x,y| x y X Y", "a | a^5", "x,y|x^5 y^-3, y^3 (x y)^-2"]
    for text in texts:
        p = parse_presentation(text)
        q = parse_presentation(format_presentation(p))
        assert q.relators == p.relators and q.ngens == p.ngens


def test_parse_errors_have_positions():
    for bad in ("x,y|", "x|x^0", "x|(xy", "x|z", "|x"):
        with pytest.raises((PresentationSyntaxError, ValueError)):
            parse_presentation(bad)
    try:
        parse_presentation("x|x^")
    except PresentationSyntaxError as e:
        assert e.pos >= 0


def test_bing_house_boundary_unimodular_by_both_oracles():
    s = skeleton_by_index(2, 1)
    bing = Surface(s, ((3, -1, -3, 2, -1, -2, -4, 2, -3, -4), (4,), (-1,)))
    m = boundary_matrix(bing)
    assert len(m) == 3 and len(m[0]) == 3
    assert abs(det_bareiss(m)) == 1
    assert det_bareiss(m) == det_cofactor(m)
