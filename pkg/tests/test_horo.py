import pytest
from fractions import Fraction as F

from horokit import classify as cl, horo
from horokit.errors import NotAColor, NotComplete, NotLocallyFactorial
from horokit.horo import ColoredCone, ColoredFan, HomSpaceData
from horokit.rootdata import (GroupFactor, GroupProduct, Root, SL,
                              TORUS_FACTOR, TRIVIAL_FACTOR)


def w3_spec():
    G = GroupProduct((SL(3), TRIVIAL_FACTOR, TORUS_FACTOR, TORUS_FACTOR))
    return cl.X1Spec(G, Root(0, 1), (Root(1, 0), Root(2, 0), Root(3, 0)), (0, 2, 3))


def case1_spec_nontrivial():
    G = GroupProduct((SL(6), TRIVIAL_FACTOR, TORUS_FACTOR, SL(2)))
    return cl.X1Spec(G, Root(0, 3), (Root(1, 0), Root(2, 0), Root(3, 1)), (0, 1, 2))


def test_sigma():
    X = cl.build_x1(case1_spec_nontrivial())
    hs = X.hs
    assert horo.sigma(hs, Root(0, 3)) == (1, 2)     # beta -> (a_1, a_2)
    assert horo.sigma(hs, Root(3, 1)) == (0, 1)     # alpha_2 -> e_2
    with pytest.raises(NotAColor):
        horo.sigma(hs, Root(0, 1))
    # rank-zero data: empty sigma vectors
    G = GroupProduct((SL(3),))
    hs0 = HomSpaceData(G, frozenset({Root(0, 1), Root(0, 2)}), ())
    assert horo.sigma(hs0, Root(0, 1)) == ()


def test_validate_fan():
    X = cl.build_x1(w3_spec())
    assert horo.validate_fan(X.hs, X.fan) == []
    # drop a face of a maximal cone
    cones = [c for c in X.fan.cones if c.generators != ((1, 0),)]
    bad = ColoredFan(tuple(cones))
    issues = horo.validate_fan(X.hs, bad)
    assert any("FaceClosureViolation" in s for s in issues)
    # a cone with a line
    hs = X.hs
    line = ColoredFan((ColoredCone((), frozenset()),
                       ColoredCone(((1, 0), (-1, 0)), frozenset()),
                       ColoredCone(((1, 0),), frozenset()),
                       ColoredCone(((-1, 0),), frozenset())))
    issues = horo.validate_fan(hs, line)
    assert any("LineViolation" in s for s in issues)


def test_is_complete():
    X = cl.build_x1(w3_spec())
    assert horo.is_complete(X.hs, X.fan)
    zero_only = ColoredFan((ColoredCone((), frozenset()),))
    assert not horo.is_complete(X.hs, zero_only)
    X2 = cl.build_x2(_case2_spec())
    assert horo.is_complete(X2.hs, X2.fan)
    # rank zero: the one-cone fan is complete
    G = GroupProduct((SL(3),))
    hs0 = HomSpaceData(G, frozenset({Root(0, 1), Root(0, 2)}), ())
    assert horo.is_complete(hs0, ColoredFan((ColoredCone((), frozenset()),)))


def _case2_spec():
    from horokit.rootdata import Spin
    G = GroupProduct((TRIVIAL_FACTOR, SL(2), Spin(7)))
    return cl.X2Spec(G, (Root(0, 0), Root(1, 1), Root(2, 1), Root(2, 3)), (0, 2))


def test_is_locally_factorial():
    X = cl.build_x1(w3_spec())
    assert horo.is_locally_factorial(X.hs, X.fan)
    hs = X.hs
    # index-two cone
    fan = ColoredFan((ColoredCone((), frozenset()),
                      ColoredCone(((1, 0),), frozenset()),
                      ColoredCone(((1, 2),), frozenset()),
                      ColoredCone(((1, 0), (1, 2)), frozenset())))
    assert not horo.is_locally_factorial(hs, fan)
    # two colors on one generator: sigma is not injective into the basis
    G = GroupProduct((SL(3),))
    w1 = G.fundamental_weight(Root(0, 1))
    w2 = G.fundamental_weight(Root(0, 2))
    basis = (tuple(a + b for a, b in zip(w1, w2)),)  # pairs 1 with both coroots
    hs2 = HomSpaceData(G, frozenset({Root(0, 1), Root(0, 2)}), basis)
    assert horo.sigma(hs2, Root(0, 1)) == horo.sigma(hs2, Root(0, 2)) == (1,)
    fan2 = ColoredFan((ColoredCone((), frozenset()),
                       ColoredCone(((1,),), frozenset({Root(0, 1), Root(0, 2)}))))
    assert not horo.is_locally_factorial(hs2, fan2)


def test_picard_rank():
    X = cl.build_x1(case1_spec_nontrivial())
    assert X.picard_rank() == 2  # (3 - 2) + 1
    # rank zero, two colors off the fan
    G = GroupProduct((SL(3),))
    hs0 = HomSpaceData(G, frozenset({Root(0, 1), Root(0, 2)}), ())
    fan0 = ColoredFan((ColoredCone((), frozenset()),))
    assert horo.picard_rank(hs0, fan0) == 2
    # toric projective line
    GT = GroupProduct((TORUS_FACTOR,))
    hs1 = HomSpaceData(GT, frozenset(), ((F(1),),))
    p1 = ColoredFan((ColoredCone((), frozenset()),
                     ColoredCone(((1,),), frozenset()),
                     ColoredCone(((-1,),), frozenset())))
    assert horo.picard_rank(hs1, p1) == 1
    with pytest.raises(NotComplete):
        horo.picard_rank(hs1, ColoredFan((ColoredCone((), frozenset()),)))
    X = cl.build_x1(w3_spec())
    bad = ColoredFan((ColoredCone((), frozenset()),
                      ColoredCone(((1, 0),), frozenset()),
                      ColoredCone(((1, 2),), frozenset()),
                      ColoredCone(((1, 0), (1, 2)), frozenset())))
    with pytest.raises(NotLocallyFactorial):
        horo.picard_rank(X.hs, bad)


def test_is_smooth_variety():
    # locally factorial toric data is smooth
    GT = GroupProduct((TORUS_FACTOR,))
    hs1 = HomSpaceData(GT, frozenset(), ((F(1),),))
    p1 = ColoredFan((ColoredCone((), frozenset()),
                     ColoredCone(((1,),), frozenset()),
                     ColoredCone(((-1,),), frozenset())))
    assert horo.is_smooth_variety(hs1, p1)
    assert cl.build_x1(w3_spec()).smooth()
    # a quadruple violating the block condition: lone root deep in a
    # non-A/C factor
    G = GroupProduct((GroupFactor("B", 4), TRIVIAL_FACTOR))
    spec = cl.X1Spec(G, Root(0, 1), (Root(1, 0), Root(0, 4)), (0, 1))
    X = cl.build_x1(spec)
    assert not X.smooth()


def test_colored_faces_revalidate():
    X = cl.build_x1(case1_spec_nontrivial())
    for cone in X.fan.cones:
        for face in horo.cone_faces(cone.generators):
            cf = horo.colored_face(X.hs, cone, face)
            assert horo.cone_key(X.hs, cf) in {horo.cone_key(X.hs, c)
                                               for c in X.fan.cones}


def test_picard_rank_basis_relabel_invariant():
    spec = case1_spec_nontrivial()
    X = cl.build_x1(spec)
    # swap the two M basis vectors and permute every fan vector to match
    hs2 = HomSpaceData(X.hs.G, X.hs.R, (X.hs.M_basis[1], X.hs.M_basis[0]))
    def flip(v):
        return (v[1], v[0])
    cones = tuple(ColoredCone(tuple(flip(g) for g in c.generators), c.colors)
                  for c in X.fan.cones)
    fan2 = ColoredFan(cones)
    assert horo.picard_rank(hs2, fan2) == X.picard_rank()
    assert horo.is_smooth_variety(hs2, fan2) == X.smooth()


def test_case_detect_round_trip():
    spec = case1_spec_nontrivial()
    X = cl.build_x1(spec)
    shape = horo.case_detect(X.hs, X.fan)
    assert isinstance(shape, horo.Case1Shape)
    assert shape.a == (1, 2) and shape.beta == Root(0, 3)
    w3 = cl.build_x1(w3_spec())
    s3 = horo.case_detect(w3.hs, w3.fan)
    assert isinstance(s3, horo.Case1Shape) and s3.a == (2, 3)
    spec2 = _case2_spec()
    X2 = cl.build_x2(spec2)
    s2 = horo.case_detect(X2.hs, X2.fan)
    assert isinstance(s2, horo.Case2Shape)
    assert (s2.r, s2.s, s2.a) == (1, 1, (2,))
    # rank 0
    G = GroupProduct((SL(3),))
    hs0 = HomSpaceData(G, frozenset({Root(0, 1), Root(0, 2)}), ())
    fan0 = ColoredFan((ColoredCone((), frozenset()),))
    assert isinstance(horo.case_detect(hs0, fan0), horo.Case0)
