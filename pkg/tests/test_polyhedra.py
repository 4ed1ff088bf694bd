import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from horokit import polyhedra as ph
from horokit.errors import EmptyPolytope, UnboundedPolyhedron
from horokit.linalg import det_int, int_rows

SIMPLEX2 = ph.InequalitySystem(((1, 0), (0, 1), (-1, -1)), (0, 0, -1))


def test_polytope_dim_examples():
    assert ph.polytope_dim(SIMPLEX2) == 2
    assert ph.polytope_dim(ph.InequalitySystem(((1,), (-1,)), (0, 0))) == 0
    assert ph.polytope_dim(ph.InequalitySystem(((1,), (-1,)), (1, 0))) == -1


def test_vertices_examples():
    assert ph.vertices(SIMPLEX2) == [(F(0), F(0)), (F(0), F(1)), (F(1), F(0))]
    # the eps = 0 member of the (0,1,2) family is the unit simplex
    fam = ph.InequalitySystem(((1, 0), (0, 1), (-1, -1), (1, 2)),
                              (0, 0, -1, -1))
    assert ph.vertices(fam) == [(F(0), F(0)), (F(0), F(1)), (F(1), F(0))]
    # at eps = 2 the cut polytope is a triangle (oracle-computed; this is
    # the corrected value for the family a = (0, 1, 2))
    fam2 = ph.InequalitySystem(((1, 0), (0, 1), (-1, -1), (1, 2)),
                               (0, 0, -1, 1))
    assert ph.vertices(fam2) == [(F(0), F(1, 2)), (F(0), F(1)), (F(1), F(0))]
    with pytest.raises(UnboundedPolyhedron):
        ph.vertices(ph.InequalitySystem(((1, 0), (0, 1)), (0, 0)))


def test_face_lattice_examples():
    faces = ph.face_lattice(SIMPLEX2)
    assert len(faces) == 7
    assert sorted(f.dim for f in faces) == [0, 0, 0, 1, 1, 1, 2]
    seg = ph.InequalitySystem(((1,), (-1,)), (0, -1))
    assert len(ph.face_lattice(seg)) == 3
    # eps = 3/2 member of the (0,1,2) family: a quadrilateral, 9 faces
    # (oracle-computed; 1 + 4 + 4)
    fam = ph.InequalitySystem(((1, 0), (0, 1), (-1, -1), (1, 2)),
                              (0, 0, -1, F(1, 2)))
    faces = ph.face_lattice(fam)
    assert len(faces) == 9
    assert sorted(f.dim for f in faces) == [0, 0, 0, 0, 1, 1, 1, 1, 2]
    with pytest.raises(EmptyPolytope):
        ph.face_lattice(ph.InequalitySystem(((1,), (-1,)), (1, 0)))


def test_face_lattice_graded_and_vertices_consistent():
    systems = [
        SIMPLEX2,
        ph.InequalitySystem(((1, 0), (0, 1), (-1, -1), (1, 2)), (0, 0, -1, F(1, 2))),
        ph.InequalitySystem(((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)),
                            (0, 0, 0, -1)),
    ]
    for S in systems:
        faces = ph.face_lattice(S)
        verts = ph.vertices(S)
        by_dim = {}
        for f in faces:
            by_dim.setdefault(f.dim, []).append(f)
        assert len(by_dim.get(0, [])) == len(verts)
        top = max(by_dim)
        for k in range(1, top + 1):
            for f in by_dim[k]:
                assert any(g.active_rows > f.active_rows for g in by_dim[k - 1]), \
                    "graded: every face has a facet"


def test_redundant_rows():
    S = ph.InequalitySystem(((1,), (1,), (-1,)), (0, -1, -1))
    assert ph.redundant_rows(S) == {1}
    assert ph.redundant_rows(SIMPLEX2) == set()
    # removal is idempotent and preserves the face lattice
    S2 = S.without_rows({1})
    assert ph.redundant_rows(S2) == set()
    def canon(faces, names):
        return sorted(sorted(names[i] for i in f.active_rows) for f in faces)
    assert canon(ph.face_lattice(S), {0: "a", 1: "b", 2: "c"}) == \
        canon(ph.face_lattice(S2), {0: "a", 1: "c"})
    # the (0,0,1) family near eps = 1: the last coordinate row flips from
    # essential to redundant at the crossing
    def fam(eps):
        return ph.InequalitySystem(((1, 0), (0, 1), (-1, -1), (0, 1)),
                                   (0, 0, -1, F(eps) - 1),
                                   (ph.gstable_tag(1), ph.gstable_tag(2),
                                    ph.gstable_tag(0), ph.color_tag("b")))
    assert 1 not in ph.redundant_rows(fam(F(3, 4)))
    assert 1 in ph.redundant_rows(fam(F(5, 4)))


def test_lattice_points():
    pts = ph.lattice_points(ph.InequalitySystem(((1,), (-1,)), (0, -2)))
    assert pts == [(0,), (1,), (2,)]
    assert ph.lattice_points(SIMPLEX2) == [(0, 0), (0, 1), (1, 0)]


def _oracle_face_signatures(A, b):
    """2^rows active-set brute force, written independently of the library
    path: solve every square subsystem by integer Cramer, then scan all row
    subsets for realizability."""
    ai, bi = int_rows(A, b)
    n = len(A[0])
    m = len(A)
    points = []
    for sub in combinations(range(m), n):
        mat = [ai[i] for i in sub]
        d = det_int(mat)
        if d == 0:
            continue
        rhs = [bi[i] for i in sub]
        coords = []
        for j in range(n):
            col = [row[:j] + (rhs[k],) + row[j + 1:] for k, row in enumerate(mat)]
            coords.append(F(det_int(col), d))
        pt = tuple(coords)
        slack = [sum(ai[i][j] * pt[j] for j in range(n)) - bi[i] for i in range(m)]
        if all(s >= 0 for s in slack):
            points.append(frozenset(i for i in range(m) if slack[i] == 0))
    sigs = set()
    for size in range(m + 1):
        for T in combinations(range(m), size):
            T = frozenset(T)
            hit = [act for act in points if act >= T]
            if not hit:
                continue
            out = hit[0]
            for a in hit[1:]:
                out = out & a
            sigs.add(out)
    return sigs


def test_face_lattice_against_subset_oracle_small():
    rng = random.Random(7)
    for trial in range(60):
        n = rng.randint(1, 3)
        rows = [tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(rng.randint(1, 5))]
        # bounding box keeps the region a polytope
        for j in range(n):
            e = [0] * n
            e[j] = 1
            rows.append(tuple(e))
            rows.append(tuple(-v for v in e))
        b = [rng.randint(-3, 1) for _ in rows]
        S = ph.InequalitySystem(tuple(rows), tuple(b))
        oracle = _oracle_face_signatures(S.A, S.b)
        try:
            lattice = {f.active_rows for f in ph.face_lattice(S)}
        except EmptyPolytope:
            assert not oracle
            continue
        assert lattice == oracle
