"""
Admissible quadruples (P, M, Q, Q~): the admissibility test, the orbit/face
dictionary with orbit dimensions, and face transport along G-equivariant
morphisms.

Q~ lives in M coordinates as an inequality system; Q = v0 + Q~ sits in the
weight space.  A dominant wall for alpha in R is the locus where the coroot
pairing vanishes; on Q this reads sigma(alpha) . chi = -<alpha^vee, v0>.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .errors import EmptyFace, IncompatibleQuadruples
from .horo import sigma
from .linalg import frac
from .polyhedra import InequalitySystem, face_lattice, polytope_dim
from .rootdata import coroot_pairing, flag_dimension


@dataclass(frozen=True)
class AdmissibleQuadruple:
    hs: object
    qtilde: InequalitySystem
    v0: tuple

    def __post_init__(self):
        object.__setattr__(self, "v0", tuple(frac(v) for v in self.v0))

    @property
    def rank(self):
        return self.hs.rank

    def wall_functional(self, alpha):
        """(row, rhs) with the wall condition row . chi = rhs on Q~."""
        row = tuple(frac(v) for v in sigma(self.hs, alpha))
        rhs = -coroot_pairing(self.hs.G, alpha, self.v0)
        return row, rhs


def is_admissible(q):
    """(ok, violated clauses) for the four admissibility conditions."""
    bad = []
    n = q.rank
    dim = polytope_dim(q.qtilde)
    if dim < 0:
        return False, ["polytope is empty"]
    if dim != n:
        bad.append("pseudo-moment polytope is not full-dimensional in M")
    for alpha in sorted(q.hs.R):
        row, rhs = q.wall_functional(alpha)
        res = lp.optimize_over(row, q.qtilde.A, q.qtilde.b, maximize=False)
        if res.status == lp.OPTIMAL and res.value < rhs:
            bad.append(f"moment polytope leaves the dominant cone at {alpha}")
            break
    strict = _dominant_interior_margin(q)
    if strict is None or strict <= 0:
        bad.append("moment polytope misses the interior of the dominant cone")
    return not bad, bad


def _dominant_interior_margin(q):
    rows = list(q.qtilde.A)
    rhs = list(q.qtilde.b)
    strict_rows = []
    for alpha in sorted(q.hs.R):
        row, wall_rhs = q.wall_functional(alpha)
        strict_rows.append(len(rows))
        rows.append(row)
        rhs.append(wall_rhs)
    if not strict_rows:
        return Fraction(1)
    return lp.strict_margin(rows, rhs, strict_rows=strict_rows)


def _face_system(q, active_rows):
    rows = list(q.qtilde.A)
    rhs = list(q.qtilde.b)
    tags = list(q.qtilde.tags)
    for i in sorted(active_rows):
        rows.append(tuple(-v for v in q.qtilde.A[i]))
        rhs.append(-q.qtilde.b[i])
        tags.append(("eq", i))
    return InequalitySystem(tuple(rows), tuple(rhs), tuple(tags))


@dataclass(frozen=True)
class OrbitInfo:
    """One orbit: the enlarged parabolic is recorded by the color set that
    survives (walls containing the face are absorbed into the parabolic)."""

    r_set: frozenset
    rank: int
    dim: int
    walls: frozenset


def orbit_of_face(q, active_rows):
    """Orbit data of the face with the given (maximal) active row set."""
    active_rows = frozenset(active_rows)
    sysf = _face_system(q, active_rows)
    d = polytope_dim(sysf)
    if d < 0:
        raise EmptyFace(f"rows {sorted(active_rows)} cut out the empty set")
    walls = set()
    for alpha in sorted(q.hs.R):
        row, rhs = q.wall_functional(alpha)
        hi = lp.optimize_over(row, sysf.A, sysf.b, maximize=True)
        lo = lp.optimize_over(row, sysf.A, sysf.b, maximize=False)
        if hi.status == lp.OPTIMAL and lo.status == lp.OPTIMAL and \
                hi.value == rhs and lo.value == rhs:
            walls.add(alpha)
    r_set = frozenset(q.hs.R - walls)
    levi = {r for r in q.hs.G.nontrivial_roots() if r not in r_set}
    return OrbitInfo(r_set, d, flag_dimension(q.hs.G, levi) + d, frozenset(walls))


def orbit_poset(q):
    """[(FaceSignature, OrbitInfo)] over all nonempty faces, closure order
    given by reverse inclusion of the active sets."""
    out = []
    for f in face_lattice(q.qtilde):
        out.append((f, orbit_of_face(q, f.active_rows)))
    return out


COLLAPSED = "Collapsed"


def map_face(q_source, q_target, active_rows):
    """Transport a face to the target quadruple.

    The maximal active rows of the source face are matched to target rows by
    tag, the dominant walls containing the source face are imposed on the
    target, and the cut-out face (or COLLAPSED) is returned as a maximal
    active set of the target system.
    """
    src, tgt = q_source.qtilde, q_target.qtilde
    for tags in (src.tags, tgt.tags):
        if len(set(tags)) != len(tags):
            raise IncompatibleQuadruples("row tags are not unique")
    tgt_index = {t: i for i, t in enumerate(tgt.tags)}
    active_rows = frozenset(active_rows)
    eq_rows = []
    for i in active_rows:
        tag = src.tags[i]
        if tag in tgt_index:
            eq_rows.append(tgt_index[tag])
        elif tag[0] == "color":
            raise IncompatibleQuadruples(f"target lacks the color row {tag}")
        # missing G-stable rows were pruned; they impose nothing
    src_info = orbit_of_face(q_source, active_rows)
    rows = list(tgt.A)
    rhs = list(tgt.b)
    a_eq = [list(tgt.A[i]) for i in eq_rows]
    b_eq = [tgt.b[i] for i in eq_rows]
    for alpha in sorted(src_info.walls):
        if alpha in q_target.hs.R:
            row, wall_rhs = q_target.wall_functional(alpha)
            a_eq.append(list(row))
            b_eq.append(wall_rhs)
    if not lp.feasible(rows, rhs, a_eq=a_eq, b_eq=b_eq):
        return COLLAPSED
    # maximal active set of the cut-out face
    sys_rows = rows + a_eq + [[-v for v in r] for r in a_eq]
    sys_rhs = rhs + b_eq + [-b for b in b_eq]
    out = set()
    for i, (row, b) in enumerate(zip(tgt.A, tgt.b)):
        res = lp.solve_lp(row, a_ub=[[-v for v in r] for r in sys_rows],
                          b_ub=[-b_ for b_ in sys_rhs], maximize=True)
        if res.status == lp.OPTIMAL and res.value == b:
            out.add(i)
    return frozenset(out)
