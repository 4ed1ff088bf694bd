"""
Exact rational polytopes presented as {x : A x >= b}.

Faces are identified by their signature: the maximal set of rows that hold
with equality on the whole face.  Enumeration goes through basic points
(square subsystems solved by integer Cramer) followed by an intersection
closure of vertex signatures; everything stays in exact arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import lp
from .errors import EmptyPolytope, UnboundedPolyhedron
from .linalg import affine_dim, det_int, frac, int_rows, rank

GSTABLE = "x"
COLOR = "color"
PLUMBING = "row"


def gstable_tag(key):
    return (GSTABLE, key)


def color_tag(root):
    return (COLOR, root)


def plumbing_tag(key):
    return (PLUMBING, key)


@dataclass(frozen=True)
class InequalitySystem:
    """Constraint rows A x >= b with one tag per row."""

    A: tuple
    b: tuple
    tags: tuple = None

    def __post_init__(self):
        a = tuple(tuple(frac(v) for v in row) for row in self.A)
        bb = tuple(frac(v) for v in self.b)
        tags = self.tags
        if tags is None:
            tags = tuple(plumbing_tag(i) for i in range(len(a)))
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "b", bb)
        object.__setattr__(self, "tags", tuple(tags))
        if len(a) != len(bb) or len(a) != len(self.tags):
            raise ValueError("rows, rhs and tags must have equal length")
        if len(a) < 1:
            raise ValueError("need at least one row")

    @property
    def dim(self):
        return len(self.A[0])

    def without_rows(self, drop):
        keep = [i for i in range(len(self.A)) if i not in set(drop)]
        return InequalitySystem(tuple(self.A[i] for i in keep),
                                tuple(self.b[i] for i in keep),
                                tuple(self.tags[i] for i in keep))


@dataclass(frozen=True)
class FaceSignature:
    """Maximal set of rows tight on a face, plus the face dimension."""

    active_rows: frozenset
    dim: int


def basic_points(A, b):
    """Basic feasible points of {Ax >= b} with their full active sets.

    Returns a list of (point, active) pairs, one per distinct point; every
    vertex of the (pointed) feasible region appears.  Uses integer Cramer
    solves on row-scaled data.
    """
    n = len(A[0]) if A else 0
    m = len(A)
    ai, bi = int_rows(A, b)
    if n == 0:
        if all(v <= 0 for v in bi):
            return [((), frozenset(i for i in range(m) if bi[i] == 0))]
        return []
    seen = {}
    for subset in combinations(range(m), n):
        mat = [ai[i] for i in subset]
        det = det_int(mat)
        if det == 0:
            continue
        rhs = [bi[i] for i in subset]
        coords = []
        for j in range(n):
            colmat = [row[:j] + (rhs[k],) + row[j + 1:] for k, row in enumerate(mat)]
            coords.append(Fraction(det_int(colmat), det))
        pt = tuple(coords)
        if pt in seen:
            continue
        active = []
        ok = True
        for i in range(m):
            s = sum(ai[i][j] * pt[j] for j in range(n)) - bi[i]
            if s < 0:
                ok = False
                break
            if s == 0:
                active.append(i)
        if ok:
            seen[pt] = frozenset(active)
    return sorted(seen.items())


def is_feasible(system):
    return lp.feasible(system.A, system.b)


def polytope_dim(system):
    """Affine dimension of the feasible set, -1 when empty."""
    if not is_feasible(system):
        return -1
    n = system.dim
    implicit = []
    for i, (row, rhs) in enumerate(zip(system.A, system.b)):
        res = lp.optimize_over(row, system.A, system.b, maximize=True)
        if res.status == lp.OPTIMAL and res.value == rhs:
            implicit.append(row)
    return n - rank(implicit)


def _is_bounded(system):
    """Bounded iff the recession cone {Ax >= 0} is {0}."""
    n = system.dim
    if n == 0:
        return True
    zero = [Fraction(0)] * len(system.A)
    for j in range(n):
        for sign in (1, -1):
            unit = [Fraction(0)] * n
            unit[j] = Fraction(sign)
            if lp.feasible(system.A, zero, a_eq=[unit], b_eq=[Fraction(1)]):
                return False
    return True


def vertices(system):
    """All extreme points, exact and lexicographically sorted."""
    if not is_feasible(system):
        return []
    if not _is_bounded(system):
        raise UnboundedPolyhedron("feasible set has a nonzero recession cone")
    return [pt for pt, _ in basic_points(system.A, system.b)]


def signature_closure(points):
    """All face signatures generated by vertex active sets.

    points: list of (point, active) pairs of the vertices.  Returns a dict
    signature -> dim.  Every face of a bounded region is the convex hull of
    the vertices whose active set contains its signature.
    """
    acts = [a for _, a in points]
    pts = [p for p, _ in points]

    def maximalize(T):
        members = [a for a in acts if a >= T]
        out = members[0]
        for a in members[1:]:
            out = out & a
        return out

    sigs = set(acts)
    full = acts[0]
    for a in acts[1:]:
        full = full & a
    sigs.add(full)
    frontier = set(sigs)
    while frontier:
        new = set()
        for s in frontier:
            for t in sigs:
                u = s & t
                if u not in sigs:
                    u = maximalize(u)
                    if u not in sigs:
                        new.add(u)
        sigs |= new
        frontier = new
    out = {}
    for s in sigs:
        members = [p for p, a in zip(pts, acts) if a >= s]
        out[s] = affine_dim(members)
    return out


def closure_masks(masks):
    """Intersection closure of vertex active sets given as bitmasks.

    Returns the set of all face signatures (as masks), the fast path behind
    the parametric sweep.
    """
    acts = list(dict.fromkeys(masks))
    full = acts[0]
    for a in acts[1:]:
        full &= a
    sigs = set(acts)
    sigs.add(full)
    frontier = list(sigs)
    while frontier:
        new = []
        for s in frontier:
            for t in acts:
                u = s & t
                if u not in sigs:
                    w = ~0
                    for a in acts:
                        if a & u == u:
                            w &= a
                    if w not in sigs:
                        sigs.add(w)
                        new.append(w)
        frontier = new
    return sigs


def face_lattice(system):
    """Every nonempty face as a FaceSignature, full polytope included."""
    pts = basic_points(system.A, system.b)
    if not pts:
        if is_feasible(system):
            raise UnboundedPolyhedron("no basic points: region is not pointed")
        raise EmptyPolytope("feasible set is empty")
    if not _is_bounded(system):
        raise UnboundedPolyhedron("feasible set has a nonzero recession cone")
    sigs = signature_closure(pts)
    return sorted((FaceSignature(s, d) for s, d in sigs.items()),
                  key=lambda f: (-f.dim, sorted(f.active_rows)))


def face_signatures(A, b):
    """Signature -> dim map for a bounded system, no validity checks.

    Fast path used by the parametric sweep; the caller guarantees the region
    is a (possibly lower-dimensional) nonempty polytope.
    """
    pts = basic_points(A, b)
    if not pts:
        return {}
    return signature_closure(pts)


def redundant_rows(system):
    """Rows whose removal leaves the feasible set unchanged."""
    if not is_feasible(system):
        raise EmptyPolytope("feasible set is empty")
    out = set()
    m = len(system.A)
    if m == 1:
        return out
    for i in range(m):
        rest_a = [system.A[j] for j in range(m) if j != i]
        rest_b = [system.b[j] for j in range(m) if j != i]
        res = lp.optimize_over(system.A[i], rest_a, rest_b, maximize=False)
        if res.status == lp.OPTIMAL and res.value >= system.b[i]:
            out.add(i)
    return out


def lattice_points(system):
    """All integer points of a bounded feasible set."""
    vs = vertices(system)
    if not vs:
        return []
    n = system.dim
    if n == 0:
        return [()]
    lo = [min(v[j] for v in vs) for j in range(n)]
    hi = [max(v[j] for v in vs) for j in range(n)]
    ranges = []
    for j in range(n):
        a = -(-lo[j].numerator // lo[j].denominator)  # ceil
        b = hi[j].numerator // hi[j].denominator      # floor
        ranges.append(range(a, b + 1))
    out = []

    def rec(j, partial):
        if j == n:
            pt = tuple(map(Fraction, partial))
            if all(sum(r[k] * pt[k] for k in range(n)) >= rhs
                   for r, rhs in zip(system.A, system.b)):
                out.append(tuple(partial))
            return
        for v in ranges[j]:
            rec(j + 1, partial + [v])

    rec(0, [])
    return out
