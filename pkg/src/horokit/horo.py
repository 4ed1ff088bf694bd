"""
Horospherical homogeneous data, colored cones and fans, and the embedding
checks: validity, completeness, local factoriality, Picard rank, smoothness
and the rank-two shape detection.

Coordinates: the lattice N is presented in the basis dual to the stored
basis of M, so sigma(alpha) is the vector of coroot pairings against the M
basis.  Cones are given by integer generator lists; canonical form is the
sorted tuple of primitive extreme rays.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import lp, rootdata
from .errors import NotAColor, NotComplete, NotLocallyFactorial, UnsupportedFan
from .linalg import det_int, is_zero, primitive, rank, solve
from .rootdata import GroupProduct, Root, coroot_pairing, flag_dimension


@dataclass(frozen=True)
class HomSpaceData:
    """The pair (P, M): colors R and an integer basis of M in X(P)."""

    G: GroupProduct
    R: frozenset
    M_basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "R", frozenset(self.R))
        object.__setattr__(self, "M_basis",
                           tuple(tuple(Fraction(v) for v in m) for m in self.M_basis))
        for alpha in self.R:
            self.G.check_root(alpha)
            if self.G.is_trivial_root(alpha):
                raise ValueError(f"{alpha}: colors are non-trivial simple roots")
        if rank(self.M_basis) != len(self.M_basis):
            raise ValueError("M basis is not linearly independent")
        for m in self.M_basis:
            for gamma in self.G.nontrivial_roots():
                if gamma not in self.R and coroot_pairing(self.G, gamma, m) != 0:
                    raise ValueError(
                        f"basis weight {m} is not a character of P (pairs with {gamma})")

    @property
    def rank(self):
        return len(self.M_basis)

    def levi_roots(self):
        """Simple roots of P (non-trivial roots outside R)."""
        return {r for r in self.G.nontrivial_roots() if r not in self.R}

    def open_orbit_dim(self):
        return flag_dimension(self.G, self.levi_roots()) + self.rank


def sigma(hs, alpha):
    """sigma(alpha) = alpha^vee restricted to M, as a vector in N."""
    if alpha not in hs.R:
        raise NotAColor(str(alpha))
    return tuple(int(coroot_pairing(hs.G, alpha, m)) for m in hs.M_basis)


@dataclass(frozen=True)
class ColoredCone:
    generators: tuple
    colors: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "generators",
                           tuple(tuple(int(v) for v in g) for g in self.generators))
        object.__setattr__(self, "colors", frozenset(self.colors))

    @property
    def dim(self):
        return rank(self.generators)


@dataclass(frozen=True)
class ColoredFan:
    cones: tuple

    def __post_init__(self):
        object.__setattr__(self, "cones", tuple(self.cones))


def extreme_rays(generators):
    """Primitive extreme rays of the cone, sorted."""
    prims = []
    for g in generators:
        p = primitive(g)
        if not is_zero(p) and p not in prims:
            prims.append(p)
    keep = []
    for i, g in enumerate(prims):
        others = prims[:i] + prims[i + 1:]
        if not others or not lp.in_cone(others, g):
            keep.append(g)
    return tuple(sorted(keep))


def cone_contains(generators, v):
    return lp.in_cone(generators, v)


def is_pointed(generators):
    """No line: the generators fit in an open half-space."""
    gens = [g for g in generators if not is_zero(g)]
    if not gens:
        return True
    n = len(gens[0])
    return lp.feasible([list(g) for g in gens], [1] * len(gens)) if n else False


def cone_faces(generators):
    """Generator index sets of all faces (the cone itself included)."""
    gens = list(generators)
    k = len(gens)
    if k == 0:
        return [frozenset()]
    rays = extreme_rays(gens)
    if len(rays) == rank(gens):  # simplicial: faces are ray subsets
        idx_of = {r: [i for i, g in enumerate(gens) if primitive(g) == r] for r in rays}
        faces = []
        for size in range(len(rays) + 1):
            for sub in combinations(rays, size):
                members = frozenset(i for r in sub for i in idx_of[r])
                faces.append(members)
        return faces
    faces = {frozenset(range(k))}
    n = len(gens[0])
    for size in range(k):
        for sub in combinations(range(k), size):
            inside = [gens[i] for i in sub]
            outside = [gens[i] for i in range(k) if i not in sub]
            a_ge = [list(g) for g in outside]
            b_ge = [1] * len(outside)
            a_eq = [list(g) for g in inside]
            b_eq = [0] * len(inside)
            res = lp.solve_lp([0] * n,
                              a_ub=[[-v for v in r] for r in a_ge],
                              b_ub=[-b for b in b_ge], a_eq=a_eq, b_eq=b_eq)
            if res.status == lp.OPTIMAL:
                faces.add(frozenset(sub))
    return sorted(faces, key=lambda f: (len(f), sorted(f)))


def colored_face(hs, cone, face_gens):
    sub = tuple(cone.generators[i] for i in sorted(face_gens))
    cols = frozenset(a for a in cone.colors if cone_contains(sub, sigma(hs, a)))
    return ColoredCone(sub, cols)


def cone_key(hs, cone):
    return (extreme_rays(cone.generators), frozenset(cone.colors))


def validate_fan(hs, fan):
    """Check the colored-fan axioms; returns a list of violation strings."""
    issues = []
    keys = {}
    for cone in fan.cones:
        k = cone_key(hs, cone)
        if k in keys:
            issues.append(f"DuplicateCone: {cone}")
        keys[k] = cone
    for cone in fan.cones:
        for g in cone.generators:
            if is_zero(g):
                issues.append(f"ZeroGenerator: {cone}")
            elif primitive(g) != g:
                issues.append(f"NonPrimitiveGenerator: {g} in {cone}")
        if not is_pointed(cone.generators):
            issues.append(f"LineViolation: {cone}")
        for a in cone.colors:
            if a not in hs.R:
                issues.append(f"UnknownColor: {a} in {cone}")
                continue
            sig = sigma(hs, a)
            if is_zero(sig):
                issues.append(f"ZeroColorImage: {a} in {cone}")
            elif not cone_contains(cone.generators, sig):
                issues.append(f"ColorNotInCone: {a} in {cone}")
    for cone in fan.cones:
        for face in cone_faces(cone.generators):
            cf = colored_face(hs, cone, face)
            if cone_key(hs, cf) not in keys:
                issues.append(f"FaceClosureViolation: face {sorted(face)} of {cone}")
    cones = list(fan.cones)
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            if _relints_meet(cones[i], cones[j]):
                issues.append(f"OverlapViolation: {cones[i]} and {cones[j]}")
    return issues


def _relints_meet(c1, c2):
    """Do the relative interiors of two distinct cones share a point?

    Identical colored cones are handled by the duplicate check, so equality
    of canonical keys short-circuits to False here.
    """
    if extreme_rays(c1.generators) == extreme_rays(c2.generators) and \
            frozenset(c1.colors) == frozenset(c2.colors):
        return False
    g1 = [g for g in c1.generators if not is_zero(g)]
    g2 = [g for g in c2.generators if not is_zero(g)]
    if not g1 or not g2:
        # A zero cone's relative interior is {0}, interior to no other cone.
        return not g1 and not g2
    n = len(g1[0])
    nvar = len(g1) + len(g2)
    a_eq = [[Fraction(g[i]) for g in g1] + [-Fraction(h[i]) for h in g2]
            for i in range(n)]
    b_eq = [0] * n
    a_ub = [[-Fraction(1) if j == v else Fraction(0) for j in range(nvar)]
            for v in range(nvar)]
    b_ub = [-1] * nvar
    res = lp.solve_lp([0] * nvar, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq,
                      nonneg=True)
    return res.status == lp.OPTIMAL


def fan_edges(fan):
    """Primitive rays of all one-dimensional faces, sorted."""
    rays = set()
    for cone in fan.cones:
        rays.update(extreme_rays(cone.generators))
    return tuple(sorted(rays))


def fan_colors(fan):
    out = set()
    for cone in fan.cones:
        out |= set(cone.colors)
    return frozenset(out)


def is_complete(hs, fan):
    """Support equals N_Q.  Exact for simplicial fans."""
    n = hs.rank
    if n == 0:
        return len(fan.cones) > 0
    full = []
    for cone in fan.cones:
        rays = extreme_rays(cone.generators)
        d = rank(rays)
        if d == n:
            if len(rays) != n:
                raise UnsupportedFan("completeness test needs a simplicial fan")
            full.append(frozenset(rays))
    if not full:
        return False
    if n == 1:
        return len(set(full)) == 2
    from collections import Counter
    walls = Counter()
    for rays in full:
        for facet in combinations(sorted(rays), n - 1):
            walls[facet] += 1
    return all(v == 2 for v in walls.values())


def is_locally_factorial(hs, fan):
    """Every cone generated by part of a Z-basis, colors injecting into it."""
    for cone in fan.cones:
        rays = extreme_rays(cone.generators)
        d = rank(rays)
        if len(rays) != d:
            return False
        if d > 0:
            g = 0
            from math import gcd
            for cols in combinations(range(hs.rank), d):
                sub = [[r[c] for c in cols] for r in rays]
                g = gcd(g, abs(det_int(sub)))
            if g != 1:
                return False
        seen = set()
        for a in cone.colors:
            s = sigma(hs, a)
            if s not in rays or s in seen:
                return False
            seen.add(s)
    return True


def picard_rank(hs, fan):
    if not is_locally_factorial(hs, fan):
        raise NotLocallyFactorial("picard_rank needs a locally factorial fan")
    if not is_complete(hs, fan):
        raise NotComplete("picard_rank needs a complete fan")
    edges = fan_edges(fan)
    return (len(edges) - hs.rank) + len(hs.R - fan_colors(fan))


def is_smooth_variety(hs, fan):
    if not is_locally_factorial(hs, fan):
        return False
    levi = hs.levi_roots()
    for cone in fan.cones:
        if cone.colors and not rootdata.is_smooth_pair(hs.G, levi, cone.colors):
            return False
    return True


# ---------------------------------------------------------------------------
# The bundled variety object used by the divisor / mmp layers


class HoroVariety:
    """A complete embedding plus a fixed boundary-divisor order.

    divisors is a tuple of descriptors, one per B-stable prime divisor:
    ("x", ray) for a G-stable edge with the given primitive generator, and
    ("c", root) for the color D_root.  The same order indexes the rows of
    the pseudo-moment inequality system and of the Log-MMP matrix.
    """

    def __init__(self, hs, fan, divisors=None):
        self.hs = hs
        self.fan = fan
        self._caches = {}
        edges = fan_edges(fan)
        color_rays = {}
        for a in sorted(hs.R):
            s = primitive(sigma(hs, a))
            if a in fan_colors(fan):
                color_rays.setdefault(s, []).append(a)
        gstable = [e for e in edges if e not in color_rays]
        if divisors is None:
            divisors = tuple(("x", e) for e in gstable) + \
                tuple(("c", a) for a in sorted(hs.R))
        self.divisors = tuple(divisors)
        self.gstable_rays = tuple(gstable)

    @property
    def G(self):
        return self.hs.G

    @property
    def rank(self):
        return self.hs.rank

    def _cached(self, key, fn):
        if key not in self._caches:
            self._caches[key] = fn()
        return self._caches[key]

    def edges(self):
        return self._cached("edges", lambda: fan_edges(self.fan))

    def colors_used(self):
        return self._cached("fx", lambda: fan_colors(self.fan))

    def complete(self):
        return self._cached("complete", lambda: is_complete(self.hs, self.fan))

    def locally_factorial(self):
        return self._cached("locfact", lambda: is_locally_factorial(self.hs, self.fan))

    def smooth(self):
        return self._cached("smooth", lambda: is_smooth_variety(self.hs, self.fan))

    def picard_rank(self):
        return picard_rank(self.hs, self.fan)

    def dim(self):
        return self.hs.open_orbit_dim()

    def row_vector(self, desc):
        if desc[0] == "x":
            return tuple(Fraction(v) for v in desc[1])
        return tuple(Fraction(v) for v in sigma(self.hs, desc[1]))

    def boundary_divisor(self, i):
        from .divisor import BStableDivisor
        desc = self.divisors[i]
        if desc[0] == "x":
            return BStableDivisor({desc[1]: Fraction(1)}, {})
        return BStableDivisor({}, {desc[1]: Fraction(1)})


# ---------------------------------------------------------------------------
# Shape detection (rank two)


@dataclass(frozen=True)
class Case0:
    pass


@dataclass(frozen=True)
class Case1Shape:
    basis: tuple   # rays e_0, ..., e_n
    a: tuple       # 0 <= a_1 <= ... <= a_n
    beta: Root


@dataclass(frozen=True)
class Case2Shape:
    r: int
    s: int
    u: tuple       # rays u_0, ..., u_r
    v: tuple       # rays v_1, ..., v_{s+1}
    a: tuple       # 0 <= a_1 <= ... <= a_r


@dataclass(frozen=True)
class OtherShape:
    reason: str


def _subset_cone_map(hs, fan, rays):
    """Check the fan is exactly {cone(S) : S proper subset of rays}."""
    keys = {cone_key(hs, c) for c in fan.cones}
    sig_by_ray = {}
    for a in fan_colors(fan):
        sig_by_ray.setdefault(primitive(sigma(hs, a)), set()).add(a)
    expected = set()
    m = len(rays)
    for size in range(m):
        for sub in combinations(rays, size):
            cols = frozenset(a for r in sub for a in sig_by_ray.get(r, ()))
            expected.add((tuple(sorted(sub)), cols))
    return keys == expected


def case_detect(hs, fan):
    """Match a smooth complete rank-two fan against the three shapes."""
    n = hs.rank
    R = hs.R
    fx = fan_colors(fan)
    if n == 0:
        if len(R) == 2 and not fx:
            return Case0()
        return OtherShape("rank 0 but |R| != 2")
    edges = fan_edges(fan)
    outside = sorted(R - fx)

    if len(outside) == 1 and len(edges) == n + 1:
        beta = outside[0]
        if not is_zero([sum(e[i] for e in edges) for i in range(n)]):
            return OtherShape("edges do not sum to zero")
        if not _subset_cone_map(hs, fan, edges):
            return OtherShape("cone set is not the projective-space pattern")
        sb = sigma(hs, beta)
        best = None
        for j, e0 in enumerate(edges):
            rest = [e for k, e in enumerate(edges) if k != j]
            coeffs = solve([[r[i] for r in rest] for i in range(n)], list(sb))
            if coeffs is None or any(c < 0 or c.denominator != 1 for c in coeffs):
                continue
            order = sorted(range(len(rest)), key=lambda k: (coeffs[k], rest[k]))
            a = tuple(int(coeffs[k]) for k in order)
            cand = (a, (e0,) + tuple(rest[k] for k in order))
            if best is None or cand < best:
                best = cand
        if best is None:
            return OtherShape("beta image not in any coordinate cone")
        a, basis = best
        return Case1Shape(basis, a, beta)

    if not outside and len(edges) == n + 2:
        best = None
        for rsize in range(2, n + 1):
            for U in combinations(edges, rsize):
                if not is_zero([sum(u[i] for u in U) for i in range(n)]):
                    continue
                V = tuple(e for e in edges if e not in U)
                sv = [sum(v[i] for v in V) for i in range(n)]
                for j, u0 in enumerate(U):
                    rest = [u for k, u in enumerate(U) if k != j]
                    coeffs = solve([[u[i] for u in rest] for i in range(n)], sv)
                    if coeffs is None or any(c < 0 or c.denominator != 1 for c in coeffs):
                        continue
                    order = sorted(range(len(rest)), key=lambda k: (coeffs[k], rest[k]))
                    a = tuple(int(coeffs[k]) for k in order)
                    r = len(rest)
                    s = len(V) - 1
                    cand = (r, a, (u0,) + tuple(rest[k] for k in order), V)
                    if best is None or cand < best:
                        best = cand
        if best is None:
            return OtherShape("no zero-sum split of the edges")
        r, a, u, V = best
        return Case2Shape(r, len(V) - 1, u, V, a)

    return OtherShape("edge/color counts fit no rank-two shape")
