"""
The parametric program engine: a one-parameter family of pseudo-moment
polytopes Q~(eps) = {x : A x >= B + eps C}, exact breakpoint detection and
classification (flip / divisorial contraction / terminal fibration), fiber
records, and the closed-form predictions for the two standard families.

Everything is exact: candidate breakpoints come from square tight-row
systems (vertices are affine in eps) and from margin systems (the strict
feasibility value is concave piecewise linear in eps), and face signatures
are compared after pruning redundant G-stable rows, never color rows.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import lp
from .divisor import AMPLE, ample_status, anticanonical, moment_polytopes, pl_function
from .errors import (DegenerateFamily, NoMaximalPreimage, NotAmple,
                     NotRestrictedForm, PreconditionViolated)
from .horo import sigma
from .linalg import dot, frac, solve_two
from .polyhedra import signature_closure
from .quadruple import AdmissibleQuadruple
from .rootdata import coroot_pairing, flag_dimension

FLIP = "Flip"
DIVISORIAL = "DivisorialContraction"
FIBRATION = "Fibration"


@dataclass(frozen=True)
class FiberRecord:
    dim: int
    rank: int
    source_sig: frozenset
    target_sig: frozenset
    numerator_colors: frozenset = None   # set when the fiber is P'/P
    denominator_colors: frozenset = None


@dataclass(frozen=True)
class ContractionEvent:
    epsilon: Fraction
    kind: str
    pruned_rows: frozenset = frozenset()
    face_map: tuple = ()
    fiber: FiberRecord = None


@dataclass(frozen=True)
class MMPTrace:
    intervals: tuple      # (lo, hi, signature set); lo included, hi excluded
    events: tuple
    eps_max: Fraction     # None when the family never degenerates
    fibers: tuple = ()    # per-orbit fiber records of the terminal fibration
    family: object = None

    def event_list(self):
        return [(e.epsilon, e.kind) for e in self.events]


class MMPFamily:
    """Parametric family bound to a variety; rows follow X.divisors."""

    def __init__(self, X, A, B, C, tags, v0, v1):
        self.X = X
        self.A = tuple(tuple(frac(v) for v in row) for row in A)
        self.B = tuple(frac(v) for v in B)
        self.C = tuple(frac(v) for v in C)
        self.tags = tuple(tags)
        self.v0 = tuple(frac(v) for v in v0)
        self.v1 = tuple(frac(v) for v in v1)
        self.n = len(self.A[0]) if self.A else 0
        self.m = len(self.A)
        self._vertex_data = None
        self._lifted_data = None
        self._recession = {}

    # -- parametric vertex preprocessing -----------------------------------

    def _vertices(self):
        """Per invertible tight square system: point p + eps q and the affine
        slack (u_r + eps v_r) of every row at it."""
        if self._vertex_data is not None:
            return self._vertex_data
        out = []
        n = self.n
        if n == 0:
            self._vertex_data = []
            return self._vertex_data
        for sub in combinations(range(self.m), n):
            mat = [self.A[i] for i in sub]
            sol = solve_two(mat, [self.B[i] for i in sub],
                            [self.C[i] for i in sub])
            if sol is None:
                continue
            p, qv = sol
            slacks = []
            for r in range(self.m):
                u = dot(self.A[r], p) - self.B[r]
                v = dot(self.A[r], qv) - self.C[r]
                slacks.append((u, v))
            out.append((sub, p, qv, tuple(slacks)))
        self._vertex_data = out
        return out

    def points_at(self, eps, keep=None):
        """Distinct feasible candidate points at eps with their active rows,
        restricted to the kept rows."""
        keep = frozenset(range(self.m)) if keep is None else frozenset(keep)
        eps = frac(eps)
        seen = {}
        for sub, p, qv, slacks in self._vertices():
            if any(i not in keep for i in sub):
                continue
            active = []
            ok = True
            for r in sorted(keep):
                s = slacks[r][0] + eps * slacks[r][1]
                if s < 0:
                    ok = False
                    break
                if s == 0:
                    active.append(r)
            if not ok:
                continue
            pt = tuple(a + eps * b for a, b in zip(p, qv))
            cur = seen.get(pt)
            if cur is None:
                seen[pt] = frozenset(active)
        return sorted(seen.items())

    def _lifted(self):
        """Parametric vertices of the margin system {A x - t >= B + eps C,
        t <= 1}: the strict-feasibility value max t is read off these."""
        if self._lifted_data is not None:
            return self._lifted_data
        rows = [tuple(row) + (Fraction(-1),) for row in self.A]
        rows.append(tuple([Fraction(0)] * self.n) + (Fraction(1),))
        bs = list(self.B) + [Fraction(-1)]
        cs = list(self.C) + [Fraction(0)]
        # t <= 1 is the row -t >= -1, i.e. (0,...,0,-1) . (x,t) >= -1
        rows[-1] = tuple([Fraction(0)] * self.n) + (Fraction(-1),)
        out = []
        k = self.n + 1
        for sub in combinations(range(len(rows)), k):
            mat = [rows[i] for i in sub]
            sol = solve_two(mat, [bs[i] for i in sub], [cs[i] for i in sub])
            if sol is None:
                continue
            p, qv = sol
            slacks = []
            for r in range(len(rows)):
                u = dot(rows[r], p) - bs[r]
                v = dot(rows[r], qv) - cs[r]
                slacks.append((u, v))
            out.append((p[-1], qv[-1], tuple(slacks)))
        self._lifted_data = out
        return out

    def margin_value(self, eps):
        """Exact max t with A x >= B + eps C + t, t <= 1 (None: infeasible)."""
        eps = frac(eps)
        best = None
        for tp, tq, slacks in self._lifted():
            ok = True
            for u, v in slacks:
                if u + eps * v < 0:
                    ok = False
                    break
            if ok:
                t = tp + eps * tq
                if best is None or t > best:
                    best = t
        return best

    def _row_can_escape(self, r, keep):
        """Is the slack of row r unbounded below on the relaxation without r?
        (Recession-cone test; independent of eps.)"""
        key = (r, keep)
        if key in self._recession:
            return self._recession[key]
        rows = [self.A[i] for i in sorted(keep) if i != r]
        rhs = [Fraction(0)] * len(rows)
        rows.append(tuple(-v for v in self.A[r]))
        rhs.append(Fraction(1))
        ans = lp.feasible(rows, rhs)
        self._recession[key] = ans
        return ans

    def pruned_rows_at(self, eps):
        """Redundant G-stable rows at eps, dropped greedily by index."""
        keep = set(range(self.m))
        pruned = set()
        changed = True
        while changed:
            changed = False
            for r in sorted(keep):
                if self.tags[r][0] != "x":
                    continue
                rest = frozenset(keep - {r})
                if self._row_can_escape(r, frozenset(keep)):
                    continue
                pts = self.points_at(eps, keep=rest)
                if not pts:
                    continue
                ok = True
                for pt, _ in pts:
                    s = dot(self.A[r], pt) - (self.B[r] + frac(eps) * self.C[r])
                    if s < 0:
                        ok = False
                        break
                if ok:
                    keep.discard(r)
                    pruned.add(r)
                    changed = True
                    break
        return frozenset(pruned), frozenset(keep)

    def signatures_at(self, eps, prune=True):
        """Canonical face-signature set at eps (pruned of redundant rows)."""
        if prune:
            _, keep = self.pruned_rows_at(eps)
        else:
            keep = frozenset(range(self.m))
        pts = self.points_at(eps, keep=keep)
        if not pts:
            return frozenset()
        return frozenset(signature_closure(pts))

    def signature_masks_at(self, eps):
        """Unpruned face signatures as row bitmasks (fast comparison path)."""
        eps = frac(eps)
        allmask = (1 << self.m) - 1
        seen = {}
        for sub, p, qv, slacks in self._vertices():
            mask = 0
            ok = True
            for r in range(self.m):
                u, v = slacks[r]
                s = u + eps * v
                if s < 0:
                    ok = False
                    break
                if s == 0:
                    mask |= 1 << r
            if ok:
                pt = tuple(a + eps * b for a, b in zip(p, qv))
                seen.setdefault(pt, mask)
        if not seen:
            return frozenset()
        from .polyhedra import closure_masks
        return frozenset(m & allmask for m in closure_masks(list(seen.values())))

    def system_at(self, eps):
        from .polyhedra import InequalitySystem
        eps = frac(eps)
        return InequalitySystem(self.A,
                                tuple(b + eps * c for b, c in zip(self.B, self.C)),
                                self.tags)

    def v_at(self, eps):
        eps = frac(eps)
        return tuple(a + eps * b for a, b in zip(self.v0, self.v1))

    def quadruple_at(self, eps):
        return AdmissibleQuadruple(self.X.hs, self.system_at(eps), self.v_at(eps))

    def admissible(self, eps):
        """All rows strictly satisfiable: full dimension plus the interior
        dominance condition (color rows pair fundamental weights)."""
        margin = self.margin_value(eps)
        return margin is not None and margin > 0


def build_family(X, D, Delta):
    """Family of (X, D + eps(K_X + Delta)); rows follow X.divisors."""
    if ample_status(X, D) != AMPLE:
        raise NotAmple("the reference divisor must be ample")
    KD = Delta - anticanonical(X)
    pl_function(X, KD)  # Q-Cartier gate for K_X + Delta
    system, v0 = moment_polytopes(X, D)
    B = tuple(-D.coeff(desc) for desc in X.divisors)
    C = tuple(-KD.coeff(desc) for desc in X.divisors)
    v1 = X.G.zero_weight()
    for a, c in KD.colors.items():
        v1 = tuple(x + c * y for x, y in zip(v1, X.G.fundamental_weight(a)))
    return MMPFamily(X, system.A, B, C, system.tags, v0, v1)


def critical_epsilons(fam):
    """(sorted event candidates < eps_max, eps_max); exact rationals.

    Candidates are the roots of the parametric vertex/row crossing slacks
    plus the margin roots of (n+1)-row systems (these cover every kink of
    the concave strict-feasibility value, hence the admissibility loss).
    """
    if not fam.admissible(0):
        raise DegenerateFamily("the family is not admissible at eps = 0")
    cands = set()
    for sub, p, qv, slacks in fam._vertices():
        for u, v in slacks:
            if v != 0:
                root = -u / v
                if root > 0:
                    cands.add(root)
    for tp, tq, slacks in fam._lifted():
        if tq != 0:
            root = -tp / tq
            if root > 0:
                cands.add(root)
    cands = sorted(cands)
    eps_max = None
    for c in cands:
        if not fam.admissible(c):
            eps_max = c
            break
    if eps_max is None:
        # Every kink of the concave margin value is among the candidates, so
        # the value is affine beyond the last one; read off its root.
        lc = cands[-1] if cands else Fraction(0)
        m0 = fam.margin_value(lc)
        m1 = fam.margin_value(lc + 1)
        if m1 >= m0:
            return list(cands), None
        eps_max = lc + m0 / (m0 - m1)
    return [c for c in cands if c < eps_max], eps_max


def classify_breakpoints(fam, cands, eps_max):
    """Events at the candidates, by comparing pruned signature sets."""
    events = []
    pts = [Fraction(0)] + list(cands) + ([eps_max] if eps_max is not None else [])
    mids = []
    for lo, hi in zip(pts, pts[1:]):
        mids.append((lo + hi) / 2)
    sig_mid = [fam.signatures_at(m) for m in mids]
    intervals = []
    cur_lo = Fraction(0)
    for k, c in enumerate(cands):
        sig_l, sig_r = sig_mid[k], sig_mid[k + 1]
        sig_c = fam.signatures_at(c)
        if sig_l == sig_c == sig_r:
            continue
        pr_l = fam.pruned_rows_at(mids[k])[0]
        pr_c = fam.pruned_rows_at(c)[0]
        if sig_c == sig_r and sig_l != sig_c:
            if not (pr_c > pr_l):
                raise DegenerateFamily(
                    f"signature class closes left at {c} without a row "
                    "becoming superfluous")
            events.append(ContractionEvent(c, DIVISORIAL,
                                           pruned_rows=frozenset(pr_c - pr_l)))
            intervals.append((cur_lo, c, sig_l))
            cur_lo = c
        elif sig_c != sig_l and sig_c != sig_r:
            events.append(ContractionEvent(c, FLIP))
            intervals.append((cur_lo, c, sig_l))
            cur_lo = c
        else:
            raise DegenerateFamily(
                f"anomalous signature pattern at {c} (non-general input?)")
    if eps_max is not None:
        intervals.append((cur_lo, eps_max, sig_mid[-1]))
    else:
        intervals.append((cur_lo, None, sig_mid[-1] if mids else
                          fam.signatures_at(Fraction(1))))
    return events, intervals


def _orbit_dim(fam, eps, sig, pts):
    """Orbit dimension of the face with maximal active set sig at eps."""
    hs = fam.X.hs
    members = [pt for pt, act in pts if act >= sig]
    from .linalg import affine_dim
    d = affine_dim(members)
    veps = fam.v_at(eps)
    walls = set()
    for alpha in sorted(hs.R):
        row = sigma(hs, alpha)
        rhs = -coroot_pairing(hs.G, alpha, veps)
        if all(dot(row, pt) == rhs for pt in members):
            walls.add(alpha)
    r_set = hs.R - walls
    levi = {r for r in hs.G.nontrivial_roots() if r not in r_set}
    return flag_dimension(hs.G, levi) + d, d, frozenset(r_set)


def fibration_fibers(trace, event):
    """Fiber records of a trace's terminal fibration event."""
    if event.kind != FIBRATION:
        raise ValueError("fiber records are attached to fibration events")
    lo = trace.intervals[-1][0]
    return general_fiber(trace.family, (lo + event.epsilon) / 2, event.epsilon)


def general_fiber(fam, eps_below, eps_max):
    """Fiber records of the terminal fibration, one per target orbit.

    Orbits correspond to faces; a source face maps to the target face cut
    out by its maximal active rows.  There is always a unique biggest
    source orbit over each target orbit; its absence is an internal error.
    """
    src_pts = fam.points_at(eps_below)
    tgt_pts = fam.points_at(eps_max)
    if not tgt_pts:
        raise NoMaximalPreimage("the terminal polytope is empty")
    src_faces = signature_closure(src_pts)
    tgt_faces = signature_closure(tgt_pts)

    def target_of(sig):
        members = [act for _, act in tgt_pts if act >= sig]
        if not members:
            return None
        out = members[0]
        for a in members[1:]:
            out = out & a
        return out

    preimages = {}
    for sig in src_faces:
        tgt = target_of(sig)
        if tgt is None:
            raise NoMaximalPreimage(f"face {sorted(sig)} has empty image")
        preimages.setdefault(tgt, []).append(sig)
    records = []
    for tgt_sig in sorted(tgt_faces, key=lambda s: sorted(s)):
        pre = preimages.get(tgt_sig, [])
        if not pre:
            raise NoMaximalPreimage("fibration misses a target orbit")
        best = min(pre, key=lambda s: (len(s), sorted(s)))
        if any(not (s >= best) for s in pre):
            raise NoMaximalPreimage("no unique biggest source orbit")
        dim_src, rk_src, rset_src = _orbit_dim(fam, eps_below, best, src_pts)
        dim_tgt, rk_tgt, rset_tgt = _orbit_dim(fam, eps_max, tgt_sig, tgt_pts)
        num = den = None
        if rk_src == rk_tgt:
            num, den = frozenset(rset_tgt), frozenset(rset_src)
        records.append(FiberRecord(dim_src - dim_tgt, rk_src - rk_tgt,
                                   best, tgt_sig, num, den))
    return records


def run_log_mmp(X, D, Delta):
    """Full parametric run: intervals, events with face maps, fiber data."""
    fam = build_family(X, D, Delta)
    cands, eps_max = critical_epsilons(fam)
    events, intervals = classify_breakpoints(fam, cands, eps_max)
    out_events = []
    for ev in events:
        lo = max((iv[0] for iv in intervals if iv[1] is not None and
                  iv[1] <= ev.epsilon), default=Fraction(0))
        below = (lo + ev.epsilon) / 2 if lo < ev.epsilon else lo
        fmap = _face_map_rows(fam, below, ev.epsilon)
        out_events.append(ContractionEvent(ev.epsilon, ev.kind,
                                           ev.pruned_rows, fmap))
    fibers = ()
    if eps_max is not None:
        lo = intervals[-1][0]
        below = (lo + eps_max) / 2
        fibers = tuple(general_fiber(fam, below, eps_max))
        # The general fiber sits over the open orbit: the target face with
        # the smallest maximal active set (the whole terminal polytope).
        open_sig = min((f.target_sig for f in fibers),
                       key=lambda s: (len(s), sorted(s)))
        open_rec = next(f for f in fibers if f.target_sig == open_sig)
        out_events.append(ContractionEvent(eps_max, FIBRATION, fiber=open_rec))
    return MMPTrace(tuple(intervals), tuple(out_events), eps_max, fibers, fam)


def _face_map_rows(fam, eps_src, eps_tgt):
    src_pts = fam.points_at(eps_src)
    tgt_pts = fam.points_at(eps_tgt)

    def target_of(sig):
        members = [act for _, act in tgt_pts if act >= sig]
        if not members:
            return None
        out = members[0]
        for a in members[1:]:
            out = out & a
        return out

    out = []
    for sig in sorted(signature_closure(src_pts), key=lambda s: sorted(s)):
        out.append((sig, target_of(sig)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Closed forms for the two standard families


def faces_case1(n, a, eps):
    """Signature -> codim map predicted for family one.

    Rows: 0..n are the edge rows (0 is the minus-sum ray), n+1 the beta row.
    Needs a_0 = 0 <= a_1 <= ... <= a_n with a_n != 0.
    """
    a = tuple(int(v) for v in a)
    eps = frac(eps)
    if len(a) != n + 1 or a[0] != 0 or list(a) != sorted(a) or a[n] == 0:
        raise PreconditionViolated("need a_0 = 0 <= ... <= a_n with a_n != 0")
    if eps >= 1 + a[n] or eps < 0:
        return {}
    out = {}
    idx = list(range(n + 1))
    for size in range(n + 1):
        for I in combinations(idx, size):
            rest = [1 + a[i] for i in idx if i not in I]
            mx, mn = max(rest), min(rest)
            if eps < mx:
                out[frozenset(I)] = len(I)
            if mn < eps < mx:
                out[frozenset(I) | {n + 1}] = len(I) + 1
            elif eps == mn == mx:
                out[frozenset(I) | {n + 1}] = len(I)
    return out


def faces_case2(r, a, eps):
    """Signature -> codim map for family two (rows 0..r, then v1, v2)."""
    a = tuple(int(v) for v in a)
    eps = frac(eps)
    if len(a) != r + 1 or a[0] != 0 or any(a[i] >= a[i + 1] for i in range(r)):
        raise PreconditionViolated("need a strictly increasing chain from 0")
    if eps >= 1 + a[r] or eps < 0:
        return {}
    out = {}
    idx = list(range(r + 1))
    v1, v2 = r + 1, r + 2
    for size in range(r + 1):
        for I in combinations(idx, size):
            rest = [1 + a[i] for i in idx if i not in I]
            mx, mn = max(rest), min(rest)
            if eps < mx:
                out[frozenset(I)] = len(I)
                out[frozenset(I) | {v1}] = len(I) + 1
                out[frozenset(I) | {v2}] = len(I) + 1
            if mn < eps < mx:
                out[frozenset(I) | {v1, v2}] = len(I) + 2
            elif eps == mn == mx:
                out[frozenset(I) | {v1, v2}] = len(I) + 1
    return out


@dataclass(frozen=True)
class TraceSkeleton:
    events: tuple       # ((eps, kind), ...), fibration included
    eps_max: Fraction

    def event_list(self):
        return list(self.events)


def predict_trace_case1(spec):
    """Closed-form event list for a restricted family-one spec."""
    from .classify import X1Spec, check_rc1, RCFail
    if not isinstance(spec, X1Spec):
        raise NotRestrictedForm("expected a family-one spec")
    rc = check_rc1(spec)
    if isinstance(rc, RCFail):
        raise NotRestrictedForm(rc.reason)
    a, n = spec.a, spec.n
    if a[n] == 0:
        return TraceSkeleton(((Fraction(1), FIBRATION),), Fraction(1))
    starts = [i for i in range(1, n + 1) if a[i] != a[i - 1]]
    levels = [Fraction(0)] + [Fraction(a[i]) for i in starts]
    k = len(starts)
    i_k = starts[-1]
    alpha_n_trivial = spec.G.is_trivial_root(spec.alphas[n])
    eps_max = Fraction(1 + a[n])
    events = []
    if i_k != n or not alpha_n_trivial:
        for l in range(k):
            events.append((1 + levels[l], FLIP))
    else:
        for l in range(k - 1):
            events.append((1 + levels[l], FLIP))
        events.append((1 + levels[k - 1], DIVISORIAL))
    events.append((eps_max, FIBRATION))
    return TraceSkeleton(tuple(events), eps_max)


def predict_trace_case2(spec):
    """Closed-form event list for a restricted family-two spec."""
    from .classify import X2Spec, check_rc2, RCFail
    if not isinstance(spec, X2Spec):
        raise NotRestrictedForm("expected a family-two spec")
    rc = check_rc2(spec)
    if isinstance(rc, RCFail):
        raise NotRestrictedForm(rc.reason)
    a, r = spec.a, spec.r
    eps_max = Fraction(1 + a[r])
    alpha_r_trivial = spec.G.is_trivial_root(spec.alphas[r])
    events = []
    if not alpha_r_trivial:
        for i in range(r):
            events.append((Fraction(1 + a[i]), FLIP))
    else:
        for i in range(r - 1):
            events.append((Fraction(1 + a[i]), FLIP))
        events.append((Fraction(1 + a[r - 1]), DIVISORIAL))
    events.append((eps_max, FIBRATION))
    return TraceSkeleton(tuple(events), eps_max)
