"""
Tour 3: the parametric program.

With the ample reference divisor D0 + D_last and the boundary choice that
keeps the last line, the polytope family {x : A x >= B + eps C} shrinks as
eps grows; breakpoints are flips or divisorial contractions and the run
ends in a fibration when admissibility dies.  The closed forms predict the
whole event list from the chain alone.
"""

from fractions import Fraction as F

from horokit import classify as cl, divisor as dv, mmp
from horokit.rootdata import (GroupProduct, Root, SL, Spin, TORUS_FACTOR,
                              TRIVIAL_FACTOR)


def run(spec, which="dn1"):
    X = cl.build_x1(spec) if isinstance(spec, cl.X1Spec) else cl.build_x2(spec)
    last = len(X.divisors) - 1
    D0, Dlast = X.boundary_divisor(0), X.boundary_divisor(last)
    Delta = (-1 * (Dlast if which == "dn1" else D0)) + dv.anticanonical(X)
    return mmp.run_log_mmp(X, D0 + Dlast, Delta)


shapes = [
    ("chain (0,1,2), colored end", cl.X1Spec(
        GroupProduct((SL(6), TRIVIAL_FACTOR, TORUS_FACTOR, SL(2))), Root(0, 3),
        (Root(1, 0), Root(2, 0), Root(3, 1)), (0, 1, 2))),
    ("chain (0,1,2), trivial end", cl.X1Spec(
        GroupProduct((SL(6), TRIVIAL_FACTOR, TORUS_FACTOR, TORUS_FACTOR)),
        Root(0, 3), (Root(1, 0), Root(2, 0), Root(3, 0)), (0, 1, 2))),
    ("family two, chain (0,2)", cl.X2Spec(
        GroupProduct((TRIVIAL_FACTOR, SL(2), Spin(7))),
        (Root(0, 0), Root(1, 1), Root(2, 1), Root(2, 3)), (0, 2))),
]

for label, spec in shapes:
    trace = run(spec)
    print(f"== {label} ==")
    print("events:", [(str(e), k) for e, k in trace.event_list()])
    print("intervals:")
    for lo, hi, sigs in trace.intervals:
        print(f"   [{lo}, {hi}):  {len(sigs)} faces")
    if isinstance(spec, cl.X1Spec):
        skeleton = mmp.predict_trace_case1(spec)
    else:
        skeleton = mmp.predict_trace_case2(spec)
    print("closed form agrees:", trace.event_list() == skeleton.event_list())
    fib = trace.events[-1].fiber
    print(f"terminal fiber: dim {fib.dim}, rank {fib.rank}")
    print()

print("== the first program: one fibration ==")
trace = run(shapes[0][1], which="d0")
print("events:", [(str(e), k) for e, k in trace.event_list()])
print("terminal moment point:", trace.family.v_at(trace.eps_max))

print("\n== rendering the family ==")
trace = run(shapes[0][1])
samples = sorted({(lo + hi) / 2 for lo, hi, _ in trace.intervals} |
                 {e.epsilon for e in trace.events})
svg = __import__("horokit.svgfig", fromlist=["render_family"]) \
    .render_family(trace.family, samples)
out = "demo_family.svg"
with open(out, "w") as fh:
    fh.write(svg)
print(f"wrote {out} with {len(samples)} panels")
