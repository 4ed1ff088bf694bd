"""
Grid of restricted specs for the oracle-equivalence acceptance run.

The engine's behavior (matrix rows, breakpoints, signatures, pruning)
depends only on the rank, the a-chain and the per-index triviality pattern;
the concrete groups enter through the weights alone.  The grid therefore
enumerates every a-chain (entries <= 4) times every realizable triviality
pattern, realizing each concretely over the allowed pool:

* equal-a ties force the later index into the factor-0 root set (restricted
  condition), realized inside A5 / B4 / C4;
* other non-trivial indices are carried by type-A1 factors on their first
  root; trivial indices by torus factors (the trivial group at index 0);
* index 0 is realized trivially throughout (its edge row is never pruned
  and its triviality does not enter the family data); a handful of
  explicit variants with a non-trivial leading index and with B4 / C4 /
  A1 anchors are appended for group coverage.
"""

from functools import lru_cache
from itertools import combinations_with_replacement, product

from horokit import classify as cl
from horokit.classify import X1Spec, X2Spec, RCFail
from horokit.rootdata import (GroupFactor, GroupProduct, Root, SL, Sp, Spin,
                              TORUS_FACTOR, TRIVIAL_FACTOR,
                              enumerate_smooth_quadruples)

G0_POOL = {
    "A5": GroupFactor("A", 5),
    "B4": GroupFactor("B", 4),
    "C4": GroupFactor("C", 4),
    "A1": GroupFactor("A", 1),
}


@lru_cache(maxsize=None)
def _quadruple_choices(g0_name, n_flag, size):
    f = G0_POOL[g0_name]
    out = [(b, tuple(sorted(R)))
           for b, R in enumerate_smooth_quadruples(f.family, f.rank, n_flag)
           if len(R) == size]
    return out


def _realize_case1(g0_name, chain, pattern):
    """pattern[i] in {'r0', 'outer', 'triv'}; returns an X1Spec or None."""
    n = len(chain) - 1
    k = sum(1 for p in pattern if p == "r0")
    n_flag = 1 if n == 1 else 2
    choices = _quadruple_choices(g0_name, n_flag, k)
    if not choices:
        return None
    beta_idx, r0 = choices[0]
    g0 = G0_POOL[g0_name]
    factors = [g0]
    alphas = []
    r0_iter = iter(r0)
    for i, p in enumerate(pattern):
        if p == "r0":
            alphas.append(Root(0, next(r0_iter)))
        elif p == "outer":
            factors.append(SL(2))
            alphas.append(Root(len(factors) - 1, 1))
        else:
            factors.append(TRIVIAL_FACTOR if i == 0 else TORUS_FACTOR)
            alphas.append(Root(len(factors) - 1, 0))
    try:
        spec = X1Spec(GroupProduct(tuple(factors)), Root(0, beta_idx),
                      tuple(alphas), chain)
    except Exception:
        return None
    return spec if not isinstance(cl.check_rc1(spec), RCFail) else None


def case1_grid(max_n=4, max_a=4):
    specs = []
    for n in range(1, max_n + 1):
        for rest in combinations_with_replacement(range(max_a + 1), n):
            chain = (0,) + rest
            forced = {j for j in range(1, n + 1)
                      if any(chain[i] == chain[j] for i in range(j))}
            free = [j for j in range(1, n + 1) if j not in forced]
            for bits in product(("outer", "triv"), repeat=len(free)):
                pattern = ["triv"] + [None] * n
                for j in forced:
                    pattern[j] = "r0"
                for j, b in zip(free, bits):
                    pattern[j] = b
                spec = _realize_case1("A5", chain, tuple(pattern))
                if spec is not None:
                    specs.append(spec)
    # group-coverage extras: other anchors and a non-trivial leading index
    extras = [
        ("B4", (0, 0, 1), ("triv", "r0", "outer")),
        ("B4", (0, 1, 1), ("triv", "outer", "r0")),
        ("B4", (0, 1), ("outer", "r0")),
        ("C4", (0, 0, 2), ("triv", "r0", "triv")),
        ("C4", (0, 1, 2), ("triv", "outer", "outer")),
        ("A1", (0, 1), ("triv", "outer")),
        ("A1", (0, 1, 2), ("triv", "triv", "outer")),
        ("A5", (0, 1, 2), ("outer", "triv", "outer")),
        ("A5", (0, 0, 1, 2), ("outer", "r0", "outer", "triv")),
    ]
    for name, chain, pattern in extras:
        spec = _realize_case1(name, chain, pattern)
        if spec is not None:
            specs.append(spec)
    # the rank-one same-factor configurations
    pair_specs = [
        X1Spec(GroupProduct((G0_POOL["B4"], SL(4))), Root(0, 2),
               (Root(1, 1), Root(1, 3)), (0, 1)),
        X1Spec(GroupProduct((G0_POOL["A5"], SL(4))), Root(0, 3),
               (Root(1, 1), Root(1, 2)), (0, 2)),
    ]
    for spec in pair_specs:
        if not isinstance(cl.check_rc1(spec), RCFail):
            specs.append(spec)
    return specs


TAILS = {
    "B3": (Spin(7), 1, 3),
    "C3": (Sp(6), 1, 2),
    "G2": (GroupFactor("G", 2), 1, 2),
}


def case2_grid(max_r=3, max_a=4):
    specs = []
    for tail_name, (tail, g, d) in TAILS.items():
        for r in range(1, max_r + 1):
            for rest in combinations_with_replacement(range(1, max_a + 1), r):
                if len(set(rest)) != r:
                    continue
                chain = (0,) + rest
                for bits in product(("outer", "triv"), repeat=r):
                    factors = [TRIVIAL_FACTOR]
                    alphas = [Root(0, 0)]
                    for b in bits:
                        if b == "outer":
                            factors.append(SL(2))
                            alphas.append(Root(len(factors) - 1, 1))
                        else:
                            factors.append(TORUS_FACTOR)
                            alphas.append(Root(len(factors) - 1, 0))
                    factors.append(tail)
                    t = len(factors) - 1
                    alphas += [Root(t, g), Root(t, d)]
                    spec = X2Spec(GroupProduct(tuple(factors)), tuple(alphas),
                                  chain)
                    if not isinstance(cl.check_rc2(spec), RCFail):
                        specs.append(spec)
    # head-pair configurations (sub-case a)
    spec_a = X2Spec(GroupProduct((SL(4), Sp(6))),
                    (Root(0, 1), Root(0, 2), Root(1, 2), Root(1, 3)), (0, 1))
    if not isinstance(cl.check_rc2(spec_a), RCFail):
        specs.append(spec_a)
    return specs
