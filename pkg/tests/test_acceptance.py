"""One test per acceptance criterion; all comparisons are exact."""

import itertools
import math
import random
from collections import Counter, defaultdict
from functools import cmp_to_key

import pytest

from support import (
    FIELDS,
    contexts,
    dominant_weights,
    flow_shapes,
    module_grid,
    random_lower,
    random_module_vector,
    random_u0,
)
from weylcrit import weights as W
from weylcrit.criterion import (
    check_irreducible_any,
    check_nonzero,
    cross_validate,
    matrices_up_to,
    verify_witness,
    weight_grid,
)
from weylcrit.exprs import parse_expr
from weylcrit.fields import GF, QQ
from weylcrit.flows import (
    OPS,
    Flow,
    NotWellDefined,
    apply_op,
    classify,
    enumerate_family,
    flow_compare,
    flow_less,
    in_family,
    inverse_op,
    l3_partner,
    nu,
    nu_sequence,
    op_target,
    sign_i,
)
from weylcrit.hyperalgebra import (
    UElem,
    all_interleavings,
    bracket_xi,
    eta_divided,
    matrix_from,
    r_raise,
    theta,
    xi,
)
from weylcrit.linalg import Echelon
from weylcrit.oracle import (
    act,
    act_h,
    act_raise,
    apply_word,
    d_map,
    descend,
    descend_raise_kernel,
    monomial_rank,
    raise_certificate,
    weyl_context,
    z_op,
)
from weylcrit.tableaux import (
    antilex_compare,
    enumerate_standard,
    is_standard,
    make_tableau,
    mat_of,
    regular_row_standard,
    shape,
    sigma,
    f_of,
    tab_sum,
    tableau_less,
)

EXAMPLE_FLOW = Flow(9, [(5, 9), (3, 8), (6, 7), (4, 6), (2, 4), (1, 3)])
EXAMPLE_T = make_tableau([(1, 2, 2, 3, 4), (2, 3, 3), (3, 4)], 4)


# --- 1 -----------------------------------------------------------------------


def test_criterion_01_worked_examples():
    """Worked examples reproduce exactly (flows, tableaux, sums, orders, raise example)."""
    # 6-sign of the six-edge flow
    c = classify(EXAMPLE_FLOW)
    assert (c.sources, c.sinks, c.transit, c.sigma) == ((1, 2, 5), (9, 8, 7), (3, 4, 6), (2, 3, 1))
    assert in_family(EXAMPLE_FLOW, 6, (1, 2, 5), (9, 8, 7))
    assert sign_i(EXAMPLE_FLOW, 6) == -1

    # L1 / L2 / L3 on that flow
    l1 = apply_op("L1", EXAMPLE_FLOW, 6)
    assert l1.as_flow() == Flow(9, [(5, 9), (3, 8), (6, 7), (4, 6), (2, 5), (1, 3)])
    with pytest.raises(NotWellDefined):
        apply_op("L2", EXAMPLE_FLOW, 6)
    l3 = apply_op("L3", EXAMPLE_FLOW, 6)
    assert Counter(l3.edges) == Counter([(4, 9), (3, 8), (6, 7), (4, 6), (2, 4), (1, 3)])
    assert not l3.is_flow()

    # inverse table example
    target = Flow(5, [(2, 5), (3, 4), (1, 3)])
    tag, pre = inverse_op(target, "L", 3)
    assert (tag, pre) == ("L1", Flow(5, [(2, 5), (3, 4), (1, 2)]))
    assert apply_op(tag, pre, 3).as_flow() == target

    # Mat_T and F_T for the (5,3,2,0) tableau
    assert is_standard(EXAMPLE_T) and shape(EXAMPLE_T) == (5, 3, 2, 0)
    assert mat_of(EXAMPLE_T) == matrix_from(4, {(1, 2): 2, (1, 3): 1, (1, 4): 1, (2, 3): 2, (3, 4): 1})
    assert f_of(EXAMPLE_T, QQ) == parse_expr("E(2,1)^(2)*E(3,1)*E(3,2)^(2)*E(4,1)*E(4,3)", 4, QQ)

    # sigma output and the undefined case
    gamma = Flow(4, [(1, 4), (2, 3)])
    assert in_family(gamma, 2, (1, 2), (4, 3))
    assert sigma(gamma, 2, EXAMPLE_T) == ((1, 1, 2, 2, 3), (2, 2, 3), (3, 3, 4), (4,))
    assert sigma(Flow(4, [(2, 4)]), 2, EXAMPLE_T) is None

    # tableau sum shapes
    S = make_tableau([(1, 2, 4, 5), (2, 2, 4), (5,), (5,)], 5)
    T = make_tableau([(3,), (3, 5), (4, 5)], 5)
    total = tab_sum(S, T)
    assert (shape(S), shape(T), shape(total)) == ((4, 3, 1, 1, 0), (1, 2, 2, 0, 0), (5, 5, 3, 1, 0))
    assert total == ((1, 2, 3, 4, 5), (2, 2, 3, 4, 5), (4, 5, 5), (5,), ())

    # flow comparison and nu values
    g = Flow(6, [(3, 6), (4, 5), (2, 4), (1, 2)])
    h = Flow(6, [(3, 6), (4, 5), (1, 4)])
    assert in_family(g, 4, (1, 3), (6, 5)) and in_family(h, 4, (1, 3), (6, 5))
    assert flow_less(g, h) and not flow_less(h, g)
    e = lambda *ks: tuple(int(k in ks) for k in range(1, 7))  # noqa: E731
    assert [nu(g, m) for m in (6, 5, 4, 3)] == [e(), e(3), e(3, 4), e(2, 3)]
    assert [nu(h, m) for m in (6, 5, 4, 3)] == [e(), e(3), e(3, 4), e(1, 3)]

    # r^omega_{alpha_l,1}(E^(2)) = (a_l - 1) E for every simple root and several omega
    for f in (QQ, GF(2), GF(3), GF(5)):
        for n in (2, 3, 4):
            for omega in dominant_weights(n, 4):
                for l in range(1, n):
                    F = UElem.E(f, n, l + 1, l, 2)
                    want = UElem.E(f, n, l + 1, l).scale(omega[l - 1] - 1)
                    assert r_raise(omega, l, l + 1, 1, F) == want


# --- 2 -----------------------------------------------------------------------


def _check_family_ops(n, i, a, b, family):
    for g in family:
        s = sign_i(g, i)
        c = classify(g)
        for op in OPS:
            try:
                out = apply_op(op, g, i)
            except NotWellDefined:
                continue
            ta, tb = op_target(op, i, a, b)
            if op == "L3":
                is_flow = out.is_flow()
                assert is_flow == (a[-1] - 1 not in c.transit)
                if is_flow:
                    img = out.as_flow()
                    assert in_family(img, i, ta, tb) and sign_i(img, i) == s
                else:
                    partner = l3_partner(g)
                    assert partner != g and in_family(partner, i, a, b)
                    assert Counter(apply_op("L3", partner, i).edges) == Counter(out.edges)
                    assert sign_i(partner, i) == -s
                    assert l3_partner(partner) == g
                    same = [
                        x for x in family
                        if x != g and _l3_image(x, i) == Counter(out.edges)
                    ]
                    assert same == [partner]
            else:
                img = out.as_flow()
                assert in_family(img, i, ta, tb), (op, g)
                assert sign_i(img, i) == -s, (op, g)


def _l3_image(g, i):
    try:
        return Counter(apply_op("L3", g, i).edges)
    except NotWellDefined:
        return None


def _check_bijection(n, i, group, ops, source, target, family):
    images = defaultdict(list)
    for g in family:
        for op in ops:
            try:
                out = apply_op(op, g, i)
            except NotWellDefined:
                continue
            if out.is_flow():
                images[out.as_flow()].append((op, g))
    tfam = enumerate_family(n, i, *target)
    assert set(images) == set(tfam), (group, source, target)
    for t in tfam:
        assert len(images[t]) == 1, (group, t, images[t])
        assert inverse_op(t, group, i) == images[t][0]


def test_criterion_02_flow_operators():
    """Flow operators: targets, sign changes, L3 pairing, bijections and flow order (n <= 6, q <= 2)."""
    families = 0
    for n in range(2, 7):
        for i, a, b in flow_shapes(n, 2):
            family = enumerate_family(n, i, a, b)
            families += 1
            assert len(set(family)) == len(family)
            assert all(in_family(g, i, a, b) for g in family)
            _check_family_ops(n, i, a, b, family)
            q = len(a)
            if q and a[-1] - 1 >= 1 and a[-1] - 1 not in a:
                _check_bijection(n, i, "L", ("L1", "L2", "L3"), (a, b), op_target("L1", i, a, b), family)
            if not q or (a[-1] < i and i + 1 < b[-1]):
                _check_bijection(n, i, "M", ("M1", "M2"), (a, b), op_target("M1", i, a, b), family)
            if q and b[-1] + 1 <= n and b[-1] + 1 not in b:
                _check_bijection(n, i, "R", ("R",), (a, b), op_target("R", i, a, b), family)
            # strict total order, and nu sequences compare antilexicographically
            ordered = sorted(family, key=cmp_to_key(flow_compare))
            for x, y in itertools.combinations(range(len(ordered)), 2):
                g, h = ordered[x], ordered[y]
                assert flow_compare(g, h) == -1 and flow_compare(h, g) == 1
                assert antilex_compare(nu_sequence(g), nu_sequence(h)) == -1
            assert all(flow_compare(g, g) == 0 for g in family)
    assert families == sum(
        math.comb(i, q) * math.comb(n - i, q) for n in range(2, 7) for i in range(1, n) for q in range(3)
    )
    # matrix identification
    assert Flow(4, [(1, 2), (1, 4), (2, 3), (3, 4)]).matrix() == matrix_from(
        4, {(1, 2): 1, (1, 4): 1, (2, 3): 1, (3, 4): 1}
    )


# --- 3 -----------------------------------------------------------------------


def test_criterion_03_commutators_equal_flow_sums():
    """Nested commutators equal the flow-sum operator (n <= 5, q <= 2, three interleavings, 50 elements)."""
    rng = random.Random(3)
    cases = 0
    for n in range(2, 6):
        for i, a, b in flow_shapes(n, 2):
            per_j = [all_interleavings(aj, i, bj - 1) for aj, bj in zip(reversed(a), reversed(b))]
            combos = list(itertools.product(*per_j))
            rng.shuffle(combos)
            chosen = combos[:3]
            assert len(chosen) == min(3, len(combos))
            for k in range(50):
                field = FIELDS[k % len(FIELDS)]
                P = random_u0(rng, field, n, max_height=4)
                want = xi(i, a, b, P)
                for seqs in chosen:
                    assert bracket_xi(i, seqs, P) == want, (n, i, a, b, seqs, P)
            cases += 1
    assert cases == 52


# --- 4 -----------------------------------------------------------------------


def test_criterion_04_standard_basis():
    """Standard tableaux give a basis: count = monomial rank = basis size; straightening is triangular."""
    for n, omega, field in module_grid(3):
        ctx = weyl_context(n, omega, field)
        count = len(enumerate_standard(ctx.lam))
        assert ctx.dim == count == monomial_rank(ctx), (n, omega, field)
        ctx.contents()  # builds per-weight echelons, raising if the basis is dependent
        for T in regular_row_standard(ctx.lam):
            coords = ctx.tableau_coords(ctx.monomial_vector(mat_of(T)))
            if is_standard(T):
                assert coords == {T: 1}
            else:
                assert all(tableau_less(T, S) for S in coords), (n, omega, field, T, coords)


# --- 5 -----------------------------------------------------------------------

GRID = contexts(3)
INSTANCES = 200


def _act_u0(P, v, n):
    """H-monomial part of P (all N = 0) acting on a module vector."""
    out = v.scale(0)
    for (N, H), c in P.terms.items():
        assert not any(N)
        w = v
        for l, k in enumerate(H, start=1):
            if k:
                w = act_h(l, k, w, n)
        out = out + w.scale(c)
    return out


def _E(a, b, m, v):
    return v.scale(0) if m < 0 else act(a, b, m, v)


def _eq9_holds(n, v, rng):
    m = rng.randint(0, 3)
    lhs_rhs = []
    if n >= 3:
        i, j, k = rng.sample(range(1, n + 1), 3)
        lhs = _E(i, j, 1, _E(j, k, m, v)) - _E(j, k, m, _E(i, j, 1, v))
        lhs_rhs.append((lhs, _E(i, k, 1, _E(j, k, m - 1, v))))
        lhs = _E(i, j, 1, _E(k, i, m, v)) - _E(k, i, m, _E(i, j, 1, v))
        lhs_rhs.append((lhs, -_E(k, j, 1, _E(k, i, m - 1, v))))
    i = rng.randint(1, n - 1)
    lhs = _E(i, i + 1, 1, _E(i + 1, i, m, v)) - _E(i + 1, i, m, _E(i, i + 1, 1, v))
    inner = act_h(i, 1, v, n) + v.scale(1 - m)
    lhs_rhs.append((lhs, _E(i + 1, i, m - 1, inner)))
    l = rng.randint(1, n - 1)
    i, j = rng.sample(range(1, n + 1), 2)
    shift = m * ((l == i) - (l == j) - (l + 1 == i) + (l + 1 == j))
    lhs = act_h(l, 1, _E(i, j, m, v), n)
    rhs = _E(i, j, m, act_h(l, 1, v, n) + v.scale(shift))
    lhs_rhs.append((lhs, rhs))
    lhs_rhs.append((_E(i, j, m, _E(i, j, 1, v)), _E(i, j, m + 1, v).scale(m + 1)))
    return all(x == y for x, y in lhs_rhs)


def _valid_deltas(omega):
    return [i for i in range(1, len(omega) + 1) if omega[i - 1] > 0]


def test_criterion_05_operators_match_module():
    """Symbolic operators match the module model: raises, commutation rules, twisting, descents, words, z."""
    rng = random.Random(5)
    lowered = [c for c in GRID if any(c.omega)]

    # raise operators against direct action
    for _ in range(INSTANCES):
        ctx = rng.choice(GRID)
        n = ctx.n
        F = random_lower(rng, ctx.field, n)
        i, j = sorted(rng.sample(range(1, n + 1), 2))
        m = rng.randint(1, 3)
        assert ctx.vector_of(r_raise(ctx.omega, i, j, m, F)) == act_raise(i, j, m, ctx.vector_of(F))

    # commutation rules on module vectors
    for _ in range(INSTANCES):
        ctx = rng.choice(GRID)
        assert _eq9_holds(ctx.n, random_module_vector(rng, ctx), rng)

    # twisting: d(P v) = theta_delta(P) d(v)
    for _ in range(INSTANCES):
        ctx = rng.choice(lowered)
        n = ctx.n
        i = rng.choice(_valid_deltas(ctx.omega))
        P = UElem(ctx.field, n, {((0,) * len(W.lower_pairs(n)), tuple(rng.randint(0, 2) for _ in range(n - 1))): 1})
        v = random_module_vector(rng, ctx)
        delta = W.fundamental(n, i)
        assert d_map(ctx, i, _act_u0(P, v, n)) == _act_u0(theta(delta, P), d_map(ctx, i, v), n)

    # descents commute and compose
    pairs = [(c, i, j) for c in lowered for i in range(1, c.n) for j in range(1, c.n)
             if W.is_dominant(W.sub(c.omega, W.add(W.fundamental(c.n, i), W.fundamental(c.n, j))))]
    for _ in range(INSTANCES):
        ctx, i, j = rng.choice(pairs)
        v = random_module_vector(rng, ctx)
        n = ctx.n
        mid_i = weyl_context(n, W.sub(ctx.omega, W.fundamental(n, i)), ctx.field)
        mid_j = weyl_context(n, W.sub(ctx.omega, W.fundamental(n, j)), ctx.field)
        both = descend(ctx, W.add(W.fundamental(n, i), W.fundamental(n, j)), v)
        assert d_map(mid_i, j, d_map(ctx, i, v)) == d_map(mid_j, i, d_map(ctx, j, v)) == both

    # kernel of a descent is spanned by weight vectors
    kernels = {}
    for _ in range(INSTANCES):
        ctx = rng.choice(lowered)
        i = rng.choice(_valid_deltas(ctx.omega))
        if (ctx, i) not in kernels:
            basis = ctx.standard_basis()
            ech = Echelon(ctx.field)
            for _, v in basis:
                ech.add(d_map(ctx, i, v).terms)
            vecs = []
            for combo in ech.kernel:
                acc = ctx.zero()
                for g, c in combo.items():
                    acc = acc + basis[g][1].scale(c)
                vecs.append(acc)
            kernels[(ctx, i)] = vecs
        vecs = kernels[(ctx, i)]
        v = ctx.zero()
        for w in vecs:
            v = v + w.scale(rng.randint(0, 3))
        assert not d_map(ctx, i, v)
        for part in v.split_contents(ctx.n).values():
            assert not d_map(ctx, i, part)

    # words with one descent against eta / theta words
    for _ in range(INSTANCES):
        ctx = rng.choice(lowered)
        n = ctx.n
        deltas = [d for d in dominant_weights(n, sum(ctx.omega)) if any(d)
                  and W.is_dominant(W.sub(ctx.omega, d))]
        delta = rng.choice(deltas)
        F = random_lower(rng, ctx.field, n, max_height=3)
        k = rng.randint(0, 3)
        tokens = []
        for _ in range(k):
            i, j = sorted(rng.sample(range(1, n + 1), 2))
            tokens.append(("raise", i, j, rng.randint(1, 2)))
        tokens.insert(rng.randint(0, k), ("D",))
        G = F
        for tok in reversed(tokens):
            G = theta(delta, G) if tok[0] == "D" else eta_divided(tok[1], tok[2], tok[3], G)
        low = weyl_context(n, W.sub(ctx.omega, delta), ctx.field)
        assert apply_word(tokens, ctx.vector_of(F), ctx, delta) == low.vector_of(G)

    # commutator of raises around d equals the flow-sum operator
    for _ in range(INSTANCES):
        ctx = rng.choice(lowered)
        n = ctx.n
        i = rng.choice(_valid_deltas(ctx.omega))
        shapes = [s for s in flow_shapes(n, 2) if s[0] == i]
        _, a, b = rng.choice(shapes)
        F = random_lower(rng, ctx.field, n)
        low = weyl_context(n, W.sub(ctx.omega, W.fundamental(n, i)), ctx.field)
        assert z_op(ctx, i, a, b, ctx.vector_of(F)) == low.vector_of(xi(i, a, b, F))


# --- 6 -----------------------------------------------------------------------


def test_criterion_06_no_simply_primitive_kernel():
    """Jointly killed by all descents and simple raises means zero, on every nonzero weight of the grid."""
    checked = 0
    for ctx in contexts(3, nonzero=True):
        assert descend_raise_kernel(ctx) == [], ctx
        checked += 1
    assert checked == 3 * (3 + 9 + 19)


# --- 7 -----------------------------------------------------------------------


def test_criterion_07_checker_matches_oracle():
    """Checker verdicts equal oracle verdicts and every witness replays (n <= 3, coefficients <= 2, height <= 4)."""
    report = cross_validate(3, 2, 4, [QQ, GF(2), GF(3)])
    assert report["cells"] == 3 * (3 + 9)
    assert report["cases"] == 639
    assert report["mismatches"] == []


# --- 8 -----------------------------------------------------------------------


def test_criterion_08_certificate_is_nonzero():
    """z at the raise certificate is nonzero on 100 random nonzero vectors per context."""
    rng = random.Random(8)
    for ctx in contexts(3, nonzero=True):
        seen = 0
        while seen < 100:
            v = random_module_vector(rng, ctx, max_terms=4)
            if not v:
                continue
            i, a, b = raise_certificate(ctx, v)
            assert z_op(ctx, i, a, b, v), (ctx, v)
            seen += 1


# --- 9 -----------------------------------------------------------------------


def test_criterion_09_sl2_ladder():
    """E^(m) e+ in Delta(a omega_1) is nonzero exactly for 0 <= m <= a (a <= 6, Q and F_2, F_3, F_5)."""
    for field in (QQ, GF(2), GF(3), GF(5)):
        for a in range(7):
            for m in range(a + 3):
                F = UElem.E(field, 2, 2, 1, m) if m else UElem.one(field, 2)
                res = check_nonzero(F, (a,))
                assert res.nonzero == (m <= a), (field, a, m)
                for cw in res.witnesses:
                    assert verify_witness(cw.component, (a,), cw.witness)


# --- 10 ----------------------------------------------------------------------


def test_criterion_10_raising_only_checker():
    """Raising-only checker equals the oracle over Q and implies the full checker over F_p."""
    for field in (QQ, GF(2), GF(3)):
        for n in (2, 3):
            for omega in weight_grid(n, 2):
                ctx = weyl_context(n, omega, field)
                for N in matrices_up_to(n, 4):
                    F = UElem.monomial(field, n, N)
                    irr = check_irreducible_any(F, omega)
                    if field.is_rational:
                        assert irr == bool(ctx.vector_of(F)), (n, omega, N)
                    elif irr:
                        assert check_nonzero(F, omega).nonzero, (field, n, omega, N)
