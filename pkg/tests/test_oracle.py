import itertools
import random
from collections import defaultdict
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weylcrit import GF, QQ, parse_expr
from weylcrit.oracle import (
    OracleError,
    act,
    act_lower,
    act_raise,
    apply_word,
    content_for_weight,
    d_map,
    descend,
    feasible_matrices,
    is_primitive,
    is_simply_primitive,
    monomial_rank,
    primitive_space,
    raise_certificate,
    weyl_context,
    z_op,
)

from support import FIELDS, contexts, dominant_weights, random_module_vector


def weyl_dimension(lam):
    out = Fraction(1)
    for i, j in itertools.combinations(range(len(lam)), 2):
        out *= Fraction(lam[i] - lam[j] + j - i, j - i)
    return int(out)


def word_action(a, b, m, words, field):
    """E_{a,b}^(m) on full tensor words: replace b by a at every m-subset of positions."""
    out = defaultdict(int)
    for w, c in words.items():
        spots = [k for k, x in enumerate(w) if x == b]
        for chosen in itertools.combinations(spots, m):
            w2 = list(w)
            for k in chosen:
                w2[k] = a
            out[tuple(w2)] += c
    return {w: field(c) for w, c in out.items() if field(c)}


def test_highest_vectors_as_words():
    assert weyl_context(3, (1, 1), QQ).highest().words() == {(1, 2, 1): 1, (2, 1, 1): -1}
    assert weyl_context(3, (0, 1), QQ).highest().words() == {(1, 2): 1, (2, 1): -1}
    assert weyl_context(2, (2,), QQ).highest().words() == {(1, 1): 1}


def test_sl2_action_examples():
    ctx = weyl_context(2, (2,), QQ)
    e = ctx.highest()
    f1 = act_lower(2, 1, 1, e)
    assert f1.words() == {(2, 1): 1, (1, 2): 1}
    assert act_lower(2, 1, 2, e).words() == {(2, 2): 1}
    assert act_lower(2, 1, 3, e).is_zero()
    assert act_raise(1, 2, 1, f1) == e.scale(2)
    assert act(1, 2, -1, e).is_zero() and act(1, 2, 0, e) == e
    with pytest.raises(OracleError):
        act_lower(1, 2, 1, e)
    with pytest.raises(OracleError):
        act_raise(2, 1, 1, e)


@pytest.mark.parametrize("field", FIELDS)
def test_wedge_model_matches_word_action(field):
    rng = random.Random(f"words-{field}")
    for ctx in contexts(max_height=2, ns=(2, 3), fields=(field,)):
        for _ in range(5):
            v = random_module_vector(rng, ctx)
            a, b = rng.sample(range(1, ctx.n + 1), 2)
            m = rng.randint(1, 2)
            assert act(a, b, m, v).words() == word_action(a, b, m, v.words(), field)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dimension_matches_weyl_formula(n):
    for w in dominant_weights(n, 3):
        for field in (QQ, GF(2)):
            ctx = weyl_context(n, w, field)
            assert ctx.dim == weyl_dimension(ctx.lam), (n, w)


def test_monomial_rank_examples():
    assert monomial_rank(weyl_context(3, (1, 1), GF(2))) == 8
    assert monomial_rank(weyl_context(4, (0, 2, 0), GF(3))) == 20
    ctx = weyl_context(3, (1, 0), QQ)
    assert (0, 0, 0) in feasible_matrices(ctx)


def test_content_for_weight():
    assert content_for_weight((2, 0), (2,), (2,)) == (2, 0)
    assert content_for_weight((2, 0), (2,), (0,)) == (1, 1)
    assert content_for_weight((2, 0), (2,), (1,)) is None
    assert content_for_weight((2, 0), (2,), (-4,)) is None


def test_descend_examples():
    ctx = weyl_context(2, (2,), QQ)
    low = weyl_context(2, (1,), QQ)
    e = ctx.highest()
    assert d_map(ctx, 1, e) == low.highest()
    assert d_map(ctx, 1, act_lower(2, 1, 1, e)) == act_lower(2, 1, 1, low.highest())
    assert d_map(ctx, 1, act_lower(2, 1, 2, e)).is_zero()
    assert descend(ctx, (0,), e) == e
    with pytest.raises(OracleError):
        descend(ctx, (3,), e)
    with pytest.raises(OracleError):
        descend(ctx, (-1,), e)


def test_primitivity_in_characteristic_two():
    f = GF(2)
    ctx = weyl_context(2, (2,), f)
    v = act_lower(2, 1, 1, ctx.highest())
    assert is_simply_primitive(v, ctx) and is_primitive(v, ctx)
    ctx3 = weyl_context(2, (3,), f)
    w = act_lower(2, 1, 2, ctx3.highest())
    assert is_simply_primitive(w, ctx3)
    assert not is_primitive(w, ctx3)
    assert not is_simply_primitive(act_lower(2, 1, 1, ctx3.highest()), ctx3)


def test_primitive_space_examples():
    for ctx in contexts(max_height=2, ns=(2, 3), fields=(QQ,)):
        assert primitive_space(ctx, ctx.omega) == [ctx.highest()]
    ctx = weyl_context(2, (2,), GF(2))
    (v,) = primitive_space(ctx, (0,))
    assert v == act_lower(2, 1, 1, ctx.highest())
    assert primitive_space(weyl_context(2, (2,), QQ), (0,)) == []


def test_apply_word():
    ctx = weyl_context(2, (2,), GF(3))
    v = act_lower(2, 1, 1, ctx.highest())
    assert apply_word([("D",)], v, ctx, (1,)) == d_map(ctx, 1, v)
    low = weyl_context(2, (1,), GF(3))
    assert apply_word([("raise", 1, 2, 1), ("D",)], v, ctx, (1,)) == low.highest()
    assert apply_word([("D",), ("raise", 1, 2, 1)], v, ctx, (1,)) == low.highest().scale(2)
    with pytest.raises(OracleError):
        apply_word([], v, ctx, (1,))
    with pytest.raises(OracleError):
        apply_word([("D",), ("spin",)], v, ctx, (1,))


def test_z_op_and_certificate_in_rank_one():
    ctx = weyl_context(2, (1,), QQ)
    v = act_lower(2, 1, 1, ctx.highest())
    assert raise_certificate(ctx, v) == (1, (1,), (2,))
    assert raise_certificate(ctx, ctx.highest()) == (1, (), ())
    low = weyl_context(2, (0,), QQ)
    assert z_op(ctx, 1, (1,), (2,), v) == low.highest().scale(-1)
    with pytest.raises(OracleError):
        raise_certificate(ctx, ctx.zero())
    with pytest.raises(OracleError):
        z_op(weyl_context(2, (0,), QQ), 1, (), (), low.highest())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_vector_of_is_linear(seed):
    rng = random.Random(seed)
    field = rng.choice(FIELDS)
    n = rng.randint(2, 3)
    ctx = weyl_context(n, tuple(rng.randint(0, 2) for _ in range(n - 1)), field)
    x = parse_expr("E(2,1) + 2*H(1)", n, field)
    y = parse_expr("E(2,1)^(2) - 1", n, field)
    assert ctx.vector_of(x + y) == ctx.vector_of(x) + ctx.vector_of(y)


def test_context_validation():
    with pytest.raises(OracleError):
        weyl_context(3, (1,), QQ)
    with pytest.raises(OracleError):
        weyl_context(3, (1, -1), QQ)
    with pytest.raises(OracleError):
        weyl_context(2, (1,), QQ).vector_of(parse_expr("1", 3, QQ))
