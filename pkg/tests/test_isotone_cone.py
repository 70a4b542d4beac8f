import numpy as np
import pytest

from ordercones.errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidInput,
    NegativeValues,
    NotIsotone,
    OrderNotDetermined,
    PointsNotSeparated,
)
from ordercones.isotone_cone import (
    Constant,
    Generator,
    Join,
    Meet,
    Scale,
    Sum,
    cobounded_commutative,
    eval_expr,
    expr_from_json,
    generated_cone_contains,
    is_isotone,
    minimal_witness,
    order_from_functions,
    stone_nachbin_express,
    upset_decomposition,
)
from ordercones.poset import build_poset, combine
from ordercones.sampling import random_isotone, random_poset, random_total_order, separating_family


def chain(*ids):
    return build_poset(ids, list(zip(ids, ids[1:])))


def grid(rows, cols):
    return combine(chain(*[str(i) for i in range(rows)]), chain(*[str(j) for j in range(cols)]), "product")


# --------------------------------------------------------------------------
# membership and induced orders


def test_is_isotone_on_chain():
    c = chain("a", "b", "c")
    assert is_isotone(c, [0, 1, 2])
    assert not is_isotone(c, [0, 2, 1])


def test_constants_are_isotone_everywhere():
    rng = np.random.default_rng(0)
    for _ in range(10):
        p = random_poset(rng, int(rng.integers(1, 7)))
        assert is_isotone(p, np.full(p.n, float(rng.normal())))


def test_is_isotone_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        is_isotone(chain("a", "b"), [0, 1, 2])


def test_order_from_single_function_is_chain():
    pre, separates = order_from_functions(["a", "b", "c"], [[0, 1, 2]])
    assert separates
    assert pre.leq("a", "c") and not pre.leq("c", "a")


def test_order_from_empty_family_is_complete():
    pre, separates = order_from_functions(["a", "b"], [])
    assert pre.rel.all()
    assert not separates


def test_order_from_non_separating_family():
    pre, separates = order_from_functions(["a", "b", "c"], [[0, 0, 1]])
    assert not separates
    assert pre.leq("a", "b") and pre.leq("b", "a")
    assert pre.leq("a", "c") and not pre.leq("c", "a")


# --------------------------------------------------------------------------
# expression trees


def test_eval_constant():
    assert eval_expr(Constant(3.0), [[0.0, 1.0]]).tolist() == [3.0, 3.0]
    assert eval_expr(Constant(3.0), [], size=2).tolist() == [3.0, 3.0]


def test_eval_join_of_generators():
    out = eval_expr(Join(Generator(0), Generator(1)), [[0, 1], [1, 0]])
    assert out.tolist() == [1.0, 1.0]


def test_eval_affine():
    out = eval_expr(Sum(Scale(2.0, Generator(0)), Constant(-1.0)), [[0, 1]])
    assert out.tolist() == [-1.0, 1.0]


def test_eval_bad_generator_index():
    with pytest.raises(IndexOutOfRange):
        eval_expr(Generator(3), [[0, 1]])


def test_negative_scale_factor_rejected():
    with pytest.raises(InvalidInput):
        Scale(-1.0, Constant(0.0))


def test_expr_json_round_trip():
    expr = Join(Meet(Constant(1.0), Sum(Scale(2.0, Generator(0)), Constant(-0.5))), Generator(1))
    assert expr_from_json(expr.to_json()) == expr


# --------------------------------------------------------------------------
# constructive reconstruction


def test_express_two_chain_affine_leaf():
    p = chain("a", "b")
    gens = [[0.0, 1.0]]
    expr = stone_nachbin_express(p, gens, [0.0, 5.0])
    assert np.allclose(eval_expr(expr, gens), [0.0, 5.0])
    # the interpolation slope through (a, b) is 5 with zero offset
    flat = str(expr.to_json())
    assert "'factor': 5.0" in flat


def test_express_constant_target_uses_constants():
    p = chain("a", "b", "c")
    gens = [[0.0, 1.0, 2.0]]
    expr = stone_nachbin_express(p, gens, [4.0, 4.0, 4.0])
    assert np.allclose(eval_expr(expr, gens), 4.0)
    assert "gen" not in str(expr.to_json())


def test_express_grid_max_from_projections():
    g = grid(2, 2)
    proj1 = [0.0, 0.0, 1.0, 1.0]
    proj2 = [0.0, 1.0, 0.0, 1.0]
    target = np.maximum(proj1, proj2)
    expr = stone_nachbin_express(g, [proj1, proj2], target)
    assert np.allclose(eval_expr(expr, [proj1, proj2]), target)


def test_express_rejects_wrong_order_or_target():
    p = chain("a", "b", "c")
    with pytest.raises(OrderNotDetermined):
        stone_nachbin_express(p, [[0.0, 0.0, 1.0]], [0.0, 1.0, 2.0])
    with pytest.raises(NotIsotone):
        stone_nachbin_express(p, [[0.0, 1.0, 2.0]], [0.0, 2.0, 1.0])


def test_express_random_exactness():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(40):
        p = random_poset(rng, int(rng.integers(1, 8)))
        gens = separating_family(rng, p)
        for _ in range(5):
            target = random_isotone(rng, p)
            got = eval_expr(stone_nachbin_express(p, gens, target), gens)
            worst = max(worst, float(np.max(np.abs(got - target))))
    assert worst <= 1e-9


def test_prune_preserves_evaluation():
    rng = np.random.default_rng(12)
    for _ in range(20):
        p = random_poset(rng, int(rng.integers(2, 7)))
        gens = separating_family(rng, p)
        target = random_isotone(rng, p)
        full = stone_nachbin_express(p, gens, target)
        pruned = stone_nachbin_express(p, gens, target, prune=True)
        assert np.array_equal(eval_expr(full, gens), eval_expr(pruned, gens))
        assert len(str(pruned.to_json())) <= len(str(full.to_json()))


# --------------------------------------------------------------------------
# telescoping decomposition


def test_upset_decomposition_merges_levels():
    c = chain("a", "b", "c")
    terms = upset_decomposition(c, [0.5, 0.5, 2.0])
    assert len(terms) == 2
    (c0, ind0), (c1, ind1) = terms
    assert c0 == pytest.approx(0.5) and ind0.tolist() == [1, 1, 1]
    assert c1 == pytest.approx(1.5) and ind1.tolist() == [0, 0, 1]


def test_upset_decomposition_constant():
    c = chain("a", "b")
    terms = upset_decomposition(c, [2.5, 2.5])
    assert len(terms) == 1
    assert terms[0][0] == pytest.approx(2.5) and terms[0][1].tolist() == [1, 1]


def test_upset_decomposition_drops_zero_base():
    c = chain("a", "b", "c")
    terms = upset_decomposition(c, [0.0, 1.0, 2.0])
    assert [(t[0], t[1].tolist()) for t in terms] == [(1.0, [0, 1, 1]), (1.0, [0, 0, 1])]


def test_upset_decomposition_rejects_bad_inputs():
    c = chain("a", "b")
    with pytest.raises(NotIsotone):
        upset_decomposition(c, [1.0, 0.0])
    with pytest.raises(NegativeValues):
        upset_decomposition(c, [-1.0, 0.0])


def test_upset_decomposition_reconstructs_random():
    rng = np.random.default_rng(13)
    for _ in range(100):
        p = random_poset(rng, int(rng.integers(1, 9)))
        f = np.maximum(random_isotone(rng, p), 0.0)
        total = np.zeros(p.n)
        for coeff, ind in upset_decomposition(p, f):
            assert coeff >= -1e-12
            assert is_isotone(p, ind)
            total += coeff * ind
        assert np.max(np.abs(total - f)) <= 1e-9


# --------------------------------------------------------------------------
# generated cones


def test_generated_cone_product_of_projections():
    g = grid(2, 2)
    proj1 = [0.0, 0.0, 1.0, 1.0]
    proj2 = [0.0, 1.0, 0.0, 1.0]
    product = (np.array(proj1) * np.array(proj2)).tolist()
    assert generated_cone_contains(g.elements, [proj1, proj2], product)
    assert not generated_cone_contains(g.elements, [proj1, proj2], [0.0, 1.0, 0.5, 0.2])
    assert generated_cone_contains(g.elements, [proj1, proj2], proj1)


def test_generated_cone_requires_separation():
    with pytest.raises(PointsNotSeparated):
        generated_cone_contains(["a", "b"], [[1.0, 1.0]], [0.0, 0.0])


def test_product_order_tensor_on_grids():
    # products of nonnegative isotone factor functions generate exactly the
    # cone of the product order, both directions, on grids up to 4x4
    rng = np.random.default_rng(14)
    for rows, cols in [(2, 2), (3, 2), (3, 3), (4, 4)]:
        g = grid(rows, cols)
        # nonnegative isotone factor families: the constant plus the
        # tail indicators 1_{i >= a} on each chain
        row_fns = np.vstack([np.ones(rows), np.triu(np.ones((rows, rows)))])
        col_fns = np.vstack([np.ones(cols), np.triu(np.ones((cols, cols)))])
        gens = []
        for rf in row_fns:
            for cf in col_fns:
                gens.append([rf[i] * cf[j] for i in range(rows) for j in range(cols)])
        for _ in range(25):
            f = random_isotone(rng, g)
            assert generated_cone_contains(g.elements, gens, f) == is_isotone(g, f)
            noisy = f + rng.normal(scale=0.4, size=g.n)
            assert generated_cone_contains(g.elements, gens, noisy) == is_isotone(g, noisy)


# --------------------------------------------------------------------------
# minimality


def test_minimal_witness_on_antichain():
    p = build_poset(["a", "b"], [])
    w = minimal_witness(p)
    assert (w.x, w.y) == ("a", "b")
    assert w.in_cone.tolist() == [0.0, 1.0]
    assert w.outside.tolist() == [1.0, 0.0]


def test_minimal_witness_none_for_chains():
    assert minimal_witness(chain("a", "b", "c")) is None


def test_minimal_witness_on_diamond_separates_all_pairs():
    p = build_poset(["bot", "m1", "m2", "top"], [("bot", "m1"), ("bot", "m2"), ("m1", "top"), ("m2", "top")])
    w = minimal_witness(p)
    assert {w.x, w.y} == {"m1", "m2"}
    ix, iy = p.index(w.x), p.index(w.y)
    for a in p.elements:
        for b in p.elements:
            if a == b:
                continue
            h = w.separator(a, b)
            assert is_isotone(p, h)
            assert h[ix] <= h[iy]
            assert h[p.index(a)] != h[p.index(b)]


def test_total_orders_pin_down_their_cone():
    rng = np.random.default_rng(15)
    for _ in range(25):
        p = random_total_order(rng, int(rng.integers(1, 8)))
        gens = separating_family(rng, p)
        for _ in range(5):
            f = rng.normal(size=p.n)
            assert generated_cone_contains(p.elements, gens, f) == is_isotone(p, f)


# --------------------------------------------------------------------------
# co-boundedness


def test_cobounded_chain():
    assert cobounded_commutative(chain("a", "b", "c")).cobounded


def test_cobounded_antichain_witness():
    res = cobounded_commutative(build_poset(["a", "b"], []))
    assert not res.cobounded
    w = res.witness
    assert w.condition == "sum"
    assert w.f.tolist() == [2.0, 1.0] and w.g.tolist() == [1.0, 2.0]
    assert w.lhs == pytest.approx(3.0) and w.rhs == pytest.approx(4.0)


def test_cobounded_v_poset_fails_inverse_condition():
    v = build_poset(["a", "b", "c"], [("a", "c"), ("b", "c")])
    res = cobounded_commutative(v)
    assert not res.cobounded
    w = res.witness
    assert w.condition == "inverse"
    assert (w.f > 0).all() and (w.g > 0).all()
    assert is_isotone(v, w.f) and is_isotone(v, w.g)
    assert w.lhs < w.rhs - 1e-9


def test_cobounded_requires_nonempty():
    with pytest.raises(InvalidInput):
        cobounded_commutative(build_poset([], []))


# --------------------------------------------------------------------------
# cone axioms on random members


def test_shift_makes_members_nonnegative():
    rng = np.random.default_rng(16)
    for _ in range(50):
        p = random_poset(rng, int(rng.integers(1, 8)))
        f = random_isotone(rng, p)
        shifted = f + np.max(np.abs(f))
        assert is_isotone(p, shifted) and (shifted >= 0).all()


def test_products_of_nonneg_members_stay_members():
    rng = np.random.default_rng(17)
    for _ in range(200):
        p = random_poset(rng, int(rng.integers(1, 8)))
        f = np.maximum(random_isotone(rng, p), 0.0)
        g = np.maximum(random_isotone(rng, p), 0.0)
        assert is_isotone(p, f * g, tol=0.0)


def test_cone_object_axioms_sampled():
    from ordercones.isotone_cone import IsotoneCone

    rng = np.random.default_rng(19)
    for _ in range(20):
        p = random_poset(rng, int(rng.integers(1, 7)))
        cone = IsotoneCone(p)
        f, g = random_isotone(rng, p), random_isotone(rng, p)
        assert cone.contains(np.full(p.n, float(rng.normal())))
        assert cone.contains(f + g)
        assert cone.contains(float(rng.exponential()) * f)
        assert cone.contains(np.maximum(f, g))
        assert cone.contains(np.minimum(f, g))
        assert cone.nonneg_contains(np.maximum(f, 0.0))


def test_direct_sum_membership_is_componentwise():
    rng = np.random.default_rng(18)
    for _ in range(40):
        p = random_poset(rng, int(rng.integers(1, 5)))
        q = random_poset(rng, int(rng.integers(1, 5)))
        union = combine(p, q, "disjoint_union")
        f = random_isotone(rng, p)
        g = random_isotone(rng, q)
        assert is_isotone(union, np.concatenate([f, g]))
        bad_f = f.copy()
        if p.n >= 2 and p.strict_pairs():
            x, y = p.strict_pairs()[0]
            bad_f[p.index(x)] = bad_f[p.index(y)] + 1.0
            assert is_isotone(union, np.concatenate([bad_f, g])) == is_isotone(p, bad_f)
