"""Expression-tree genome: evaluation semantics, variation, serialization."""

from random import Random

import pytest

from bentsmith.tree import (
    DepthPolicy,
    OPERATOR_ARITY,
    TreeOps,
    UnboundVariableError,
    all_paths,
    cx_context,
    cx_one_point,
    cx_simple,
    cx_size_fair,
    cx_tree,
    cx_uniform,
    default_max_depth,
    depth,
    eval_tree,
    format_tree,
    grow,
    mut_subtree,
    parse_tree,
    random_tree,
    replace_at,
    size,
    subtree_at,
)


def naive_eval(node, assignment):
    """Per-assignment interpreter, the independent oracle for eval_tree."""
    tag = node[0]
    if tag == "x":
        return assignment[node[1]]
    if tag == "NOT":
        return 1 ^ naive_eval(node[1], assignment)
    if tag == "IF":
        cond = naive_eval(node[1], assignment)
        return naive_eval(node[2], assignment) if cond else naive_eval(node[3], assignment)
    a = naive_eval(node[1], assignment)
    b = naive_eval(node[2], assignment)
    return {
        "OR": a | b,
        "XOR": a ^ b,
        "AND": a & b,
        "AND2": a & (1 ^ b),
        "XNOR": 1 ^ a ^ b,
    }[tag]


def naive_table(node, n):
    bits = []
    for i in range(1 << n):
        assignment = {k: (i >> (n - k)) & 1 for k in range(1, n + 1)}
        bits.append(naive_eval(node, assignment))
    return bits


class TestEvaluation:
    def test_operator_semantics_fixed_vectors(self):
        x1, x2, x3 = ("x", 1), ("x", 2), ("x", 3)
        cases = [
            (("NOT", x1), 1, [1, 0]),
            (("OR", x1, x2), 2, [0, 1, 1, 1]),
            (("XOR", x1, x2), 2, [0, 1, 1, 0]),
            (("AND", x1, x2), 2, [0, 0, 0, 1]),
            (("AND2", x1, x2), 2, [0, 0, 1, 0]),
            (("XNOR", x1, x2), 2, [1, 0, 0, 1]),
            (("IF", x1, x2, x3), 3, [0, 1, 0, 1, 0, 0, 1, 1]),
            (x2, 2, [0, 1, 0, 1]),
        ]
        for node, n, expected in cases:
            assert eval_tree(node, n).bits.tolist() == expected, format_tree(node)

    def test_if_selects_by_condition(self):
        node = ("IF", ("x", 1), ("x", 2), ("NOT", ("x", 2)))
        assert eval_tree(node, 2).bits.tolist() == [1, 0, 0, 1]

    def test_matches_naive_interpreter_on_random_trees(self):
        rng = Random(41)
        terminals = tuple(("x", k) for k in range(1, 5))
        for _ in range(1000):
            node = grow(rng, 4, terminals)
            assert eval_tree(node, 4).bits.tolist() == naive_table(node, 4)

    def test_deterministic(self):
        rng = Random(43)
        node = random_tree(rng, DepthPolicy(5), tuple(("x", k) for k in range(1, 7)))
        assert eval_tree(node, 6) == eval_tree(node, 6)

    def test_unbound_variable(self):
        with pytest.raises(UnboundVariableError):
            eval_tree(("XOR", ("x", 1), ("x", 5)), 4)
        with pytest.raises(UnboundVariableError):
            eval_tree(("f", 0), 4)


class TestSerialization:
    def test_example_round_trip(self):
        text = "IF(x0, f0, XOR(x1, f1))"
        assert format_tree(parse_tree(text)) == text

    def test_round_trip_random_trees(self):
        rng = Random(47)
        terminals = (("x", 1), ("x", 2), ("x", 3), ("f", 0), ("f", 1))
        for _ in range(300):
            node = grow(rng, 4, terminals)
            assert parse_tree(format_tree(node)) == node

    def test_whitespace_tolerated(self):
        assert parse_tree("XOR( x1 ,x2 )") == ("XOR", ("x", 1), ("x", 2))

    def test_parse_errors(self):
        for bad in ["", "IF(x1, x2)", "FOO(x1, x2)", "XOR(x1, x2) junk",
                    "XOR(x1", "x1)", "NOT()", "x", "AND(x1, y2)"]:
            with pytest.raises(ValueError):
                parse_tree(bad)


class TestStructure:
    def test_depth_and_size(self):
        leaf = ("x", 1)
        assert depth(leaf) == 0 and size(leaf) == 1
        node = ("IF", leaf, ("NOT", leaf), ("XOR", leaf, ("NOT", leaf)))
        assert depth(node) == 3
        assert size(node) == 8

    def test_paths_addressing(self):
        node = ("XOR", ("x", 1), ("NOT", ("x", 2)))
        paths = all_paths(node)
        assert paths == [(), (0,), (1,), (1, 0)]
        assert subtree_at(node, (1, 0)) == ("x", 2)
        swapped = replace_at(node, (1, 0), ("x", 3))
        assert swapped == ("XOR", ("x", 1), ("NOT", ("x", 3)))
        assert node == ("XOR", ("x", 1), ("NOT", ("x", 2)))  # original untouched

    def test_default_depth_rules(self):
        assert default_max_depth(6) == 5
        assert default_max_depth(12) == 7
        assert default_max_depth(16) == 11
        assert default_max_depth(6, "min") == 1
        assert default_max_depth(12, "min") == 5
        with pytest.raises(ValueError):
            default_max_depth(8, "median")

    def test_policy_validation(self):
        with pytest.raises(ValueError):
            DepthPolicy(0)


class TestVariation:
    terminals = tuple(("x", k) for k in range(1, 7))
    policy = DepthPolicy(4)

    def test_mutation_respects_depth(self):
        rng = Random(53)
        for _ in range(500):
            t = random_tree(rng, self.policy, self.terminals)
            m = mut_subtree(t, self.policy, rng, self.terminals)
            assert depth(m) <= self.policy.max_depth

    def test_mutating_leaf_tree_grows_fresh_tree(self):
        rng = Random(59)
        seen_internal = False
        for _ in range(50):
            m = mut_subtree(("x", 1), self.policy, rng, self.terminals)
            assert depth(m) <= self.policy.max_depth
            seen_internal |= m[0] in OPERATOR_ARITY
        assert seen_internal

    def test_crossover_depth_enforced_many_pairs(self):
        rng = Random(61)
        for _ in range(10_000):
            a = random_tree(rng, self.policy, self.terminals)
            b = random_tree(rng, self.policy, self.terminals)
            child = cx_tree(a, b, self.policy, rng)
            assert depth(child) <= self.policy.max_depth

    def test_crossover_closure_over_node_set(self):
        rng = Random(67)
        allowed = set(OPERATOR_ARITY) | {"x"}
        for _ in range(300):
            a = random_tree(rng, self.policy, self.terminals)
            b = random_tree(rng, self.policy, self.terminals)
            child = cx_tree(a, b, self.policy, rng)
            stack = [child]
            while stack:
                node = stack.pop()
                assert node[0] in allowed
                if node[0] in OPERATOR_ARITY:
                    stack.extend(node[1:])

    def test_one_point_identical_parents(self):
        rng = Random(71)
        for _ in range(100):
            a = random_tree(rng, self.policy, self.terminals)
            assert cx_one_point(a, a, self.policy, rng) == a

    def test_each_crossover_produces_valid_children(self):
        rng = Random(73)
        for cx in (cx_simple, cx_uniform, cx_size_fair, cx_one_point, cx_context):
            for _ in range(200):
                a = random_tree(rng, self.policy, self.terminals)
                b = random_tree(rng, self.policy, self.terminals)
                child = cx(a, b, self.policy, rng)
                assert depth(child) <= self.policy.max_depth

    def test_grow_respects_budget_and_full_reaches_it(self):
        rng = Random(79)
        for _ in range(200):
            assert depth(grow(rng, 3, self.terminals)) <= 3
        from bentsmith.tree import full
        for _ in range(50):
            assert depth(full(rng, 3, self.terminals)) == 3

    def test_ops_bundle(self):
        rng = Random(83)
        ops = TreeOps.direct(4, DepthPolicy(4))
        g = ops.random(rng)
        assert depth(g) <= 4
        assert ops.deserialize(ops.serialize(g)) == g
        table = ops.to_table(g)
        assert table.n == 4
        child = ops.crossover(g, ops.random(rng), rng)
        assert depth(child) <= 4
        mutant = ops.mutate(g, rng)
        assert depth(mutant) <= 4
