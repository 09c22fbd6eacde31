"""Expression-tree genome: Boolean operator trees evaluated to truth tables.

Nodes are immutable tuples.  A leaf is ``('x', k)`` for an input variable or
``('f', i)`` for a seed-function terminal; an internal node is
``(op, child, ...)`` with op one of NOT, OR, XOR, AND, AND2, XNOR, IF.
AND2 is AND with its second input inverted; IF returns its second argument
when the first evaluates to 1 and its third otherwise.

Evaluation is bitwise over the whole truth table packed into one big integer,
so a single pass over the tree covers all 2^n assignments: variable k is
bound to the integer whose bit i equals the k-th bit of the assignment
encoded by index i.

Trees serialize to prefix notation such as ``IF(x0, f0, XOR(x1, f1))`` and
the parser accepts the same grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from random import Random

from .core import TruthTable

_LEAF_RE = re.compile(r"^([xf])(\d+)$")

OPERATOR_ARITY = {"NOT": 1, "OR": 2, "XOR": 2, "AND": 2, "AND2": 2, "XNOR": 2, "IF": 3}
_OPERATORS = tuple(OPERATOR_ARITY)
_LEAF_TAGS = ("x", "f")

_CX_RETRIES = 8


class UnboundVariableError(ValueError):
    """A leaf refers to a variable or terminal the evaluation does not bind."""


@dataclass(frozen=True)
class DepthPolicy:
    """Depth cap for every genome; a single leaf counts as depth 0."""

    max_depth: int

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth}")


def default_max_depth(n: int, rule: str = "max") -> int:
    """Depth cap from the variable count: max(5, n-5), or min(5, n-5) floored at 1.

    The min rule collapses to useless depth-1 trees for n <= 6 and is kept
    only as a selectable alternative; max is the default.
    """
    if rule == "max":
        return max(5, n - 5)
    if rule == "min":
        return max(1, min(5, n - 5))
    raise ValueError(f"unknown depth rule {rule!r}; expected 'max' or 'min'")


def is_leaf(node) -> bool:
    return node[0] in _LEAF_TAGS


def depth(node) -> int:
    if is_leaf(node):
        return 0
    return 1 + max(depth(child) for child in node[1:])


def size(node) -> int:
    if is_leaf(node):
        return 1
    return 1 + sum(size(child) for child in node[1:])


def all_paths(node) -> list:
    """Preorder list of node coordinates; () addresses the root."""
    out = []

    def walk(nd, path):
        out.append(path)
        if not is_leaf(nd):
            for i, child in enumerate(nd[1:]):
                walk(child, path + (i,))

    walk(node, ())
    return out


def subtree_at(node, path):
    for i in path:
        node = node[i + 1]
    return node


def replace_at(node, path, sub):
    if not path:
        return sub
    i = path[0]
    children = list(node[1:])
    children[i] = replace_at(children[i], path[1:], sub)
    return (node[0],) + tuple(children)


def iter_leaves(node):
    if is_leaf(node):
        yield node
    else:
        for child in node[1:]:
            yield from iter_leaves(child)


# --- evaluation over packed tables ---------------------------------------

@lru_cache(maxsize=None)
def variable_pattern(num_vars: int, bit_position: int) -> int:
    """Packed table of the projection x -> bit ``bit_position`` of the index."""
    block = 1 << bit_position
    ones = (1 << block) - 1
    pattern = 0
    for start in range(block, 1 << num_vars, block << 1):
        pattern |= ones << start
    return pattern


def evaluate_packed(node, bindings: dict, mask: int) -> int:
    """Evaluate a tree over packed truth-table words under the given bindings."""
    tag = node[0]
    if tag in _LEAF_TAGS:
        try:
            return bindings[node]
        except KeyError:
            raise UnboundVariableError(f"terminal {format_tree(node)} is not bound") from None
    if tag == "NOT":
        return mask ^ evaluate_packed(node[1], bindings, mask)
    first = evaluate_packed(node[1], bindings, mask)
    if tag == "IF":
        then = evaluate_packed(node[2], bindings, mask)
        other = evaluate_packed(node[3], bindings, mask)
        return (first & then) | ((mask ^ first) & other)
    second = evaluate_packed(node[2], bindings, mask)
    if tag == "OR":
        return first | second
    if tag == "XOR":
        return first ^ second
    if tag == "AND":
        return first & second
    if tag == "AND2":
        return first & (mask ^ second)
    if tag == "XNOR":
        return mask ^ first ^ second
    raise ValueError(f"unknown operator {tag!r}")


@lru_cache(maxsize=None)
def _direct_bindings(n: int):
    # variable k of n is the (n-k)-th bit of the table index, x1 most significant
    return {("x", k): variable_pattern(n, n - k) for k in range(1, n + 1)}


def eval_tree(t, n: int) -> TruthTable:
    """Truth table of the tree over input variables x1..xn."""
    for leaf in iter_leaves(t):
        if leaf[0] != "x" or not 1 <= leaf[1] <= n:
            raise UnboundVariableError(
                f"terminal {format_tree(leaf)} is not an input variable of n={n}"
            )
    value = evaluate_packed(t, _direct_bindings(n), (1 << (1 << n)) - 1)
    return TruthTable.from_packed(n, value)


# --- serialization --------------------------------------------------------

def format_tree(node) -> str:
    tag = node[0]
    if tag in _LEAF_TAGS:
        return f"{tag}{node[1]}"
    return f"{tag}(" + ", ".join(format_tree(child) for child in node[1:]) + ")"


def parse_tree(text: str):
    """Parse the prefix notation emitted by :func:`format_tree`."""
    tokens = re.findall(r"[A-Za-z][A-Za-z0-9]*|\(|\)|,|\S", text)
    pos = 0

    def error(msg):
        return ValueError(f"tree parse error at token {pos}: {msg} in {text!r}")

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise error(f"expected {expected or 'a token'}, found {tok!r}")
        pos += 1
        return tok

    def node():
        tok = take()
        if tok in OPERATOR_ARITY:
            take("(")
            children = [node()]
            while peek() == ",":
                take(",")
                children.append(node())
            take(")")
            if len(children) != OPERATOR_ARITY[tok]:
                raise error(f"{tok} takes {OPERATOR_ARITY[tok]} arguments, got {len(children)}")
            return (tok, *children)
        m = _LEAF_RE.match(tok)
        if m is None:
            raise error(f"unknown name {tok!r}")
        return (m.group(1), int(m.group(2)))

    result = node()
    if pos != len(tokens):
        raise error("trailing input")
    return result


# --- random generation and variation --------------------------------------

def grow(rng: Random, budget: int, terminals) -> tuple:
    """Random tree of depth at most ``budget``; leaves may appear early."""
    if budget <= 0:
        return terminals[rng.randrange(len(terminals))]
    pick = rng.randrange(len(_OPERATORS) + len(terminals))
    if pick >= len(_OPERATORS):
        return terminals[pick - len(_OPERATORS)]
    op = _OPERATORS[pick]
    return (op, *(grow(rng, budget - 1, terminals) for _ in range(OPERATOR_ARITY[op])))


def full(rng: Random, target_depth: int, terminals) -> tuple:
    """Random tree with every path reaching ``target_depth``."""
    if target_depth <= 0:
        return terminals[rng.randrange(len(terminals))]
    op = _OPERATORS[rng.randrange(len(_OPERATORS))]
    return (op, *(full(rng, target_depth - 1, terminals) for _ in range(OPERATOR_ARITY[op])))


def random_tree(rng: Random, policy: DepthPolicy, terminals) -> tuple:
    """Ramped half-and-half: random depth in 2..max_depth, grow or full."""
    low = min(2, policy.max_depth)
    target = rng.randint(low, policy.max_depth)
    if rng.random() < 0.5:
        return full(rng, target, terminals)
    return grow(rng, target, terminals)


def mut_subtree(t, policy: DepthPolicy, rng: Random, terminals) -> tuple:
    """Replace a uniformly chosen node with a freshly grown subtree."""
    paths = all_paths(t)
    path = paths[rng.randrange(len(paths))]
    replacement = grow(rng, policy.max_depth - len(path), terminals)
    return replace_at(t, path, replacement)


def cx_simple(a, b, policy: DepthPolicy, rng: Random):
    """Swap a random subtree of one parent into the other."""
    paths_a = all_paths(a)
    paths_b = all_paths(b)
    for _ in range(_CX_RETRIES):
        pa = paths_a[rng.randrange(len(paths_a))]
        pb = paths_b[rng.randrange(len(paths_b))]
        child = replace_at(a, pa, subtree_at(b, pb))
        if depth(child) <= policy.max_depth:
            return child
    return a


def _common_region(a, b) -> list:
    """Coordinates where both trees have nodes and all ancestors agree in arity."""
    out = []

    def walk(na, nb, path):
        out.append(path)
        arity_a = 0 if is_leaf(na) else len(na) - 1
        arity_b = 0 if is_leaf(nb) else len(nb) - 1
        if arity_a == arity_b and arity_a:
            for i in range(arity_a):
                walk(na[i + 1], nb[i + 1], path + (i,))

    walk(a, b, ())
    return out


def cx_one_point(a, b, policy: DepthPolicy, rng: Random):
    """Swap subtrees at a uniformly chosen point of the common region."""
    common = _common_region(a, b)
    path = common[rng.randrange(len(common))]
    child = replace_at(a, path, subtree_at(b, path))
    return child if depth(child) <= policy.max_depth else a


def cx_uniform(a, b, policy: DepthPolicy, rng: Random):
    """Choose each common-region node from either parent; whole subtrees at the border."""

    def mix(na, nb):
        primary = na if rng.random() < 0.5 else nb
        arity_a = 0 if is_leaf(na) else len(na) - 1
        arity_b = 0 if is_leaf(nb) else len(nb) - 1
        if arity_a != arity_b or arity_a == 0:
            return primary
        return (primary[0],) + tuple(mix(na[i + 1], nb[i + 1]) for i in range(arity_a))

    child = mix(a, b)
    return child if depth(child) <= policy.max_depth else a


def cx_size_fair(a, b, policy: DepthPolicy, rng: Random):
    """Replace a subtree of one parent with a size-matched donor from the other."""
    paths_a = all_paths(a)
    donors = [(p, size(subtree_at(b, p))) for p in all_paths(b)]
    for _ in range(_CX_RETRIES):
        pa = paths_a[rng.randrange(len(paths_a))]
        wanted = size(subtree_at(a, pa))
        best = min(abs(sz - wanted) for _, sz in donors)
        pool = [p for p, sz in donors if abs(sz - wanted) == best]
        child = replace_at(a, pa, subtree_at(b, pool[rng.randrange(len(pool))]))
        if depth(child) <= policy.max_depth:
            return child
    return a


def cx_context(a, b, policy: DepthPolicy, rng: Random):
    """Swap subtrees at a coordinate that exists in both parents."""
    paths_b = set(all_paths(b))
    shared = [p for p in all_paths(a) if p in paths_b]
    path = shared[rng.randrange(len(shared))]
    child = replace_at(a, path, subtree_at(b, path))
    return child if depth(child) <= policy.max_depth else a


_TREE_CROSSOVERS = (cx_simple, cx_uniform, cx_size_fair, cx_one_point, cx_context)


def cx_tree(a, b, policy: DepthPolicy, rng: Random):
    """One child from one of the five crossovers, selected at random each call."""
    op = _TREE_CROSSOVERS[rng.randrange(len(_TREE_CROSSOVERS))]
    return op(a, b, policy, rng)


@dataclass(frozen=True)
class TreeOps:
    """Operator bundle plugged into the steady-state engine."""

    n: int
    policy: DepthPolicy
    terminals: tuple

    @classmethod
    def direct(cls, n: int, policy: DepthPolicy) -> "TreeOps":
        return cls(n, policy, tuple(("x", k) for k in range(1, n + 1)))

    def random(self, rng: Random):
        return random_tree(rng, self.policy, self.terminals)

    def mutate(self, g, rng: Random):
        return mut_subtree(g, self.policy, rng, self.terminals)

    def crossover(self, a, b, rng: Random):
        return cx_tree(a, b, self.policy, rng)

    def to_table(self, g) -> TruthTable:
        return eval_tree(g, self.n)

    def serialize(self, g) -> str:
        return format_tree(g)

    def deserialize(self, text: str):
        return parse_tree(text)
