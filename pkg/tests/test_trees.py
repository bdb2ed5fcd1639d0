import itertools

import pytest

from concrete_ait.trees import (
    LEAF, Leaf, Node, ProgramSyntaxError, all_bit_strings, iter_trees, parse_tree,
    split_tree_prefix, tree_prefix_length, tree_term,
)


def naive_is_tree(bits):
    # oracle: a tree is "0" or "1" followed by two trees
    def parse(pos):
        if pos >= len(bits):
            return None
        if bits[pos] == "0":
            return pos + 1
        mid = parse(pos + 1)
        return None if mid is None else parse(mid)
    return parse(0) == len(bits)


def test_two_leaves():
    t = parse_tree("100")
    assert isinstance(t, Node) and t.left == LEAF and t.right == LEAF
    assert t.leaves == 2


def test_single_leaf():
    assert isinstance(parse_tree("0"), Leaf)


@pytest.mark.parametrize("bits", ["1", "11", "", "000", "1001"])
def test_rejects(bits):
    with pytest.raises(ProgramSyntaxError):
        parse_tree(bits)


def test_split():
    tree, rest = split_tree_prefix("1001")
    assert tree.bits == "100" and rest == "1"
    tree, rest = split_tree_prefix("111010010100110001")
    assert len(tree.bits) == 17 and rest == "1"
    with pytest.raises(ProgramSyntaxError):
        split_tree_prefix("11")


def test_acceptance_matches_grammar_oracle():
    for bits in all_bit_strings(11):
        assert (tree_prefix_length(bits) == len(bits)) == naive_is_tree(bits)


def test_iter_trees_lexicographic_and_complete():
    for n in range(1, 14, 2):
        trees = list(iter_trees(n))
        assert trees == sorted(trees)
        assert trees == [b for b in map("".join, itertools.product("01", repeat=n)) if naive_is_tree(b)]
    assert list(iter_trees(4)) == []


def test_no_tree_prefixes_another():
    trees = [t for n in range(1, 12, 2) for t in iter_trees(n)]
    for a in trees:
        for b in trees:
            if a != b:
                assert not b.startswith(a)


def test_node_bits_are_concatenation():
    t = parse_tree("1101000")
    assert t.bits == "1" + t.left.bits + t.right.bits


def test_fold():
    t = parse_tree("11000")
    assert tree_term(t, "x", lambda a, b: f"({a} {b})") == "((x x) x)"


def test_deep_tree_does_not_recurse():
    bits = "1" * 20000 + "0" * 20001
    assert parse_tree(bits).bits == bits
