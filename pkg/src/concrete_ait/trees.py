"""Preorder bit encodings of full binary trees: 1 = internal node, 0 = leaf."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "BitTree", "Leaf", "Node", "ProgramSyntaxError",
    "parse_tree", "split_tree_prefix", "tree_prefix_length",
    "iter_trees", "tree_term",
]


class ProgramSyntaxError(ValueError):
    """The bits are not (or do not start with) one complete traversal."""


class BitTree:
    __slots__ = ()
    bits: str

    @property
    def leaves(self) -> int:
        return self.bits.count("0")


@dataclass(frozen=True, eq=False)
class Leaf(BitTree):
    __slots__ = ()

    @property
    def bits(self) -> str:
        return "0"

    def __eq__(self, other):
        return isinstance(other, Leaf)

    def __hash__(self):
        return hash("0")


@dataclass(frozen=True, eq=False)
class Node(BitTree):
    left: BitTree
    right: BitTree
    bits: str

    def __eq__(self, other):
        return isinstance(other, Node) and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)


LEAF = Leaf()


def tree_prefix_length(bits: str) -> int | None:
    """Length of the shortest prefix that is a full traversal, if any.

    The counter starts at 0, adds one per ``1`` and subtracts one per ``0``;
    a traversal ends exactly when it first reaches -1.
    """
    count = 0
    for i, b in enumerate(bits):
        count += 1 if b == "1" else -1
        if count < 0:
            return i + 1
    return None


def _build(bits: str) -> BitTree:
    # bits is known to be exactly one traversal
    stack: list[list] = []
    result: BitTree | None = None
    pos = 0
    while True:
        if bits[pos] == "1":
            stack.append([pos, None])
            pos += 1
            continue
        result = LEAF
        pos += 1
        while stack:
            frame = stack[-1]
            if frame[1] is None:
                frame[1] = result
                break
            stack.pop()
            start = frame[0]
            result = Node(frame[1], result, bits[start:pos])
        else:
            return result


def parse_tree(bits: str) -> BitTree:
    """Parse ``bits`` as exactly one full traversal."""
    n = tree_prefix_length(bits)
    if n is None:
        raise ProgramSyntaxError(f"incomplete tree traversal: {bits!r}")
    if n != len(bits):
        raise ProgramSyntaxError(f"trailing bits after tree: {bits[n:]!r}")
    return _build(bits)


def split_tree_prefix(bits: str) -> tuple[BitTree, str]:
    """Split off the self-delimiting program; the rest is input."""
    n = tree_prefix_length(bits)
    if n is None:
        raise ProgramSyntaxError(f"no complete tree traversal in {bits!r}")
    return _build(bits[:n]), bits[n:]


def iter_trees(length: int) -> Iterator[str]:
    """All traversals of the given length, in lexicographic order."""
    if length % 2 == 0:
        return
    n = length // 2

    def gen(internal: int) -> Iterator[str]:
        # "0" < "1", so leaves-first keeps lexicographic order
        if internal == 0:
            yield "0"
            return
        for k in range(internal):
            for left in gen(k):
                for right in gen(internal - 1 - k):
                    yield "1" + left + right

    yield from sorted(gen(n))


def tree_term(tree: BitTree, leaf, node=None):
    """Fold a tree: leaves become ``leaf``, nodes ``node(left, right)``."""
    from .terms import App

    node = node or App
    stack: list = [(tree, False)]
    out: list = []
    while stack:
        t, expanded = stack.pop()
        if isinstance(t, Leaf):
            out.append(leaf)
        elif expanded:
            r = out.pop()
            l = out.pop()  # noqa: E741
            out.append(node(l, r))
        else:
            stack.append((t, True))
            stack.append((t.right, False))
            stack.append((t.left, False))
    return out[0]


def all_bit_strings(max_len: int, min_len: int = 1) -> Iterator[str]:
    """Every bit string with length in range, in length-lexicographic order."""
    for n in range(min_len, max_len + 1):
        for bits in itertools.product("01", repeat=n):
            yield "".join(bits)
