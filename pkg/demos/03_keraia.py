"""Keraia: curried lambda syntax written as a single binary tree."""

from concrete_ait.keraia import SELF_INTERPRETER_PREFIX, keraia_eval, keraia_translate
from concrete_ait.reduction import combinator_eq
from concrete_ait.terms import I, K, S, print_canonical
from concrete_ait.trees import parse_tree

programs = {
    "I": "11000",
    "K": "1100110101000",
    "K (long pattern)": "11010100110010100",
    "S": "11010100110110001100111010001110000",
}

# %% Translation: binders are Node(Node(leaf, pattern), body)
for name, bits in programs.items():
    print(f"{name:<17}", print_canonical(keraia_translate(parse_tree(bits))))

# %% Evaluation abstracts the normal form into S, K and I
expected = {"I": I, "K": K, "K (long pattern)": K, "S": S}
for name, bits in programs.items():
    out = keraia_eval(bits)
    print(f"{name:<17}", out.text, "| matches:", combinator_eq(out.term, expected[name]))

# %% 111000 applies the identity to whatever tree follows
for name, bits in programs.items():
    same = keraia_eval(SELF_INTERPRETER_PREFIX + bits).term == keraia_eval(bits).term
    print("prefix 111000 +", name, "unchanged:", same)
