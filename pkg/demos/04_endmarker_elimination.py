"""Removing the endmarker: speculate on every symbol, read only when it matters."""

from concrete_ait.eliminator import as_bem, eliminate, run_bem
from concrete_ait.pipe import ENDMARKER
from concrete_ait.trees import all_bit_strings

# %% fixed3 reads four symbols and ignores them all
fixed3 = eliminate(as_bem("fixed3"))
for bits in ("01", "010", "0101"):
    out = fixed3.run(bits)
    print(bits, "->", out.text if out.halted else out.reason.value, fixed3.last_stats)

# %% Its domain among strings of length <= 6 is exactly length 3
print([b for b in all_bit_strings(6) if fixed3.run(b).halted])

# %% parity must see the endmarker, so nothing survives elimination
parity = eliminate(as_bem("parity"))
print("parity halts on:", [b for b in all_bit_strings(6) if parity.run(b).halted])

# %% Keraia never needs the endmarker once its tree is complete
keraia = eliminate(as_bem("keraia"))
print("keraia 11000 ->", keraia.run("11000").text)
print("with explicit endmarker ->", run_bem(as_bem("keraia"), "11000" + ENDMARKER).text)

# %% BLC: a constant program halts, the identity has to look at the list
blc = eliminate(as_bem("blc"))
print("blc 000010 ->", blc.run("000010").text)
print("blc 0010   ->", blc.run("0010").reason.value)
