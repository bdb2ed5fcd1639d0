"""Codewords, the pipe, and the three ways a run can fail."""

from concrete_ait import extended_eval, iota_eval, pf_keraia_eval, simple_chaitin_eval
from concrete_ait.runtime import exit_code

# %% Iota: one tree, leaves are iota = \f.f S K
for bits in ("100", "1010100"):
    print("iota", bits, "->", iota_eval(bits).text)

# %% The combinator machine reads its input through R
for bits in ("100", "10100", "1010100", "1", "00", "110101000", "1101010000"):
    out = simple_chaitin_eval(bits)
    shown = out.text if out.halted else out.reason.value
    print(f"simple {bits:>12}  exit {exit_code(out):>2}  {shown}")

# %% Any universal combinator can be extended the same way (here iota)
for bits in ("1100100", "11001100100", "110011001100100", "1011001100100"):
    print("ext", bits, "->", extended_eval(bits).text)

# %% Prefix-free Keraia: the last bit goes through the pipe
print("pf-keraia 111010010100110001 ->", pf_keraia_eval("111010010100110001").text)
print("program alone:", pf_keraia_eval("11101001010011000").reason.value)
