"""Exact lower bounds on halting probabilities and program-size complexity."""

import tempfile
from pathlib import Path

from concrete_ait.ait import (
    catalan, catalan_asymptotic, complexity_upper_bound, count_trees, enumerate_halting,
    kraft_prefix_check, omega_lower_bound,
)
from concrete_ait.terms import I, K, S

# %% Trees of 2n+1 bits are counted by the Catalan numbers
for n in range(8):
    print(n, count_trees(2 * n + 1), catalan(n))
print("C(16) / asymptotic:", catalan(16) / catalan_asymptotic(16))

# %% Lower bounds grow with length and step budget
for machine in ("simple", "ext", "pf-keraia"):
    for max_len, steps in ((8, 10**3), (10, 10**4), (14, 10**5)):
        bound = omega_lower_bound(machine, max_len, steps)
        print(f"{machine:<10} len<={max_len:<3} {bound.report()}")

# %% Every halting set found is prefix-free
print(kraft_prefix_check(enumerate_halting("pf-keraia", 14, 10**5)))

# %% Shortest codewords for a few outputs
for name, target in (("I", I), ("K", K), ("S", S)):
    print(name, complexity_upper_bound("simple", target, 12, 10**4),
          complexity_upper_bound("pf-keraia", target, 12, 10**4))

# %% Record files make long runs restartable
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "simple.tsv"
    first = omega_lower_bound("simple", 12, 10**4, record_file=path)
    again = omega_lower_bound("simple", 12, 10**4, record_file=path, resume=True)
    print("resumed bound identical:", first == again)
    print(path.read_text().splitlines()[:5])
