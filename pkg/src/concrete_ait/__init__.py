"""Tiny prefix-free universal machines for concrete algorithmic information theory.

The term core (``terms``, ``reduction``) is shared by every machine:

* tree languages: Iota, Fokker's combinator, the combinator Chaitin machine
  (``simple``) and its extension of any universal combinator (``ext``);
* Zot and binary lambda calculus;
* Keraia and its prefix-free variant;
* blank-endmarker elimination (``eliminator``);
* exact halting-probability lower bounds and complexity search (``ait``).
"""

from .ait import (
    HaltingRecord, OmegaBound, catalan, complexity_upper_bound, count_trees,
    enumerate_halting, kraft_prefix_check, omega_lower_bound,
)
from .eliminator import as_bem, eliminate, run_bem, run_eliminated
from .encodings import (
    blc_eval, blc_parse, extend_universal, extended_eval, fokker_combinator, fokker_eval,
    iota_eval, simple_chaitin_eval, zot_eval,
)
from .keraia import keraia_eval, keraia_interpret, pf_keraia_eval
from .languages import LANGUAGES, chaitin_machine, get_language
from .pipe import ENDMARKER, Pipe
from .reduction import combinator_eq, decode_bool_list, reduce
from .runtime import Diverged, Halted, Reason, classify_divergence, run_with_pipe
from .terms import (
    App, I, K, Lam, R, S, Var, alpha_eq, lambda_abstract, parse_curried, print_canonical,
    to_combinators,
)
from .trees import parse_tree, split_tree_prefix

__version__ = "0.1.0"
