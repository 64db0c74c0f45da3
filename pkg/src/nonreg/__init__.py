"""Measures of non-regularity for grammars, pushdown automata, EFAs over groups and FATLs."""

from .common import Bounded, Counterexample, Profile, Unknown
from .dnreg import Unbounded, decide_dnreg_bounded, dnreg_profile, dnreg_word
from .efa import Efa, build_anbn_efa, build_sqrt_efa, gmc_profile, gmc_word
from .fatl import Fatl, build_equal_ab, build_paper_example, jc_profile, jc_word
from .grammar import Grammar, parse_grammar
from .pda import Mode, Pda, push_profile, push_word

__version__ = "0.1.0"
