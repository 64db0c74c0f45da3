"""Ground-truth engines.  ``brute`` imports the device modules, so it is not re-exported here."""

from .cfg import Empty, NonEmpty, cfg_emptiness, intersect_grammar_nfa
from .fit import Fit, growth_fit
from .nfa import Nfa
