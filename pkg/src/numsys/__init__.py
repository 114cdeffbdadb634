"""Abstract numeration systems on regular languages."""

from numsys.automata import (
    CountTable,
    GrowthClass,
    OrderedAlphabet,
    OrderedDfa,
    StateMorphism,
    automaton_morphism,
    classify_growth,
    common_recurrence,
    count_words,
    cumulative_count,
    load_dfa,
    minimize,
    save_dfa,
    trim,
)
from numsys.kernels import BACKEND

__all__ = [
    "BACKEND",
    "CountTable",
    "GrowthClass",
    "OrderedAlphabet",
    "OrderedDfa",
    "StateMorphism",
    "automaton_morphism",
    "classify_growth",
    "common_recurrence",
    "count_words",
    "cumulative_count",
    "load_dfa",
    "minimize",
    "save_dfa",
    "trim",
]
