"""Exact non-commutative polynomial algebra with the time-shift operator J."""

from .atoms import FAMILIES, UNIT, Atom, Family, Role, Word, atom, word
from .expression import ONE, ZERO, J, Expression, Term, prime_shift, render
from .gaussian import I, GaussianRational
from .parser import ParseError, parse, tokenize
from .sampling import random_expression
from .table import (
    FREE,
    CommutationTable,
    Outcome,
    RewriteBudgetExceeded,
    Rule,
    TerminationError,
    commutator,
    delta_rule,
    equals,
    free_rule,
    named_rule,
    normalize,
    zero_rule,
)
