"""Braid groups for cryptography: normal forms, word and conjugacy problems,
key-exchange protocols and the attacks against them."""

from .braid import BandWord, BraidParseError, BraidWord, PermutationBraid, parse_band_word, parse_word
from .errors import BudgetExceeded, InvariantViolation
from .kernels import BACKEND
from .normal_form import GarsideNormalForm, left_normal_form, parse_normal_form, right_normal_form

__version__ = "0.1.0"
