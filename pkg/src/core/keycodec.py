# src/core/keycodec.py
"""Order-preserving base-27 encoding of text keys into [0, 1).

Letters a..z are digits 1..26 and a missing letter counts as digit 0, so a
string sorts before every extension of it. Only the first PRECISION_DIGITS
letters are read.
"""
import math
import re
import sys
from dataclasses import dataclass

RADIX = 27

# largest D with 27**-D above the float64 epsilon
PRECISION_DIGITS = math.floor(-math.log(sys.float_info.epsilon, RADIX))

_NON_LETTERS = re.compile(r"[^A-Za-z]")
_SCALE = RADIX ** PRECISION_DIGITS


@dataclass(frozen=True)
class EncodedKey:
    value: float
    source: str


def normalize(text: str) -> str:
    """Drop everything that is not an ASCII letter, then lowercase"""
    return _NON_LETTERS.sub("", text).lower()


def encode_base27(text: str) -> float:
    digits = normalize(text)[:PRECISION_DIGITS]
    numerator = 0
    for position in range(PRECISION_DIGITS):
        digit = ord(digits[position]) - ord("a") + 1 if position < len(digits) else 0
        numerator = numerator * RADIX + digit
    # numerator < 27**D < 2**53, so the division is exact up to one rounding
    return numerator / _SCALE


def encode_key(text: str) -> EncodedKey:
    return EncodedKey(value=encode_base27(text), source=text)
