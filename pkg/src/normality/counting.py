"""Sliding and block pattern counts."""

from collections import Counter
from collections.abc import Sequence

import numpy as np

from src.exceptions import ValidationError
from src.maps import DigitString
from src.normality.models import CountMode, FrequencyTable
from src.types import SymbolString


def _symbols_of(digits: DigitString | Sequence[int]) -> Sequence[int]:
    return digits.symbols if isinstance(digits, DigitString) else digits


def count_pattern(digits: DigitString | Sequence[int], pattern: SymbolString) -> int:
    """Overlapping occurrences of ``pattern`` among the certified digits.

    Raises:
        ValidationError: If the pattern is longer than the digit string.
    """
    symbols = _symbols_of(digits)
    length = len(pattern)
    if length == 0 or length > len(symbols):
        raise ValidationError(
            "Pattern must be nonempty and no longer than the certified digits",
            field="pattern",
            value=list(pattern),
        )
    return int(match_mask(symbols, pattern, len(symbols) - length + 1).sum())


def sliding_counts(digits: DigitString | Sequence[int], length: int) -> FrequencyTable:
    """Counts of every length-``length`` pattern over sliding windows."""
    symbols = tuple(_symbols_of(digits))
    windows = max(len(symbols) - length + 1, 0)
    counts = Counter(zip(*(symbols[offset:] for offset in range(length)), strict=False))
    return FrequencyTable(
        pattern_length=length, mode=CountMode.SLIDING, windows=windows, counts=dict(counts)
    )


def block_counts(digits: DigitString | Sequence[int], block_length: int) -> FrequencyTable:
    """Counts of non-overlapping blocks at positions 1, m + 1, 2m + 1, ...

    A trailing incomplete block is dropped.

    Raises:
        ValidationError: If ``block_length`` is below 1.
    """
    if block_length < 1:
        raise ValidationError("Block length must be at least 1", field="m", value=block_length)
    symbols = tuple(_symbols_of(digits))
    windows = len(symbols) // block_length
    columns = (symbols[offset::block_length][:windows] for offset in range(block_length))
    counts = Counter(zip(*columns, strict=True))
    return FrequencyTable(
        pattern_length=block_length, mode=CountMode.BLOCK, windows=windows, counts=dict(counts)
    )


def match_mask(symbols: Sequence[int], pattern: SymbolString, windows: int) -> np.ndarray:
    """Boolean mask of the first ``windows`` positions where ``pattern`` starts."""
    values = np.asarray(symbols)
    mask = np.ones(windows, dtype=bool)
    for offset, symbol in enumerate(pattern):
        mask &= values[offset : offset + windows] == symbol
    return mask


def blocked_symbols(symbols: Sequence[int], block_length: int) -> list[SymbolString]:
    """Group digits into consecutive non-overlapping blocks."""
    windows = len(symbols) // block_length
    return [
        tuple(symbols[index * block_length : (index + 1) * block_length])
        for index in range(windows)
    ]
