"""Continued fraction convergents and Gauss cylinder lengths."""

from collections.abc import Iterable, Iterator
from fractions import Fraction

from src.cylinders.models import ConvergentPair
from src.exceptions import InvalidSymbolError, ValidationError


def convergents(digits: Iterable[int]) -> list[ConvergentPair]:
    """Convergents p_n/q_n of [0; c_1, c_2, ...].

    Uses p_n = c_n p_{n-1} + p_{n-2}, q_n = c_n q_{n-1} + q_{n-2} with
    p_{-1} = 1, q_{-1} = 0, p_0 = 0, q_0 = 1.

    Raises:
        InvalidSymbolError: If a partial quotient is below 1.
    """
    pairs = []
    older_p, older_q = 1, 0
    previous_p, previous_q = 0, 1
    for index, quotient in enumerate(digits, 1):
        _check_quotient(quotient)
        current_p = quotient * previous_p + older_p
        current_q = quotient * previous_q + older_q
        pairs.append(
            ConvergentPair(
                index=index,
                p=current_p,
                q=current_q,
                previous_p=previous_p,
                previous_q=previous_q,
            )
        )
        older_p, older_q = previous_p, previous_q
        previous_p, previous_q = current_p, current_q
    return pairs


def denominators(digits: Iterable[int]) -> Iterator[int]:
    """Stream q_1, q_2, ... without building convergent models."""
    older, previous = 0, 1
    for quotient in digits:
        _check_quotient(quotient)
        older, previous = previous, quotient * previous + older
        yield previous


def cf_cylinder_length(digits: tuple[int, ...]) -> Fraction:
    """Length 1/(q_n (q_n + q_{n-1})) of the Gauss cylinder of ``digits``.

    Raises:
        ValidationError: If ``digits`` is empty.
    """
    if not digits:
        raise ValidationError("A cylinder needs at least one partial quotient", field="digits")
    last = convergents(digits)[-1]
    return Fraction(1, last.q * (last.q + last.previous_q))


def cf_cylinder_endpoints(digits: tuple[int, ...]) -> tuple[Fraction, Fraction]:
    """The two endpoints p_n/q_n and (p_n + p_{n-1})/(q_n + q_{n-1}), in that order."""
    if not digits:
        return Fraction(0), Fraction(1)
    last = convergents(digits)[-1]
    return (
        Fraction(last.p, last.q),
        Fraction(last.p + last.previous_p, last.q + last.previous_q),
    )


def _check_quotient(quotient: int) -> None:
    if quotient < 1:
        raise InvalidSymbolError(
            "Partial quotients must be positive", symbol=quotient, map_name="gauss"
        )
