"""Cantor pairing and sequence codes.

Every coded object in the package is a natural number built from these two
primitives:

    pair(x, y) = (x + y)(x + y + 1) / 2 + y
    seq(<>) = 0,   seq(s + <x>) = pair(seq(s), x) + 1

Both are bijections onto the naturals, so ``unpair`` and ``unseq`` are total.
"""
from math import isqrt
from typing import Iterable, Tuple

from src.errors import DecodeFailure


def pair(x: int, y: int) -> int:
    if x < 0 or y < 0:
        raise DecodeFailure(f"pair expects naturals, got ({x}, {y})")
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: int) -> Tuple[int, int]:
    if z < 0:
        raise DecodeFailure(f"unpair expects a natural, got {z}")
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def seq(entries: Iterable[int]) -> int:
    code = 0
    for x in entries:
        code = pair(code, x) + 1
    return code


def unseq(code: int) -> Tuple[int, ...]:
    if code < 0:
        raise DecodeFailure(f"unseq expects a natural, got {code}")
    entries = []
    while code > 0:
        code, x = unpair(code - 1)
        entries.append(x)
    return tuple(reversed(entries))


def seq_length(code: int) -> int:
    return len(unseq(code))


def coding(op: str, *args):
    """Call one of ``pair``, ``unpair``, ``seq``, ``unseq`` by name."""
    if op == "pair":
        return pair(*args)
    if op == "unpair":
        return unpair(*args)
    if op == "seq":
        (entries,) = args
        return seq(entries)
    if op == "unseq":
        return unseq(*args)
    raise DecodeFailure(f"unknown coding operation '{op}'")


def check_top_monotonicity(bound: int) -> list:
    """All (n, c) <= bound violating pair(n, 0) < pair(n + 1, c)."""
    failures = []
    for n in range(bound + 1):
        base = pair(n, 0)
        failures.extend((n, c) for c in range(bound + 1) if not base < pair(n + 1, c))
    return failures


def check_length_bound(bound: int) -> list:
    """All codes <= bound whose decoded sequence is longer than the code."""
    return [code for code in range(bound + 1) if seq_length(code) > code]


def check_round_trips(bound: int) -> list:
    failures = []
    for z in range(bound + 1):
        if pair(*unpair(z)) != z:
            failures.append(("pair", z))
        if seq(unseq(z)) != z:
            failures.append(("seq", z))
    return failures
