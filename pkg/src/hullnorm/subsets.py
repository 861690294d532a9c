"""Carrier subsets encoded as Python int bitmasks.

Bit ``i`` of a mask is set iff element ``i`` belongs to the subset.  Ints are
immutable and hashable, which keeps every structure built on top of them
value-like.
"""
from __future__ import annotations

import random
from typing import Iterable, Iterator


def mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def full(size: int) -> int:
    return (1 << size) - 1


def bits(m: int) -> Iterator[int]:
    """Yield the elements of ``m`` in increasing order."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def elements(m: int) -> list[int]:
    return list(bits(m))


def contains(m: int, e: int) -> bool:
    return (m >> e) & 1 == 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def card(m: int) -> int:
    return bin(m).count("1")


def random_subset(rng: random.Random, size: int, p: float = 0.5) -> int:
    m = 0
    for i in range(size):
        if rng.random() < p:
            m |= 1 << i
    return m


def fmt(m: int) -> str:
    return "{" + ",".join(str(e) for e in bits(m)) + "}"


def parse(text: str) -> int:
    """Parse ``{0,1,7}`` (braces optional, empty allowed) into a mask."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    body = body.strip()
    if not body:
        return 0
    return mask(int(tok) for tok in body.replace(" ", "").split(","))
