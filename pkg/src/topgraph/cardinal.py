"""Edge multiplicities: positive integers extended by a countable infinity."""
from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Union


@total_ordering
class _Omega:
    """The countably infinite cardinal. Use the module-level ``OMEGA``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OMEGA"

    def __str__(self):
        return "ω"

    def __hash__(self):
        return hash("omega")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        if other is self or (isinstance(other, int) and other > 0):
            return self
        if other == 0:
            return 0
        return NotImplemented

    __rmul__ = __mul__

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()

Cardinal = Union[int, _Omega]


def is_finite(c: Cardinal) -> bool:
    return c is not OMEGA


def card_sum(values: Iterable[Cardinal]) -> Cardinal:
    total: Cardinal = 0
    for v in values:
        total = total + v
    return total


def parse_cardinal(raw) -> Cardinal:
    """Read a multiplicity from file syntax: a positive int or ``"omega"``."""
    if isinstance(raw, str) and raw.strip().lower() in ("omega", "ω"):
        return OMEGA
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ValueError(f"multiplicity must be a positive integer or 'omega', got {raw!r}")
    if raw < 1:
        raise ValueError(f"multiplicity must be positive, got {raw}")
    return raw


def format_cardinal(c: Cardinal):
    return "omega" if c is OMEGA else c
