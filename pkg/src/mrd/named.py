"""Named generating functions callable from GF expressions."""
from __future__ import annotations

from .series import Series


def _at(order: int, build) -> Series:
    # the closed forms divide by t, so evaluate one order higher
    return build(order + 1).truncate(order)


def schroeder_small(order: int) -> Series:
    """Little Schroeder numbers 1, 1, 3, 11, 45, ... : (1 + t - sqrt(1 - 6t + t^2)) / (4t)."""

    def build(n):
        t = Series.t(n)
        return (1 + t - (1 - 6 * t + t * t).root(2)) / (4 * t)

    return _at(order, build)


def schroeder_large(order: int) -> Series:
    """Large Schroeder numbers 1, 2, 6, 22, 90, ... : (1 - t - sqrt(1 - 6t + t^2)) / (2t)."""

    def build(n):
        t = Series.t(n)
        return (1 - t - (1 - 6 * t + t * t).root(2)) / (2 * t)

    return _at(order, build)


def catalan(order: int) -> Series:
    def build(n):
        t = Series.t(n)
        return (1 - (1 - 4 * t).root(2)) / (2 * t)

    return _at(order, build)
