"""
Frequency handling for characters on the integers.

The dual group of Z is the circle, parameterised by theta in [0, 1) with
character ``chi_theta(x) = exp(2 pi i theta x)``.  Frequencies are kept as
exact :class:`fractions.Fraction` values whenever possible: rational
frequencies make character evaluation periodic and exact even at positions
far from the origin, while irrational ones are ordinary floats.
"""

from fractions import Fraction

import numpy as np


def freq_mod1(theta):
    """Reduce a frequency into [0, 1), preserving exact rationals."""
    if isinstance(theta, Fraction):
        return theta % 1
    if isinstance(theta, (int, np.integer)):
        return Fraction(int(theta)) % 1
    return float(theta) % 1.0


def freq_float(theta):
    """The frequency as a float in [0, 1)."""
    return float(freq_mod1(theta))


def freq_conjugate(theta):
    """Frequency of the conjugate character: ``(1 - theta) mod 1``."""
    t = freq_mod1(theta)
    if isinstance(t, Fraction):
        return (1 - t) % 1
    return (1.0 - t) % 1.0


def freq_label(theta):
    t = freq_mod1(theta)
    if isinstance(t, Fraction):
        return f"{t.numerator}/{t.denominator}"
    return repr(t)


def character_values(theta, positions):
    """Character samples ``exp(2 pi i theta x)`` at integer positions.

    For a Fraction p/q the phase is reduced exactly modulo q before the
    complex exponential, so the values are q-periodic to the last bit.
    """
    pos = np.asarray(positions, dtype=np.int64)
    t = freq_mod1(theta)
    if isinstance(t, Fraction):
        p, q = t.numerator, t.denominator
        angle = (2.0 * np.pi / q) * np.mod(pos * np.int64(p), np.int64(q))
    else:
        angle = (2.0 * np.pi) * np.mod(pos * t, 1.0)
    return np.exp(1j * angle)


def rational_grid(q_max):
    """All reduced fractions p/q in [0, 1) with q <= q_max, sorted."""
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    grid = {Fraction(0, 1)}
    for q in range(2, q_max + 1):
        for p in range(1, q):
            grid.add(Fraction(p, q))
    return sorted(grid)
