"""
Weighted Dirac combs on the integers.

A comb is a translation-bounded measure ``sum_n w(n) delta_n`` given by a
deterministic weight rule.  This module provides the comb container, the
elementary measure operations (restriction, the two reflections, complex
conjugation, translation, linear combination, smoothing by a finitely
supported kernel) and CSV import/export.

Combs are immutable after construction and evaluation is pure, so they are
safe to share between threads.
"""

import csv

import numpy as np

# Largest window (number of integer points) that may be materialised as an
# array in one go.  Guards against runaway volumes such as [-n^2, n] families
# probed at large n.
MAX_WINDOW_VOLUME = 1 << 23

# Combs without an explicit support are treated as total on all of Z; the
# sentinel keeps interval arithmetic in plain integers.
UNBOUNDED = (-(1 << 62), 1 << 62)


class WeightedComb:
    """A complex-weighted Dirac comb on the integers.

    Parameters
    ----------
    label : str
        Identifier used in reports, CSV headers and manifests.
    rule : callable
        Vectorised weight rule: maps an ``int64`` ndarray of positions to an
        ndarray of weights.  Must be deterministic; two evaluations at the
        same position agree exactly.
    declared_bound : float
        Claimed bound on ``|w(n)|`` over all integers (the translation
        boundedness witness for the one-point window).
    support : (int, int), optional
        Inclusive range outside which the weight is zero.  ``None`` means
        the rule is total on Z.
    seed : int, optional
        Seed of the random source for sampled combs; recorded in manifests.
    spectral_type : str, optional
        Expected diffraction type tag (``pure_point``, ``continuous``,
        ``mixed``) when known for the generating rule.
    bragg_frequencies : tuple, optional
        Frequencies in [0, 1) at which the comb is expected to carry point
        masses; used as default probes by the diagnostic suites.
    """

    __slots__ = ("label", "declared_bound", "support", "seed",
                 "spectral_type", "bragg_frequencies", "_rule")

    def __init__(self, label, rule, declared_bound, support=None, seed=None,
                 spectral_type=None, bragg_frequencies=()):
        self.label = str(label)
        self._rule = rule
        self.declared_bound = float(declared_bound)
        if self.declared_bound < 0:
            raise ValueError("declared_bound must be >= 0")
        self.support = None if support is None else (int(support[0]), int(support[1]))
        self.seed = seed
        self.spectral_type = spectral_type
        self.bragg_frequencies = tuple(bragg_frequencies)

    def __repr__(self):
        return f"WeightedComb({self.label!r})"

    def values(self, positions):
        """Weights at the given integer positions (vectorised, complex128)."""
        pos = np.asarray(positions, dtype=np.int64)
        if self.support is None:
            out = np.asarray(self._rule(pos), dtype=np.complex128)
            return out
        lo, hi = self.support
        out = np.zeros(pos.shape, dtype=np.complex128)
        mask = (pos >= lo) & (pos <= hi)
        if mask.any():
            out[mask] = np.asarray(self._rule(pos[mask]), dtype=np.complex128)
        return out

    def eval(self, x):
        """Weight at a single position (zero outside the declared support)."""
        return complex(self.values(np.array([int(x)], dtype=np.int64))[0])

    def window(self, interval):
        """Restriction to an interval, as a :class:`FiniteWindow`."""
        return restrict(self, interval)


class FiniteWindow:
    """A contiguous block of comb weights: ``values[j]`` sits at ``origin+j``.

    Positions outside the window are semantically zero.
    """

    __slots__ = ("values", "origin")

    def __init__(self, values, origin):
        self.values = np.asarray(values, dtype=np.complex128)
        if self.values.ndim != 1:
            raise ValueError("window values must be one-dimensional")
        self.origin = int(origin)

    def __len__(self):
        return len(self.values)

    @property
    def interval(self):
        return (self.origin, self.origin + len(self.values) - 1)

    @property
    def positions(self):
        return self.origin + np.arange(len(self.values), dtype=np.int64)


def check_interval(interval):
    """Validate an inclusive integer interval and return it as (lo, hi)."""
    lo, hi = int(interval[0]), int(interval[1])
    if hi < lo:
        raise ValueError(f"empty window: [{lo}, {hi}]")
    vol = hi - lo + 1
    if vol > MAX_WINDOW_VOLUME:
        raise ValueError(
            f"window volume {vol} exceeds MAX_WINDOW_VOLUME={MAX_WINDOW_VOLUME}; "
            "refusing to materialise")
    return lo, hi


def window_values(comb, interval):
    """Evaluate a comb on an inclusive interval, returned as complex128."""
    lo, hi = check_interval(interval)
    return comb.values(np.arange(lo, hi + 1, dtype=np.int64))


def restrict(comb, interval):
    """Restrict a comb to an interval; weights outside are dropped.

    Raises ``ValueError`` on an empty interval or when the interval is not
    contained in the comb's declared support.
    """
    lo, hi = check_interval(interval)
    if comb.support is not None:
        slo, shi = comb.support
        if lo < slo or hi > shi:
            raise ValueError(
                f"interval [{lo}, {hi}] outside declared support "
                f"[{slo}, {shi}] of {comb.label}")
    return FiniteWindow(window_values(comb, (lo, hi)), lo)


def _flip_support(support):
    if support is None:
        return None
    lo, hi = support
    return (-hi, -lo)


def reflect_tilde(comb):
    """Conjugate reflection: weight rule ``x -> conj(w(-x))``."""
    base = comb.values

    def rule(pos):
        return np.conj(base(-pos))

    return WeightedComb(f"tilde({comb.label})", rule, comb.declared_bound,
                        support=_flip_support(comb.support), seed=comb.seed,
                        spectral_type=comb.spectral_type,
                        bragg_frequencies=comb.bragg_frequencies)


def reflect_dagger(comb):
    """Plain reflection: weight rule ``x -> w(-x)``."""
    base = comb.values

    def rule(pos):
        return base(-pos)

    return WeightedComb(f"dagger({comb.label})", rule, comb.declared_bound,
                        support=_flip_support(comb.support), seed=comb.seed,
                        spectral_type=comb.spectral_type,
                        bragg_frequencies=comb.bragg_frequencies)


def conjugate(comb):
    """Pointwise complex conjugate: weight rule ``x -> conj(w(x))``."""
    base = comb.values

    def rule(pos):
        return np.conj(base(pos))

    return WeightedComb(f"conj({comb.label})", rule, comb.declared_bound,
                        support=comb.support, seed=comb.seed,
                        spectral_type=comb.spectral_type,
                        bragg_frequencies=comb.bragg_frequencies)


def translate(comb, t):
    """Translate by ``t``: weight rule ``x -> w(x - t)``."""
    t = int(t)
    base = comb.values

    def rule(pos):
        return base(pos - t)

    if comb.support is None:
        support = None
    else:
        support = (comb.support[0] + t, comb.support[1] + t)
    return WeightedComb(f"shift({comb.label},{t})", rule, comb.declared_bound,
                        support=support, seed=comb.seed,
                        spectral_type=comb.spectral_type,
                        bragg_frequencies=comb.bragg_frequencies)


def lincomb(a, mu, b, nu):
    """Linear combination ``a*mu + b*nu`` of two combs."""
    a = complex(a)
    b = complex(b)
    mu_vals = mu.values
    nu_vals = nu.values

    def rule(pos):
        return a * mu_vals(pos) + b * nu_vals(pos)

    if mu.support is None or nu.support is None:
        support = None
    else:
        support = (min(mu.support[0], nu.support[0]),
                   max(mu.support[1], nu.support[1]))
    bound = abs(a) * mu.declared_bound + abs(b) * nu.declared_bound
    return WeightedComb(f"lincomb({a},{mu.label},{b},{nu.label})", rule,
                        bound, support=support)


def as_kernel(kernel):
    """Normalise a kernel to sorted (offsets, weights) int64/complex arrays.

    Accepts a mapping ``offset -> weight`` or a pair ``(values, origin)``
    with contiguous values starting at ``origin``.
    """
    if isinstance(kernel, tuple) and len(kernel) == 2 and not isinstance(kernel[0], (int, np.integer)):
        values, origin = kernel
        values = np.asarray(values, dtype=np.complex128)
        offsets = int(origin) + np.arange(len(values), dtype=np.int64)
    else:
        items = sorted((int(k), complex(v)) for k, v in dict(kernel).items())
        if not items:
            raise ValueError("kernel must be non-empty")
        offsets = np.array([k for k, _ in items], dtype=np.int64)
        values = np.array([v for _, v in items], dtype=np.complex128)
    if len(values) == 0:
        raise ValueError("kernel must be non-empty")
    return offsets, values


def kernel_tilde(kernel):
    """Conjugate reflection of a kernel: ``k -> conj(kernel(-k))``."""
    offsets, values = as_kernel(kernel)
    return {int(-k): complex(np.conj(v)) for k, v in zip(offsets, values)}


def smooth(comb, kernel):
    """Convolve with a finitely supported kernel.

    The smoothed weight rule is ``x -> sum_k kernel(k) * w(x - k)``.
    """
    offsets, kvals = as_kernel(kernel)
    base = comb.values

    def rule(pos):
        acc = np.zeros(pos.shape, dtype=np.complex128)
        for k, v in zip(offsets, kvals):
            acc += v * base(pos - int(k))
        return acc

    if comb.support is None:
        support = None
    else:
        support = (comb.support[0] + int(offsets.min()),
                   comb.support[1] + int(offsets.max()))
    bound = float(np.sum(np.abs(kvals))) * comb.declared_bound
    return WeightedComb(f"smooth({comb.label})", rule, bound, support=support,
                        seed=comb.seed)


def translation_bound_witness(comb, positions):
    """Max of ``|w|`` over a finite probe set (one-point window witness)."""
    return float(np.max(np.abs(comb.values(np.asarray(positions, dtype=np.int64)))))


def comb_to_csv(comb, interval, path):
    """Write comb weights on an interval as CSV with header position,re,im."""
    lo, hi = check_interval(interval)
    vals = window_values(comb, (lo, hi))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["position", "re", "im"])
        for p, v in zip(range(lo, hi + 1), vals):
            writer.writerow([p, repr(float(v.real)), repr(float(v.imag))])


def comb_from_csv(path, label=None):
    """Load a finite-support comb from CSV written by :func:`comb_to_csv`.

    Positions must be strictly increasing integers; gaps get weight zero.
    """
    positions = []
    weights = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:3]] != ["position", "re", "im"]:
            raise ValueError(f"bad comb CSV header in {path}")
        for row in reader:
            if not row:
                continue
            positions.append(int(row[0]))
            weights.append(complex(float(row[1]), float(row[2])))
    if not positions:
        raise ValueError(f"comb CSV {path} has no rows")
    pos_arr = np.array(positions, dtype=np.int64)
    if np.any(np.diff(pos_arr) <= 0):
        raise ValueError(f"comb CSV {path}: positions must be strictly increasing")
    lo, hi = int(pos_arr[0]), int(pos_arr[-1])
    dense = np.zeros(hi - lo + 1, dtype=np.complex128)
    dense[pos_arr - lo] = np.array(weights, dtype=np.complex128)

    def rule(pos):
        return dense[pos - lo]

    bound = float(np.max(np.abs(dense))) if len(dense) else 0.0
    return WeightedComb(label or f"csv:{path}", rule, bound, support=(lo, hi))
