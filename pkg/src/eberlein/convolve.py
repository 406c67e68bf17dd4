"""
Finite-volume Eberlein convolution and autocorrelation kernels.

The workhorse is the volume-normalised convolution of two restricted combs

    value(t) = (1/|A|) * sum_{s in A, t-s in -A} mu(s) nu(t-s),

the finite approximant of the averaged convolution along a window family.
Two interchangeable kernels compute it: per-lag direct summation and FFT
cross-correlation (zero-padded to the next power of two, double precision).
The algebraic identities that hold exactly at finite volume -- argument
swap under conjugate reflection, window reflection, bilinearity of the
autocorrelation -- are exposed as checkable reports.
"""

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .combs import check_interval, reflect_tilde, window_values

_FFT_MIN_VOLUME = 1 << 11  # below this, direct summation wins


def _threads():
    try:
        return max(1, int(os.environ.get("EBERLEIN_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class LagProfile:
    """Finite-volume convolution profile: one complex value per lag.

    ``values[j]`` belongs to lag ``lags[j]``; ``volume`` is the normalising
    window size |A_n|.
    """

    lags: np.ndarray
    values: np.ndarray
    window_index: int
    family_label: str
    volume: int
    labels: tuple = ("", "")

    @property
    def lag_bound(self):
        return int(self.lags[-1])

    def value(self, t):
        j = int(t) - int(self.lags[0])
        if j < 0 or j >= len(self.lags):
            raise ValueError(f"lag {t} outside profile range")
        return complex(self.values[j])

    def sup(self):
        """Largest absolute profile value."""
        return float(np.max(np.abs(self.values)))

    def to_csv(self, path):
        import csv
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["lag", "re", "im", "window_n", "volume"])
            for t, v in zip(self.lags, self.values):
                w.writerow([int(t), repr(float(v.real)), repr(float(v.imag)),
                            self.window_index, self.volume])

    def to_json(self, path):
        doc = {
            "lags": [int(t) for t in self.lags],
            "re": [float(v.real) for v in self.values],
            "im": [float(v.imag) for v in self.values],
            "window_n": self.window_index,
            "volume": self.volume,
            "family": self.family_label,
            "labels": list(self.labels),
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)


@dataclass
class IdentityReport:
    """Result of an exact finite-volume identity check."""

    name: str
    max_deviation: float
    details: dict = field(default_factory=dict)

    def ok(self, tol=1e-12):
        return self.max_deviation <= tol


@dataclass
class ConvergenceReport:
    """Per-lag values of a convolution along an index schedule.

    ``values[i, j]`` is the profile at ``schedule[i]``, lag ``lags[j]``.
    ``deltas[j]`` is the largest gap between values at the two largest
    scales per lag; the verdict never claims a limit exists, it reports
    Cauchy-style evidence only.
    """

    schedule: tuple
    lags: np.ndarray
    values: np.ndarray
    deltas: np.ndarray
    threshold: np.ndarray
    verdicts: tuple

    @property
    def convergent(self):
        return all(v == "plausibly convergent" for v in self.verdicts)


def _real_if_possible(a, b):
    if np.all(a.imag == 0.0) and np.all(b.imag == 0.0):
        return a.real, b.real, True
    return a, b, False


def _conv_direct(a, b, ks):
    """Linear convolution of a and b at indices ks, by direct summation.

    ``conv[k] = sum_i a[i] * b[k-i]``; each lag is an elementwise product
    reduced with numpy's pairwise summation.
    """
    a, b, real = _real_if_possible(a, b)
    br = b[::-1]
    la, lb = len(a), len(b)
    out = np.zeros(len(ks), dtype=np.float64 if real else np.complex128)

    def fill(j0, j1):
        for j in range(j0, j1):
            k = int(ks[j])
            i0 = max(0, k - lb + 1)
            i1 = min(la - 1, k)
            if i0 > i1:
                continue
            # b[k-i] for ascending i is the contiguous slice of reversed b
            # starting at lb-1-k+i0.
            m0 = lb - 1 - k + i0
            out[j] = np.sum(a[i0:i1 + 1] * br[m0:m0 + (i1 - i0 + 1)])

    nthreads = _threads()
    if nthreads > 1 and len(ks) >= 4 * nthreads:
        from concurrent.futures import ThreadPoolExecutor
        bounds = np.linspace(0, len(ks), nthreads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            list(pool.map(lambda ab: fill(*ab), zip(bounds[:-1], bounds[1:])))
    else:
        fill(0, len(ks))
    return out.astype(np.complex128)


def _conv_fft(a, b, ks):
    """Linear convolution at indices ks via zero-padded FFT."""
    a, b, real = _real_if_possible(a, b)
    need = len(a) + len(b) - 1
    size = 1
    while size < need:
        size *= 2
    if real:
        conv = np.fft.irfft(np.fft.rfft(a, size) * np.fft.rfft(b, size), size)
    else:
        conv = np.fft.ifft(np.fft.fft(a, size) * np.fft.fft(b, size))
    out = np.zeros(len(ks), dtype=np.complex128)
    valid = (ks >= 0) & (ks < need)
    out[valid] = conv[ks[valid]]
    return out


def convolution_profile(a_values, a_origin, b_values, b_origin, lags, method="auto"):
    """Evaluate ``(a * b)(t)`` for the given lags; a and b are finite blocks.

    ``method`` is ``direct``, ``fft`` or ``auto`` (FFT once the blocks are
    large enough to pay for the transforms).
    """
    a = np.asarray(a_values)
    b = np.asarray(b_values)
    lags = np.asarray(lags, dtype=np.int64)
    ks = lags - (int(a_origin) + int(b_origin))
    if method == "auto":
        method = "fft" if min(len(a), len(b)) >= _FFT_MIN_VOLUME else "direct"
    if method == "direct":
        return _conv_direct(np.asarray(a, dtype=np.complex128),
                            np.asarray(b, dtype=np.complex128), ks)
    if method == "fft":
        return _conv_fft(np.asarray(a, dtype=np.complex128),
                         np.asarray(b, dtype=np.complex128), ks)
    raise ValueError(f"unknown method {method!r}")


def _window(family, n):
    l, r = family.interval(n)
    check_interval((l, r))
    return l, r


def finite_eberlein(mu, nu, family, n, lag_bound, method="auto"):
    """Finite-volume Eberlein convolution profile of mu and nu.

    Restricts mu to the window A_n and nu to -A_n, convolves, and divides
    by the window volume.  Lags run over ``[-lag_bound, lag_bound]``.
    """
    L = int(lag_bound)
    if L < 0:
        raise ValueError("lag_bound must be >= 0")
    l, r = _window(family, n)
    vol = r - l + 1
    a = window_values(mu, (l, r))
    b = window_values(nu, (-r, -l))
    lags = np.arange(-L, L + 1, dtype=np.int64)
    vals = convolution_profile(a, l, b, -r, lags, method=method) / vol
    return LagProfile(lags, vals, int(n), family.label, vol,
                      labels=(mu.label, nu.label))


def finite_eberlein_full(mu, nu, family, n, lag_bound, method="auto"):
    """Like :func:`finite_eberlein` but with the second comb unrestricted.

    Computes ``(1/|A_n|) * (mu|_{A_n} * nu)(t)``: nu is evaluated wherever a
    lag in ``[-L, L]`` can reach, not just on -A_n.  The difference between
    the two conventions is a boundary term; see :func:`restriction_tail`.
    """
    L = int(lag_bound)
    if L < 0:
        raise ValueError("lag_bound must be >= 0")
    l, r = _window(family, n)
    vol = r - l + 1
    a = window_values(mu, (l, r))
    b = window_values(nu, (-r - L, -l + L))
    lags = np.arange(-L, L + 1, dtype=np.int64)
    vals = convolution_profile(a, l, b, -r - L, lags, method=method) / vol
    return LagProfile(lags, vals, int(n), family.label, vol,
                      labels=(mu.label, nu.label))


def finite_autocorrelation(mu, family, n, lag_bound, method="auto"):
    """Autocorrelation profile: the Eberlein convolution of mu with tilde(mu)."""
    return finite_eberlein(mu, reflect_tilde(mu), family, n, lag_bound,
                           method=method)


def identity_tilde_swap(mu, nu, family, n, lag_bound, method="direct"):
    """Check ``nu (x) tilde(mu) == tilde(mu (x) tilde(nu))`` at finite volume.

    Both sides are the same finite sum term by term, so the deviation is
    pure floating-point noise; direct summation keeps it at zero for
    integer-weighted combs.
    """
    p1 = finite_eberlein(nu, reflect_tilde(mu), family, n, lag_bound, method=method)
    p2 = finite_eberlein(mu, reflect_tilde(nu), family, n, lag_bound, method=method)
    dev = np.max(np.abs(p1.values - np.conj(p2.values[::-1])))
    return IdentityReport("tilde_swap", float(dev),
                          details={"mu": mu.label, "nu": nu.label, "n": int(n)})


def identity_reflection(mu, nu, family, n, lag_bound, method="direct"):
    """Check ``nu (x)_{-A} mu == mu (x)_A nu`` at finite volume."""
    p1 = finite_eberlein(nu, mu, family.reflect(), n, lag_bound, method=method)
    p2 = finite_eberlein(mu, nu, family, n, lag_bound, method=method)
    dev = np.max(np.abs(p1.values - p2.values))
    return IdentityReport("reflection", float(dev),
                          details={"mu": mu.label, "nu": nu.label, "n": int(n)})


def restriction_tail(mu, nu, family, n, lag_bound, method="auto"):
    """Largest gap between the restricted and unrestricted conventions.

    Returns ``max_{|t|<=L} |(mu|_A * nu|_{-A})(t) - (mu|_A * nu)(t)| / |A|``;
    it is controlled by the relative [-L, L]-boundary of the window, see
    :func:`restriction_tail_bound`.
    """
    p_restricted = finite_eberlein(mu, nu, family, n, lag_bound, method=method)
    p_full = finite_eberlein_full(mu, nu, family, n, lag_bound, method=method)
    return float(np.max(np.abs(p_restricted.values - p_full.values)))


def restriction_tail_bound(mu, nu, family, n, lag_bound):
    """Product-of-bounds boundary estimate dominating :func:`restriction_tail`."""
    ratio = family.boundary_ratio(n, (-int(lag_bound), int(lag_bound)))
    return mu.declared_bound * nu.declared_bound * ratio


def bilinear_expansion(a, mu, b, nu, family, n, lag_bound, method="direct"):
    """Check the exact finite-volume expansion of gamma(a*mu + b*nu).

    The autocorrelation of the linear combination must equal
    ``|a|^2 gamma_mu + |b|^2 gamma_nu + a conj(b) (mu (x) tilde nu)
    + b conj(a) (nu (x) tilde mu)`` lag by lag.
    """
    from .combs import lincomb
    a = complex(a)
    b = complex(b)
    omega = lincomb(a, mu, b, nu)
    lhs = finite_autocorrelation(omega, family, n, lag_bound, method=method)
    g_mu = finite_autocorrelation(mu, family, n, lag_bound, method=method)
    g_nu = finite_autocorrelation(nu, family, n, lag_bound, method=method)
    cross_mn = finite_eberlein(mu, reflect_tilde(nu), family, n, lag_bound, method=method)
    cross_nm = finite_eberlein(nu, reflect_tilde(mu), family, n, lag_bound, method=method)
    rhs = (abs(a) ** 2 * g_mu.values + abs(b) ** 2 * g_nu.values
           + a * np.conj(b) * cross_mn.values + b * np.conj(a) * cross_nm.values)
    dev = np.max(np.abs(lhs.values - rhs))
    return IdentityReport("bilinear_expansion", float(dev),
                          details={"a": a, "b": b, "mu": mu.label,
                                   "nu": nu.label, "n": int(n)})


def convergence_probe(mu, nu, family, schedule, lag_bound, threshold=None,
                      method="auto"):
    """Convolution profiles along an increasing index schedule.

    The default per-lag acceptance for "plausibly convergent" is the gap
    between the two largest scales falling under
    ``max(1e-3, 0.05 * |final value|)``; volume averages of substitution
    combs converge at power-law rates, so equality-style thresholds would
    misreport them.  Schedules shorter than 3 are refused.
    """
    schedule = tuple(int(s) for s in schedule)
    if len(schedule) < 3:
        raise ValueError("schedule must contain at least 3 indices")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be strictly increasing")
    profiles = _scheduled_profiles(mu, nu, family, schedule, lag_bound, method)
    lags = profiles[0].lags
    values = np.stack([p.values for p in profiles])
    tail = values[len(schedule) // 2:]
    deltas = np.max(np.abs(tail[1:] - tail[:-1]), axis=0) if len(tail) > 1 \
        else np.zeros(len(lags))
    final = np.abs(values[-1])
    if threshold is None:
        thr = np.maximum(1e-3, 0.05 * final)
    else:
        thr = np.full(len(lags), float(threshold))
    verdicts = tuple("plausibly convergent" if d <= t else "oscillating"
                     for d, t in zip(deltas, thr))
    return ConvergenceReport(schedule, lags, values, deltas, thr, verdicts)


def _scheduled_profiles(mu, nu, family, schedule, lag_bound, method):
    def one(s):
        return finite_eberlein(mu, nu, family, s, lag_bound, method=method)

    nthreads = _threads()
    if nthreads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            return list(pool.map(one, schedule))
    return [one(s) for s in schedule]
