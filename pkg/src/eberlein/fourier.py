"""
Fourier-Bohr coefficient estimation and the identities around it.

A coefficient estimate at frequency theta is the windowed character average

    c_theta = (1/|A_n|) * sum_{t in x+A_n} exp(-2 pi i theta t) w(t),

optionally probed over translates x to gauge uniformity.  The module also
provides the exact conjugation/reflection identities, the smoothing
relation against a kernel's transform, the character-convolution
factorisation, Besicovitch seminorms with their finite-volume inequalities,
trigonometric-polynomial approximation, and a threshold-plus-decay scan of
the retained frequency set.
"""

import csv
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .combs import WeightedComb, conjugate, reflect_dagger, reflect_tilde, \
    as_kernel, smooth, window_values
from .convolve import IdentityReport, finite_eberlein_full
from .frequencies import character_values, freq_conjugate, freq_float, \
    freq_label, freq_mod1, rational_grid


@dataclass
class FBEstimate:
    """A Fourier-Bohr coefficient estimate at one frequency."""

    frequency: object
    window_index: int
    translate: int
    value: complex
    uniform_deviation: float = 0.0

    @property
    def magnitude(self):
        return abs(self.value)


def _fb_window_average(comb, theta, interval, translate=0):
    lo, hi = interval[0] + int(translate), interval[1] + int(translate)
    vals = window_values(comb, (lo, hi))
    pos = np.arange(lo, hi + 1, dtype=np.int64)
    chars = np.conj(character_values(theta, pos))
    return complex(np.sum(vals * chars) / (hi - lo + 1))


def fb_coefficient(mu, theta, family, n, translate=0):
    """Windowed Fourier-Bohr coefficient of a comb.

    Averages ``conj(chi_theta) * mu`` over the translated window
    ``translate + A_n``.
    """
    theta = freq_mod1(theta)
    value = _fb_window_average(mu, theta, family.interval(n), translate)
    return FBEstimate(theta, int(n), int(translate), value)


def fb_uniform_probe(mu, theta, family, schedule, translates=(0,)):
    """Probe uniformity of a coefficient across windows and translates.

    Returns the estimate at the largest window and translate 0, with
    ``uniform_deviation`` the spread ``max_x |c(n_max, x) - c(n_max, 0)|``
    over the probed translates.
    """
    theta = freq_mod1(theta)
    schedule = tuple(int(s) for s in schedule)
    n_max = max(schedule)
    base = fb_coefficient(mu, theta, family, n_max, 0)
    spread = 0.0
    for x in translates:
        est = fb_coefficient(mu, theta, family, n_max, x)
        spread = max(spread, abs(est.value - base.value))
    return FBEstimate(theta, n_max, 0, base.value, uniform_deviation=spread)


def fb_conjugation_suite(mu, theta, family, n):
    """Exact conjugation/reflection identities for windowed coefficients.

    At finite volume the following hold term by term:

    * ``c_{1-theta}(conj mu)        == conj(c_theta(mu))``   over A_n,
    * ``c_theta(tilde mu)           == conj(c_theta(mu))``   over -A_n,
    * ``c_{1-theta}(dagger mu)      == c_theta(mu)``         over -A_n.
    """
    theta = freq_mod1(theta)
    theta_bar = freq_conjugate(theta)
    a_n = family.interval(n)
    neg = family.reflect().interval(n)
    base = _fb_window_average(mu, theta, a_n)
    devs = {
        "conjugate": abs(_fb_window_average(conjugate(mu), theta_bar, a_n)
                         - np.conj(base)),
        "tilde": abs(_fb_window_average(reflect_tilde(mu), theta, neg)
                     - np.conj(base)),
        "dagger": abs(_fb_window_average(reflect_dagger(mu), theta_bar, neg)
                      - base),
    }
    return IdentityReport("fb_conjugation", float(max(devs.values())),
                          details={"mu": mu.label, "theta": freq_label(theta),
                                   "n": int(n), **devs})


def kernel_transform(kernel, theta):
    """Transform of a finitely supported kernel: ``sum_k phi(k) e^{-2 pi i theta k}``."""
    offsets, values = as_kernel(kernel)
    chars = np.conj(character_values(freq_mod1(theta), offsets))
    return complex(np.sum(values * chars))


@dataclass
class SmoothingReport:
    """Both sides of the smoothing relation and their gap."""

    smoothed_side: complex
    factored_side: complex
    deviation: float


def fb_smoothing_identity(mu, kernel, theta, family, n):
    """Compare ``c_theta(mu * phi)`` with ``phi_hat(theta) c_theta(mu)``.

    Exact for the unit kernel; otherwise the gap is a boundary term of
    order kernel width over window volume.
    """
    theta = freq_mod1(theta)
    lhs = _fb_window_average(smooth(mu, kernel), theta, family.interval(n))
    rhs = kernel_transform(kernel, theta) * _fb_window_average(mu, theta, family.interval(n))
    return SmoothingReport(lhs, rhs, abs(lhs - rhs))


def character_convolution(mu, theta, family, n, lag_bound, method="auto"):
    """Factorisation of the convolution against a character comb.

    With the second factor left unrestricted, the finite sum factors
    algebraically: profile(t) ``== chi_theta(t) * c_theta(mu)`` exactly.
    """
    theta = freq_mod1(theta)

    def rule(pos):
        return character_values(theta, pos)

    chi = WeightedComb(f"char:{freq_label(theta)}", rule, 1.0)
    profile = finite_eberlein_full(mu, chi, family, n, lag_bound, method=method)
    coeff = _fb_window_average(mu, theta, family.interval(n))
    predicted = character_values(theta, profile.lags) * coeff
    dev = np.max(np.abs(profile.values - predicted))
    return IdentityReport("character_convolution", float(dev),
                          details={"mu": mu.label, "theta": freq_label(theta),
                                   "n": int(n), "coefficient": coeff})


def besicovitch_seminorm(mu, p, family, n):
    """Windowed Besicovitch seminorm ``((1/|A_n|) sum |w|^p)^(1/p)``."""
    p = float(p)
    if p < 1:
        raise ValueError("p must be >= 1")
    vals = window_values(mu, family.interval(n))
    return float(np.mean(np.abs(vals) ** p) ** (1.0 / p))


@dataclass
class SeminormReport:
    """Finite-volume seminorm facts for one comb and window."""

    p: float
    q: float
    norm_1: float
    norm_p: float
    norm_q: float
    translate_deviation: float
    translate_bound: float
    jensen_ok: bool
    hoelder_ok: bool


def seminorm_inequality_suite(mu, family, n, p, q, translates=(-7, 13)):
    """Check the seminorm inequalities that hold literally at finite volume.

    * translate invariance up to a boundary term (probed translates),
    * ``norm_1 <= norm_p``  (Jensen, exact),
    * ``(1/|A_n|) sum |w * g| <= norm_p(w) * norm_q(g)`` with ``g = 1``
      (the finite Hoelder bound).
    """
    p = float(p)
    q = float(q)
    if abs(1.0 / p + 1.0 / q - 1.0) > 1e-9:
        raise ValueError("need 1/p + 1/q = 1")
    l, r = family.interval(n)
    vol = r - l + 1
    n1 = besicovitch_seminorm(mu, 1.0, family, n)
    np_ = besicovitch_seminorm(mu, p, family, n)
    nq = besicovitch_seminorm(mu, q, family, n)
    dev = 0.0
    bound = 0.0
    for x in translates:
        x = int(x)
        shifted = window_values(mu, (l - x, r - x))
        sp = float(np.mean(np.abs(shifted) ** p) ** (1.0 / p))
        dev = max(dev, abs(sp - np_))
        big = window_values(mu, (l - abs(x), r + abs(x)))
        peak = float(np.max(np.abs(big)))
        bound = max(bound, (2.0 * abs(x) * peak ** p / vol) ** (1.0 / p))
    eps = 1e-12
    return SeminormReport(p, q, n1, np_, nq, dev, bound,
                          jensen_ok=n1 <= np_ + eps,
                          hoelder_ok=n1 <= np_ * 1.0 + eps)


def trig_poly_comb(frequencies, coefficients, label=None):
    """Trigonometric polynomial ``t -> sum_j c_j chi_{theta_j}(t)`` as a comb."""
    freqs = [freq_mod1(f) for f in frequencies]
    coefs = [complex(c) for c in coefficients]
    if len(freqs) != len(coefs):
        raise ValueError("frequencies and coefficients must pair up")

    def rule(pos):
        acc = np.zeros(pos.shape, dtype=np.complex128)
        for c, f in zip(coefs, freqs):
            acc += c * character_values(f, pos)
        return acc

    bound = float(sum(abs(c) for c in coefs))
    return WeightedComb(label or f"trigpoly[{len(freqs)}]", rule, bound,
                        bragg_frequencies=tuple(freqs))


def trig_poly_residual(mu, frequencies, family, n):
    """Besicovitch-2 distance from mu to its own trigonometric projection.

    Builds ``P = sum_j c_j chi_j`` with the windowed coefficients of mu at
    the given (distinct) frequencies and returns ``norm_{b,2}(mu - P)`` over
    the same window.
    """
    freqs = [freq_mod1(f) for f in frequencies]
    if len({freq_float(f) for f in freqs}) != len(freqs):
        raise ValueError("frequencies must be distinct")
    l, r = family.interval(n)
    pos = np.arange(l, r + 1, dtype=np.int64)
    vals = window_values(mu, (l, r))
    approx = np.zeros(len(pos), dtype=np.complex128)
    for f in freqs:
        chars = character_values(f, pos)
        coeff = np.sum(vals * np.conj(chars)) / len(pos)
        approx += coeff * chars
    return float(np.sqrt(np.mean(np.abs(vals - approx) ** 2)))


@dataclass
class FBSpectrumScan:
    """Result of a retained-frequency scan.

    ``estimates`` maps each probed frequency to its FBEstimate at the
    largest window; ``history`` holds ``|c|`` per schedule entry.  A
    frequency is retained when its final magnitude clears the threshold
    and, across the schedule, does not decay below ``decay_cut`` times its
    smallest-window magnitude (power-law decay marks a vanishing
    coefficient that a single window cannot distinguish from a genuine
    point mass).
    """

    schedule: tuple
    threshold: float
    decay_cut: float
    frequencies: list
    estimates: dict = field(default_factory=dict)
    history: dict = field(default_factory=dict)
    retained: list = field(default_factory=list)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["theta_num", "theta_den_or_nan", "theta_real",
                        "re", "im", "abs", "uniform_dev"])
            for f in self.frequencies:
                est = self.estimates[f]
                if isinstance(f, Fraction):
                    num, den = f.numerator, f.denominator
                else:
                    num, den = "nan", "nan"
                w.writerow([num, den, repr(freq_float(f)),
                            repr(est.value.real), repr(est.value.imag),
                            repr(abs(est.value)), repr(est.uniform_deviation)])


def default_scan_threshold(volume):
    """Three times the shot-noise scale of a random comb at this volume."""
    return 3.0 / np.sqrt(volume)


def spectrum_scan(mu, family, schedule, q_max=32, extra=(), threshold=None,
                  decay_cut=0.5, translates=(0,)):
    """Scan for frequencies with non-vanishing coefficients.

    The probe grid is every reduced rational p/q with q <= q_max plus the
    caller's extra frequencies; the scan is necessarily heuristic, since
    the retained set is countable but unknown a priori.  ``schedule`` is a
    single index or an increasing tuple of indices; with more than one
    scale, frequencies whose magnitude decays are dropped (see
    :class:`FBSpectrumScan`).
    """
    if isinstance(schedule, (int, np.integer)):
        schedule = (int(schedule),)
    else:
        schedule = tuple(int(s) for s in schedule)
    n_max = max(schedule)
    vol = family.volume(n_max)
    thr = default_scan_threshold(vol) if threshold is None else float(threshold)
    grid = list(rational_grid(q_max))
    seen = {freq_float(f) for f in grid}
    for f in extra:
        f = freq_mod1(f)
        if freq_float(f) not in seen:
            grid.append(f)
            seen.add(freq_float(f))
    scan = FBSpectrumScan(schedule, thr, float(decay_cut), grid)
    windows = {s: window_values(mu, family.interval(s)) for s in schedule}
    positions = {s: np.arange(family.interval(s)[0],
                              family.interval(s)[1] + 1, dtype=np.int64)
                 for s in schedule}
    for f in grid:
        mags = []
        value = 0j
        for s in schedule:
            chars = np.conj(character_values(f, positions[s]))
            value = complex(np.sum(windows[s] * chars) / len(positions[s]))
            mags.append(abs(value))
        est = FBEstimate(f, n_max, 0, value)
        if len(translates) > 1 or tuple(translates) != (0,):
            est = fb_uniform_probe(mu, f, family, (n_max,), translates)
        scan.estimates[f] = est
        scan.history[f] = tuple(mags)
        keep = mags[-1] > thr
        if keep and len(mags) > 1 and mags[-1] <= decay_cut * mags[0]:
            keep = False
        if keep:
            scan.retained.append(f)
    return scan
