"""
Spectral estimators for weighted combs.

Two independent routes to the point mass of the transformed autocorrelation
at a frequency:

* periodogram route: ``|c_theta|^2`` by construction of the windowed
  coefficient (normalised squared exponential sum), and
* lag-averaged route: the Cesaro average of the autocorrelation profile
  against the character, which knows nothing about the coefficient.

Their gap is the consistent-phase diagnostic.  The lag-averaged squared
profile (Wiener ratio) separates pure-point from continuous behaviour, and
the profile splits exactly into a trigonometric part plus remainder.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .convolve import finite_autocorrelation
from .combs import window_values
from .fourier import fb_coefficient
from .frequencies import character_values, freq_float, freq_mod1


@dataclass
class SpectralEstimate:
    """Bragg intensity estimates at one frequency, by both routes."""

    frequency: object
    bragg_periodogram: float
    bragg_cesaro: float
    cpp_gap: float
    window_index: int

    def consistent(self, tol=0.05):
        return self.cpp_gap <= tol


@dataclass
class DecompositionReport:
    """Per-lag split of an autocorrelation profile.

    ``gamma == gamma_s + gamma0`` holds exactly per lag by construction;
    ``wiener_remainder`` is the lag-averaged squared remainder.
    """

    lags: np.ndarray
    gamma: np.ndarray
    gamma_s: np.ndarray
    gamma0: np.ndarray
    wiener_remainder: float

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["lag", "gamma_re", "gamma_im", "gamma_s_re",
                        "gamma_s_im", "gamma0_re", "gamma0_im"])
            for j, t in enumerate(self.lags):
                w.writerow([int(t),
                            repr(float(self.gamma[j].real)), repr(float(self.gamma[j].imag)),
                            repr(float(self.gamma_s[j].real)), repr(float(self.gamma_s[j].imag)),
                            repr(float(self.gamma0[j].real)), repr(float(self.gamma0[j].imag))])


def periodogram(mu, family, n, thetas):
    """Normalised periodogram ``|c_theta|^2`` at the given frequencies.

    Equals ``(1/|A_n|^2) |sum_t w(t) e^{-2 pi i theta t}|^2`` per frequency.
    """
    return np.array([abs(fb_coefficient(mu, th, family, n).value) ** 2
                     for th in thetas])


def periodogram_fft(mu, family, n, grid_size=None):
    """Periodogram on the regular grid ``k/N`` via one zero-padded FFT.

    Returns ``(thetas, values)``.  The default grid size is the next power
    of two at or above the window volume.
    """
    l, r = family.interval(n)
    vol = r - l + 1
    if grid_size is None:
        grid_size = 1
        while grid_size < vol:
            grid_size *= 2
    grid_size = int(grid_size)
    if grid_size < vol:
        raise ValueError("grid_size must be >= window volume")
    vals = window_values(mu, (l, r))
    spectrum = np.fft.fft(vals, grid_size)
    thetas = np.arange(grid_size) / grid_size
    return thetas, np.abs(spectrum) ** 2 / vol ** 2


def lag_average(profile, theta, lag_bound=None):
    """Cesaro average of a profile against a character.

    ``(1/(2L+1)) * sum_{|t|<=L} profile(t) e^{-2 pi i theta t}``, complex.
    """
    L = profile.lag_bound if lag_bound is None else int(lag_bound)
    if L > profile.lag_bound:
        raise ValueError("lag_bound exceeds the profile's lag range")
    j0 = profile.lag_bound - L
    lags = profile.lags[j0:j0 + 2 * L + 1]
    vals = profile.values[j0:j0 + 2 * L + 1]
    chars = np.conj(character_values(freq_mod1(theta), lags))
    return complex(np.sum(vals * chars) / (2 * L + 1))


def bragg_cesaro(profile, theta, lag_bound=None):
    """Point-mass estimate by lag averaging; the real part is the mass.

    For a real comb the imaginary part cancels exactly at theta in
    {0, 1/2}; elsewhere it is a boundary-sized remnant.
    """
    return float(lag_average(profile, theta, lag_bound).real)


def default_lag_cap(volume):
    """Lag cap keeping the boundary error of lag averaging under 5 percent."""
    return int(min(500, volume // 20))


def cpp_check(mu, theta, family, n, lag_bound=None, method="auto"):
    """Consistent-phase diagnostic at one frequency.

    Compares ``|c_theta|^2`` against the lag-averaged point-mass estimate
    of the independent autocorrelation profile.
    """
    theta = freq_mod1(theta)
    if lag_bound is None:
        lag_bound = default_lag_cap(family.volume(n))
    coeff = fb_coefficient(mu, theta, family, n)
    pp = abs(coeff.value) ** 2
    prof = finite_autocorrelation(mu, family, n, lag_bound, method=method)
    ces = bragg_cesaro(prof, theta)
    return SpectralEstimate(theta, float(pp), ces, abs(ces - pp), int(n))


def wiener_ratio(profile, lag_bound=None):
    """Lag-averaged squared profile ``(1/(2L+1)) sum |gamma(t)|^2``.

    Tends to the sum of squared point masses as window and lag range grow:
    near the squared total point mass for periodic combs, near zero for
    combs with continuous spectral type.
    """
    L = profile.lag_bound if lag_bound is None else int(lag_bound)
    if L > profile.lag_bound:
        raise ValueError("lag_bound exceeds the profile's lag range")
    j0 = profile.lag_bound - L
    vals = profile.values[j0:j0 + 2 * L + 1]
    return float(np.mean(np.abs(vals) ** 2))


def eberlein_split(profile, frequencies, masses):
    """Split a profile into a trigonometric part and a remainder.

    ``gamma_s(t) = sum_j m_j e^{2 pi i theta_j t}`` with the given masses;
    the remainder is ``gamma - gamma_s`` lag by lag (exact additivity).
    """
    frequencies = [freq_mod1(f) for f in frequencies]
    masses = [float(m) for m in masses]
    if len(frequencies) != len(masses):
        raise ValueError("frequencies and masses must pair up")
    gs = np.zeros(len(profile.lags), dtype=np.complex128)
    for f, m in zip(frequencies, masses):
        gs += m * character_values(f, profile.lags)
    g0 = profile.values - gs
    rem = float(np.mean(np.abs(g0) ** 2))
    return DecompositionReport(profile.lags, profile.values.copy(), gs, g0, rem)
