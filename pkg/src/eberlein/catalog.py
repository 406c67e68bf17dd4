"""
Catalog of named combs spanning the spectral types used by the test benches:
pure point (constant, periodic, cut-and-project rotation, substitution),
continuous (two-sided Thue-Morse, centred coin flips) and the mixed
constant-plus-one-sided-Thue-Morse comb whose autocorrelation depends on the
averaging family.

Comb spec grammar::

    dirac                       weight 1 at every integer
    periodic:p:w0,w1,...        period-p pattern of complex weights
    tm_pm                       two-sided +-1 Thue-Morse
    tm01                        0/1 Thue-Morse, (1 + t(n)) / 2
    paper_mu                    1 for n < 0, 1 + t(n) for n >= 0
    fib_rot[:alpha:beta]        rotation comb 1_{ {n*alpha} < beta }
    fib_sub                     two-sided a->ab, b->a substitution word
    bern[:p:seed]               centred i.i.d. +-1 comb (counter-based RNG)
    char:theta                  character comb exp(2 pi i theta n)
    csv:<path>                  finite comb from a position,re,im CSV file
"""

from fractions import Fraction

import numpy as np

from .combs import WeightedComb, comb_from_csv
from .frequencies import character_values, freq_label, freq_mod1

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0

_SM_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM_M1 = np.uint64(0xBF58476D1CE4E5B9)
_SM_M2 = np.uint64(0x94D049BB133111EB)


def _splitmix64(seed, pos):
    """Counter-based 64-bit mix: position n yields the n-th stream value.

    This is the SplitMix64 finaliser applied to ``seed + n * golden64``,
    evaluated statelessly per position, so streams are reproducible across
    platforms and independent of evaluation order.
    """
    z = np.uint64(seed) + pos.astype(np.uint64) * _SM_GAMMA
    z = (z ^ (z >> np.uint64(30))) * _SM_M1
    z = (z ^ (z >> np.uint64(27))) * _SM_M2
    return z ^ (z >> np.uint64(31))


def _popcount(arr):
    """Bit count of a uint64 array (SWAR; avoids version-specific intrinsics)."""
    x = arr.astype(np.uint64)
    m1 = np.uint64(0x5555555555555555)
    m2 = np.uint64(0x3333333333333333)
    m4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    h = np.uint64(0x0101010101010101)
    x = x - ((x >> np.uint64(1)) & m1)
    x = (x & m2) + ((x >> np.uint64(2)) & m2)
    x = (x + (x >> np.uint64(4))) & m4
    return ((x * h) >> np.uint64(56)).astype(np.int64)


def thue_morse_signs(positions):
    """Two-sided +-1 Thue-Morse weights.

    For ``n >= 0`` the sign is ``(-1)**s2(n)`` with ``s2`` the binary digit
    sum; negative positions use the mirror convention ``t(n) = t(-n-1)``,
    which keeps the weights unimodular.
    """
    pos = np.asarray(positions, dtype=np.int64)
    folded = np.where(pos >= 0, pos, -pos - 1)
    odd = _popcount(folded) & 1
    return np.where(odd == 0, 1.0, -1.0)


def dirac_comb():
    """Weight 1 at every integer (the fully periodic reference comb)."""
    return WeightedComb("dirac", lambda pos: np.ones(pos.shape), 1.0,
                        spectral_type="pure_point",
                        bragg_frequencies=(Fraction(0, 1),))


def periodic_comb(period, pattern):
    """Periodic comb: weight at n is ``pattern[n mod period]``."""
    period = int(period)
    if period < 1:
        raise ValueError("period must be >= 1")
    pat = np.asarray([complex(w) for w in pattern], dtype=np.complex128)
    if len(pat) != period:
        raise ValueError("pattern length must equal the period")

    def rule(pos):
        return pat[np.mod(pos, period)]

    label = "periodic:%d:%s" % (period, ",".join(_fmt_weight(w) for w in pat))
    freqs = tuple(Fraction(k, period) for k in range(period))
    return WeightedComb(label, rule, float(np.max(np.abs(pat))),
                        spectral_type="pure_point", bragg_frequencies=freqs)


def thue_morse_comb():
    """Two-sided +-1 Thue-Morse comb (null mean, no point spectrum)."""
    return WeightedComb("tm_pm", thue_morse_signs, 1.0,
                        spectral_type="continuous")


def thue_morse01_comb():
    """0/1 Thue-Morse comb ``(1 + t(n)) / 2``."""

    def rule(pos):
        return (1.0 + thue_morse_signs(pos)) / 2.0

    return WeightedComb("tm01", rule, 1.0, spectral_type="mixed",
                        bragg_frequencies=(Fraction(0, 1),))


def mixed_example_comb():
    """Constant comb plus a one-sided +-1 Thue-Morse tail.

    Weight 1 for ``n < 0`` and ``1 + t(n)`` (0 or 2) for ``n >= 0``.  Its
    point spectrum sits on the integers with unit intensity regardless of
    the window family, while the continuous part is only visible along
    families whose volume is dominated by the right half-line.
    """

    def rule(pos):
        return np.where(pos < 0, 1.0, 1.0 + thue_morse_signs(pos))

    return WeightedComb("paper_mu", rule, 2.0, spectral_type="mixed",
                        bragg_frequencies=(Fraction(0, 1),))


def rotation_comb(alpha=None, beta=None):
    """Cut-and-project comb ``1 if {n*alpha} < beta else 0``.

    Defaults put both the rotation and the acceptance width at the inverse
    golden mean, matching the substitution comb up to a fixed offset.
    """
    alpha = GOLDEN if alpha is None else float(alpha)
    beta = GOLDEN if beta is None else float(beta)
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")

    def rule(pos):
        return (np.mod(pos * alpha, 1.0) < beta).astype(np.float64)

    if alpha == GOLDEN and beta == GOLDEN:
        label = "fib_rot"
    else:
        label = f"fib_rot:{alpha!r}:{beta!r}"
    freqs = tuple(sorted({(k * alpha) % 1.0 for k in range(-3, 4)}))
    return WeightedComb(label, rule, 1.0, spectral_type="pure_point",
                        bragg_frequencies=freqs)


def _grow_fib(word):
    # a -> ab, b -> a on an int8 array with a=1, b=0 (vectorised)
    counts = np.where(word == 1, 2, 1)
    starts = np.cumsum(counts) - counts
    out = np.ones(int(counts.sum()), dtype=np.int8)
    out[starts[word == 1] + 1] = 0
    return out


_FIB_SUPPORT = 1 << 21
_FIB_WORD = None


def _fib_word():
    # One iterate of the *squared* substitution large enough for the declared
    # support; squaring keeps the word both prefix- and suffix-stable, so it
    # serves as right half (read forward) and left half (read backward).
    global _FIB_WORD
    if _FIB_WORD is None:
        w = np.array([1], dtype=np.int8)
        while len(w) < _FIB_SUPPORT:
            w = _grow_fib(_grow_fib(w))
        _FIB_WORD = w
    return _FIB_WORD


def substitution_comb():
    """Two-sided fixed point of a -> ab, b -> a with weight 1 on a, 0 on b.

    The right half is the usual fixed point starting from ``a``; the left
    half reads the squared-substitution iterates backwards from the seed
    pair ``a|a``, whose two ends are stable under the squared substitution.
    """
    word = _fib_word()
    n_chars = len(word)

    def rule(pos):
        idx = np.where(pos >= 0, pos, n_chars + pos)
        return word[idx].astype(np.float64)

    return WeightedComb("fib_sub", rule, 1.0, support=(-n_chars, n_chars - 1),
                        spectral_type="pure_point",
                        bragg_frequencies=(0.0, GOLDEN, (1 - GOLDEN) % 1.0))


def bernoulli_comb(p=0.5, seed=0):
    """Centred i.i.d. +-1 comb: ``X_n - (2p - 1)`` with ``P(X_n = 1) = p``.

    Driven by the counter-based mix in :func:`_splitmix64`, so the same seed
    reproduces the same weights on any platform and in any evaluation order.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    seed = int(seed) & 0xFFFFFFFFFFFFFFFF
    mean = 2.0 * p - 1.0

    def rule(pos):
        u = (_splitmix64(seed, pos) >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)
        return np.where(u < p, 1.0, -1.0) - mean

    label = "bern" if (p == 0.5 and seed == 0) else f"bern:{p!r}:{seed}"
    return WeightedComb(label, rule, 1.0 + abs(mean), seed=seed,
                        spectral_type="continuous")


def character_comb(theta):
    """Unimodular character comb ``exp(2 pi i theta n)``."""
    theta = freq_mod1(theta)

    def rule(pos):
        return character_values(theta, pos)

    return WeightedComb(f"char:{freq_label(theta)}", rule, 1.0,
                        spectral_type="pure_point",
                        bragg_frequencies=(theta,))


def _fmt_weight(w):
    w = complex(w)
    if w.imag == 0.0:
        v = w.real
        return str(int(v)) if float(v).is_integer() else repr(v)
    return f"{w.real!r}{w.imag:+}j"


_BUILDERS = {
    "dirac": lambda params: dirac_comb(),
    "dirac_Z": lambda params: dirac_comb(),
    "tm_pm": lambda params: thue_morse_comb(),
    "tm01": lambda params: thue_morse01_comb(),
    "paper_mu": lambda params: mixed_example_comb(),
    "fib_sub": lambda params: substitution_comb(),
}


def make(name, **params):
    """Build a catalog comb by name.

    Known names: ``dirac``, ``periodic``, ``tm_pm``, ``tm01``, ``paper_mu``,
    ``fib_rot``, ``fib_sub``, ``bern``, ``char``.
    """
    if name in _BUILDERS:
        if params:
            raise ValueError(f"{name} takes no parameters")
        return _BUILDERS[name](params)
    if name == "periodic":
        return periodic_comb(params["period"], params["pattern"])
    if name == "fib_rot":
        return rotation_comb(params.get("alpha"), params.get("beta"))
    if name == "bern":
        return bernoulli_comb(params.get("p", 0.5), params.get("seed", 0))
    if name == "char":
        return character_comb(params["theta"])
    raise ValueError(f"unknown comb name {name!r}")


def classify_expected(name):
    """Ground-truth spectral-type tag for a catalog name.

    Returns ``pure_point``, ``continuous`` or ``mixed``; drives which
    theorem bench a comb enters.
    """
    tags = {
        "dirac": "pure_point", "dirac_Z": "pure_point",
        "periodic": "pure_point", "fib_rot": "pure_point",
        "fib_sub": "pure_point", "char": "pure_point",
        "tm_pm": "continuous", "bern": "continuous",
        "tm01": "mixed", "paper_mu": "mixed",
    }
    base = name.split(":", 1)[0]
    if base not in tags:
        raise ValueError(f"unknown comb name {name!r}")
    return tags[base]


def _parse_theta(tok):
    if "/" in tok:
        num, den = tok.split("/")
        return Fraction(int(num), int(den))
    return float(tok)


def parse_comb(spec):
    """Build a comb from a spec string (see module docstring)."""
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    if head in _BUILDERS:
        if rest:
            raise ValueError(f"comb spec {head!r} takes no parameters")
        return _BUILDERS[head](None)
    if head == "periodic":
        p_str, _, w_str = rest.partition(":")
        if not w_str:
            raise ValueError(f"bad comb spec {spec!r}: expected periodic:p:w0,w1,...")
        weights = [complex(tok) for tok in w_str.split(",")]
        return periodic_comb(int(p_str), weights)
    if head == "fib_rot":
        if not rest:
            return rotation_comb()
        a_str, _, b_str = rest.partition(":")
        if not b_str:
            raise ValueError(f"bad comb spec {spec!r}: expected fib_rot:alpha:beta")
        return rotation_comb(float(a_str), float(b_str))
    if head == "bern":
        if not rest:
            return bernoulli_comb()
        p_str, _, s_str = rest.partition(":")
        if not s_str:
            raise ValueError(f"bad comb spec {spec!r}: expected bern:p:seed")
        return bernoulli_comb(float(p_str), int(s_str))
    if head == "char":
        if not rest:
            raise ValueError(f"bad comb spec {spec!r}: expected char:theta")
        return character_comb(_parse_theta(rest))
    if head == "csv":
        if not rest:
            raise ValueError(f"bad comb spec {spec!r}: expected csv:<path>")
        return comb_from_csv(rest)
    raise ValueError(f"unknown comb spec {spec!r}")


CATALOG_NAMES = ("dirac", "tm_pm", "tm01", "paper_mu", "fib_rot", "fib_sub",
                 "bern", "char:1/4")


def catalog_combs():
    """One instance of every catalog comb (defaults), for sweep tests."""
    return [parse_comb(name) for name in CATALOG_NAMES]
