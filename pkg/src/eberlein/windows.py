"""
Averaging window families on the integers.

A :class:`VanHoveFamily` is a parameterised family ``n -> [l_n, r_n]`` of
integer intervals whose volumes grow while every compact boundary becomes
negligible, the finite stand-in for a van Hove sequence.  Only interval
families are supported; they admit exact boundary enumeration and
FFT-friendly windows.

Family spec grammar (used by the CLI and config files)::

    sym                 [-n, n]
    onesided            [0, n]
    pow:a,b             [-floor(n^a), floor(n^b)]
    refl:<spec>         reflected family  n -> [-r_n, -l_n]
    shift:<x>:<spec>    translated family n -> [l_n + x, r_n + x]
"""

import numpy as np

DEFAULT_MAX_N = 1 << 20


class VanHoveFamily:
    """Parameterised interval family ``n -> [l_n, r_n]``, n >= 1.

    Indices beyond ``max_n`` are refused rather than silently extrapolated.
    """

    __slots__ = ("label", "kind", "max_n", "_rule")

    def __init__(self, label, kind, rule, max_n=DEFAULT_MAX_N):
        self.label = str(label)
        self.kind = kind
        self._rule = rule
        self.max_n = int(max_n)

    def __repr__(self):
        return f"VanHoveFamily({self.label!r})"

    def interval(self, n):
        """The window ``[l_n, r_n]`` at index n."""
        n = int(n)
        if n < 1:
            raise ValueError("index out of range: family indices start at 1")
        if n > self.max_n:
            raise ValueError(f"index {n} exceeds max_n={self.max_n} for {self.label}")
        l, r = self._rule(n)
        l, r = int(l), int(r)
        if r < l:
            raise ValueError(f"degenerate window at n={n}: [{l}, {r}]")
        return l, r

    def volume(self, n):
        """Number of integer points in the window at index n."""
        l, r = self.interval(n)
        return r - l + 1

    def boundary_ratio(self, n, K):
        """Relative K-boundary ``|boundary_K(A_n)| / |A_n|``.

        The K-boundary of A is ``((A+K) \\ A) union (((Z \\ A) - K) inter A)``,
        computed here by exact set enumeration.  K is an inclusive integer
        interval (k0, k1).
        """
        k0, k1 = int(K[0]), int(K[1])
        if k1 < k0:
            raise ValueError("K must be a non-empty interval")
        l, r = self.interval(n)
        a = set(range(l, r + 1))
        grown = set(range(l + k0, r + k1 + 1))
        outer = grown - a
        # x in A lies in ((Z\A) - K) iff some x + k with k in K escapes A.
        inner = {x for x in a if x + k0 < l or x + k1 > r}
        return (len(outer) + len(inner)) / len(a)

    def reflect(self):
        """The reflected family ``n -> [-r_n, -l_n]``."""
        rule = self._rule

        def reflected(n):
            l, r = rule(n)
            return (-r, -l)

        return VanHoveFamily(f"refl:{self.label}", ("reflected", self.kind),
                             reflected, max_n=self.max_n)

    def translated(self, x):
        """The translated family ``n -> [l_n + x, r_n + x]``."""
        x = int(x)
        rule = self._rule

        def shifted(n):
            l, r = rule(n)
            return (l + x, r + x)

        return VanHoveFamily(f"shift:{x}:{self.label}", ("translated", x, self.kind),
                             shifted, max_n=self.max_n)


def symmetric_family(max_n=DEFAULT_MAX_N):
    """The centred family ``[-n, n]``."""
    return VanHoveFamily("sym", "symmetric", lambda n: (-n, n), max_n=max_n)


def one_sided_family(max_n=DEFAULT_MAX_N):
    """The one-sided family ``[0, n]``."""
    return VanHoveFamily("onesided", "one_sided", lambda n: (0, n), max_n=max_n)


def power_family(a, b, max_n=DEFAULT_MAX_N):
    """The asymmetric family ``[-floor(n^a), floor(n^b)]``.

    ``power_family(1, 2)`` and ``power_family(2, 1)`` are the window families
    along which a fixed comb can show different autocorrelations.
    """
    a = float(a)
    b = float(b)
    if a < 0 or b < 0:
        raise ValueError("exponents must be >= 0")

    def rule(n):
        return (-int(np.floor(n ** a)), int(np.floor(n ** b)))

    def fmt(e):
        return str(int(e)) if float(e).is_integer() else repr(float(e))

    return VanHoveFamily(f"pow:{fmt(a)},{fmt(b)}", ("power", a, b), rule, max_n=max_n)


def parse_family(spec, max_n=DEFAULT_MAX_N):
    """Build a family from its spec string (see module docstring)."""
    spec = spec.strip()
    if spec == "sym":
        return symmetric_family(max_n=max_n)
    if spec == "onesided":
        return one_sided_family(max_n=max_n)
    if spec.startswith("pow:"):
        parts = spec[4:].split(",")
        if len(parts) != 2:
            raise ValueError(f"bad family spec {spec!r}: expected pow:a,b")
        return power_family(float(parts[0]), float(parts[1]), max_n=max_n)
    if spec.startswith("refl:"):
        return parse_family(spec[5:], max_n=max_n).reflect()
    if spec.startswith("shift:"):
        rest = spec[6:]
        x_str, _, inner = rest.partition(":")
        if not inner:
            raise ValueError(f"bad family spec {spec!r}: expected shift:x:<spec>")
        return parse_family(inner, max_n=max_n).translated(int(x_str))
    raise ValueError(f"unknown family spec {spec!r}")
