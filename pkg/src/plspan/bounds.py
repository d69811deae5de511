"""Lower and upper bounds on spanning triangle counts.

Pure calculators.  Knot genus is never computed here; callers that know
it (for torus knots, via torus_genus) pass it in explicitly.
"""

from __future__ import annotations

import math

from .geom import Rat, rat

ISO_BRACKET = (Rat(1, 2), Rat(7))


def genus_lower_bound(g: int) -> int:
    """Triangles needed once the knot genus g is known: 4g + 1."""
    if g < 0 or g != int(g):
        raise ValueError("knot genus must be a nonnegative integer")
    return 4 * int(g) + 1


def torus_genus(p: int, q: int) -> int:
    """Genus (p-1)(q-1)/2 of the (p, q) torus knot."""
    if p < 2 or q < 2:
        raise ValueError("torus knot parameters must be at least 2")
    if math.gcd(p, q) != 1:
        raise ValueError("torus knot parameters must be coprime")
    return (p - 1) * (q - 1) // 2


def writhe_lower_bound(w: int) -> int:
    """Triangles needed by a diagram of writhe w: |w| + 1."""
    return abs(int(w)) + 1


def unoriented_genus_bound(gstar) -> int:
    """Triangles needed from the unoriented genus g*: 4 g* + 1.

    g* may be a half-integer; the result is always an integer.
    """
    gs = rat(gstar)
    if gs < 0:
        raise ValueError("unoriented genus must be nonnegative")
    doubled = 2 * gs
    if doubled != int(doubled):
        raise ValueError("unoriented genus must be a multiple of 1/2")
    return int(4 * gs + 1)


def crossing_lower_bound(w: int, n: int) -> int:
    """Any diagram of an n-segment polygon with writhe w has at least
    max(0, ceil((|w| - 3n)/16)) crossings."""
    if n < 3:
        raise ValueError("polygon needs at least 3 segments")
    excess = abs(int(w)) - 3 * n
    if excess <= 0:
        return 0
    return -(-excess // 16)


def family_bounds(n: int):
    """Exact per-family lower bounds at n segments.

    Returns the pair (torus-stick family bound n^2/2 - 3n + 5, twist
    family bound n^2/36 + 3/4), both exact rationals.
    """
    if n < 3:
        raise ValueError("polygon needs at least 3 segments")
    return (Rat(n * n, 2) - 3 * n + 5, Rat(n * n, 36) + Rat(3, 4))


def iso_ratio(t: int, n: int):
    """Normalized triangle count t/n^2; values of the worst-case
    optimum lie in ISO_BRACKET."""
    if t < 1:
        raise ValueError("triangle count must be positive")
    if n < 3:
        raise ValueError("polygon needs at least 3 segments")
    return Rat(t, n * n)


def bounds_report(n: int, dim: int | None = None, c: int | None = None,
                  w: int | None = None, g: int | None = None,
                  gstar=None, t: int | None = None) -> dict:
    """Collect every applicable bound for one polygon into a dict.

    Upper bounds are filtered by dimension when dim is given.  The
    writhe entry uses the strict form |w| + 1; the vacuous form |w| is
    reported next to it for comparison.
    """
    lower: dict = {}
    if g is not None:
        lower["genus"] = genus_lower_bound(g)
    if w is not None:
        lower["writhe"] = writhe_lower_bound(w)
    if gstar is not None:
        lower["unoriented"] = unoriented_genus_bound(gstar)
    upper: dict = {}
    if dim is None or dim == 2:
        upper["planar"] = n - 2
    if dim is None or dim == 3:
        if c is not None:
            upper["seifert"] = 3 * n + 14 * c
        upper["universal"] = 7 * n * n
    if dim is None or dim == 4:
        upper["d4_immersed"] = 3 * n
        upper["d4_embedded"] = 21 * n * n
    if dim is None or dim >= 5:
        upper["cone"] = n
    fam = family_bounds(n)
    report = {
        "n": n,
        "dim": dim,
        "crossings": c,
        "writhe": w,
        "lower": lower,
        "upper": upper,
        "family": {"torus_stick": fam[0], "twist": fam[1]},
    }
    if w is not None:
        report["crossing_bound"] = crossing_lower_bound(w, n)
        report["writhe_weak"] = abs(int(w))
    if t is not None:
        report["t"] = t
        report["iso_ratio"] = iso_ratio(t, n)
        report["iso_bracket"] = ISO_BRACKET
    return report
