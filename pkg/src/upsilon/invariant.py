"""Upsilon computations for L-space knots.

For an L-space knot with formal semigroup S and genus g, Upsilon on [0, 2]
is the upper envelope of the 2g+1 lines

    t |-> -2 * #(S intersect [0, m)) - t(g - m),     m = 0 .. 2g.

That envelope, applied to the cable semigroup produced by the p*S + q*Z>=0
construction, is the oracle path used to verify every cabling formula here.

The formula paths:

* q >= 2gp: Upsilon of the cable is the p-fold amalgamation of the
  companion's Upsilon plus the torus knot's Upsilon.
* (2g-1)p < q < 2gp: per window [2i/p, 2(i+1)/p] with s = pt - 2i, the
  cable's Upsilon is the maximum of three window terms (see
  ``_windowed_formula``), obtained from the ladder decomposition of the
  cable semigroup.  Restricted to the ranges where the classical two-term
  maxima apply, it reduces to them.
* q < (2g-1)p: not an L-space knot; rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import AssemblyError, NotLSpaceError
from .knots import (
    Cable,
    KnotExpr,
    Torus,
    continued_fraction,
    genus,
    is_lspace,
    semigroup_of,
)
from .pl import (
    Line,
    PLFunction,
    WindowedPL,
    amalgamate,
    compress_into_window,
    concat_pieces,
    pl_add,
    pl_max,
    upper_envelope,
    zero_function,
)
from .semigroup import FormalSemigroup, torus_semigroup


def upsilon_line(s: FormalSemigroup, m: int) -> Line:
    """The line indexed by m in [0, 2g]: slope m - g, intercept -2*count_below(m)."""
    m = int(m)
    if not (0 <= m <= 2 * s.genus):
        raise ValueError(f"index m = {m} outside [0, {2 * s.genus}]")
    return _line(s, m)


def _line(s: FormalSemigroup, m: int) -> Line:
    # extended version: count_below is affine outside [0, 2g], so any integer
    # index yields a meaningful line
    return Line(Fraction(m - s.genus), Fraction(-2 * s.count_below(m)))


def upsilon_from_semigroup(s: FormalSemigroup) -> PLFunction:
    """Upsilon as the upper envelope of all 2g+1 semigroup lines (the oracle)."""
    return upper_envelope(_line(s, m) for m in range(0, 2 * s.genus + 1))


def truncated_upsilon(s: FormalSemigroup) -> PLFunction:
    """Envelope over m = 1 .. 2g-1 only; lies below Upsilon, equal on the
    middle band [threshold, 2 - threshold]."""
    if s.genus < 1:
        raise ValueError("truncated invariant undefined for the unknot semigroup")
    return upper_envelope(_line(s, m) for m in range(1, 2 * s.genus))


def _head_upsilon(s: FormalSemigroup) -> PLFunction:
    # envelope over m = 0 .. 2g-1 (top line removed); the windowed cabling
    # formula needs it because the m = 2g line of the companion pairs with
    # the next window's line family instead
    return upper_envelope(_line(s, m) for m in range(0, 2 * s.genus))


def _delta_regime(p: int, q: int) -> tuple[int, int]:
    """Return (g, delta) such that (2g-1)p < q < 2gp, or raise."""
    if p < 2 or q < 1:
        raise ValueError(f"need p >= 2 and q >= 1, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"parameters must be coprime, got ({p}, {q})")
    k, delta = divmod(q, p)
    if delta == 0 or k % 2 == 0:
        raise ValueError(
            f"({p}, {q}) admits no companion genus with (2g-1)p < q < 2gp"
        )
    return (k + 1) // 2, delta


def _family_envelope(st: FormalSemigroup, m_lo: int, m_hi: int, t0, t1) -> PLFunction:
    # envelope of the torus lines with index in (m_lo, m_hi], on [t0, t1]
    return upper_envelope((_line(st, m) for m in range(m_lo + 1, m_hi + 1)), t0, t1)


def upsilon_delta(p: int, q: int, variant: int) -> WindowedPL:
    """The four window-restricted torus line families.

    With delta = q mod p, on window i the families cover the index ranges

        1: (iq - delta, iq]        2: (iq - p, iq - delta]
        3: (iq - p, iq - p + delta]        4: (iq - p + delta, iq]

    Per window, max of variants 1 and 2 recovers Upsilon of the torus knot,
    and variants 3/4 are the reflections of 1/2.
    """
    if variant not in (1, 2, 3, 4):
        raise ValueError(f"variant must be 1, 2, 3 or 4, got {variant}")
    _, delta = _delta_regime(p, q)
    st = torus_semigroup(p, q)
    pieces = []
    for i in range(p):
        t0, t1 = Fraction(2 * i, p), Fraction(2 * (i + 1), p)
        if variant == 1:
            lo, hi = i * q - delta, i * q
        elif variant == 2:
            lo, hi = i * q - p, i * q - delta
        elif variant == 3:
            lo, hi = i * q - p, i * q - p + delta
        else:
            lo, hi = i * q - p + delta, i * q
        pieces.append(_family_envelope(st, lo, hi, t0, t1))
    return WindowedPL(p, tuple(pieces))


class CableRegime(Enum):
    PLAIN_SUM = "plain-sum"      # q >= 2gp: amalgamation + torus term
    WINDOWED = "windowed"        # (2g-1)p < q < 2gp: three-term window maxima
    IDENTITY = "identity"        # p = 1: the cable is the companion
    REJECTED = "rejected"        # q < (2g-1)p: not an L-space knot


@dataclass(frozen=True)
class CableParams:
    p: int
    q: int
    genus: int          # companion genus
    delta: int          # q - (2g-1)p
    regime: CableRegime


def classify_cable(companion_genus: int, p: int, q: int) -> CableParams:
    if p < 1 or q < 1:
        raise ValueError(f"cable parameters must be positive, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"cable parameters must be coprime, got ({p}, {q})")
    g = companion_genus
    delta = q - (2 * g - 1) * p
    if p == 1:
        regime = CableRegime.IDENTITY
    elif q >= 2 * g * p:
        regime = CableRegime.PLAIN_SUM
    elif delta > 0:
        regime = CableRegime.WINDOWED
    else:
        regime = CableRegime.REJECTED
    return CableParams(p, q, g, delta, regime)


def _plain_sum_formula(ups_k: PLFunction, p: int, q: int) -> PLFunction:
    return pl_add(amalgamate(ups_k, p), upsilon_from_semigroup(torus_semigroup(p, q)))


def _windowed_formula(s: FormalSemigroup, p: int, q: int) -> PLFunction:
    """Window assembly for (2g-1)p < q < 2gp.

    On window i with s = pt - 2i the cable's Upsilon is

        max( head(s)      + F1_i(t),
             truncated(s) + F2_i(t),
             g*(2 - s)    + F1_{i+1}(t) )

    where head drops the companion's top line, F1_j / F2_j are the envelopes
    of the torus lines indexed by (jq - delta, jq] / (jq - p, jq - delta],
    and the third term accounts for the tail block of the window, where the
    companion's top line pairs with the line family of the next window.
    Each term is the exact minimum of one block of the ladder decomposition
    of the cable semigroup, and the blocks tile the window, so the maximum
    is exact everywhere; no case split on s is needed.
    """
    g = s.genus
    delta = q - (2 * g - 1) * p
    if not (0 < delta < p):
        raise ValueError(f"({p}, {q}) is not in the windowed regime for genus {g}")
    st = torus_semigroup(p, q)
    head = _head_upsilon(s)
    trunc = truncated_upsilon(s)
    windows = []
    for i in range(p):
        t0, t1 = Fraction(2 * i, p), Fraction(2 * (i + 1), p)
        f1_here = _family_envelope(st, i * q - delta, i * q, t0, t1)
        f2_here = _family_envelope(st, i * q - p, i * q - delta, t0, t1)
        f1_next = _family_envelope(st, (i + 1) * q - delta, (i + 1) * q, t0, t1)
        a = pl_add(compress_into_window(head, p, i), f1_here)
        b = pl_add(compress_into_window(trunc, p, i), f2_here)
        # the stub block contributes (2 - s)g on top of the next family,
        # which is how the companion's top line re-enters the assembly
        top = PLFunction(((t0, Fraction(2 * g)), (t1, Fraction(0))))
        c = pl_add(top, f1_next)
        windows.append(pl_max(pl_max(a, b), c))
    return concat_pieces(windows)


def cable_upsilon(companion: KnotExpr, p: int, q: int, method: str = "both") -> PLFunction:
    """Upsilon of the (p, q)-cable of an L-space knot.

    method 'oracle' builds the cable semigroup and takes its envelope;
    'formula' assembles the regime formula; 'both' (default) computes the
    two independently and insists they agree.
    """
    if method not in ("oracle", "formula", "both"):
        raise ValueError(f"unknown method {method!r}")
    check = is_lspace(companion)
    if not check:
        raise NotLSpaceError(check.reason)
    s = semigroup_of(companion)
    params = classify_cable(s.genus, p, q)
    if params.regime is CableRegime.REJECTED:
        raise NotLSpaceError(
            f"cable({companion};{p},{q}): q = {q} < (2g-1)p = {(2 * s.genus - 1) * p};"
            " not an L-space knot, and no formula is available"
        )
    if params.regime is CableRegime.IDENTITY:
        return upsilon_from_semigroup(s)
    oracle = formula = None
    if method in ("oracle", "both"):
        oracle = upsilon_from_semigroup(
            semigroup_of(Cable(companion, p, q))
        )
    if method in ("formula", "both"):
        if params.regime is CableRegime.PLAIN_SUM:
            formula = _plain_sum_formula(upsilon_from_semigroup(s), p, q)
        else:
            formula = _windowed_formula(s, p, q)
    if oracle is not None and formula is not None and oracle != formula:
        raise AssemblyError(
            f"formula and envelope paths disagree for cable({companion};{p},{q})"
        )
    return oracle if oracle is not None else formula


def knot_upsilon(k: KnotExpr, method: str = "both") -> PLFunction:
    """Upsilon of any L-space knot expression."""
    if isinstance(k, Cable):
        return cable_upsilon(k.companion, k.p, k.q, method)
    check = is_lspace(k)
    if not check:
        raise NotLSpaceError(check.reason)
    return upsilon_from_semigroup(semigroup_of(k))


def tau(k: KnotExpr) -> int:
    """The concordance invariant -Upsilon'(0); equals the genus here."""
    slope = knot_upsilon(k, method="oracle").initial_slope()
    if slope.denominator != 1:
        raise AssemblyError(f"initial slope {slope} is not an integer")
    return -slope.numerator


def upsilon_integral(k: KnotExpr) -> Fraction:
    """Exact integral of Upsilon over [0, 2]."""
    return knot_upsilon(k, method="oracle").integral()


def torus_integral_from_cf(p: int, q: int) -> Fraction:
    """Closed form -(1/3)(pq - sum of continued-fraction coefficients of q/p).

    Matches direct integration of the envelope; the often-quoted variant
    equating twice the integral to the same right-hand side is off by a
    factor of two (sanity anchor: the (2,3) torus knot integrates to -1).
    """
    if p < 1 or q < 1:
        raise ValueError(f"arguments must be positive, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"arguments must be coprime, got ({p}, {q})")
    cf = continued_fraction(q, p)
    return -Fraction(p * q - cf.coefficient_sum(), 3)


def iterated_cable_integral(k: KnotExpr) -> Fraction:
    """Integral of an iterated cable via additivity.

    Each genuine cabling level must satisfy q >= 2gp for its companion
    (the plain-sum regime); then the integral is the core's plus one torus
    term per level.
    """
    if isinstance(k, Cable):
        if k.p == 1:
            return iterated_cable_integral(k.companion)
        g = genus(k.companion)
        if k.q < 2 * g * k.p:
            raise NotLSpaceError(
                f"additivity needs q >= 2gp at every level; {k} has q = {k.q} < {2 * g * k.p}"
            )
        return iterated_cable_integral(k.companion) + upsilon_integral(Torus(k.p, k.q))
    return upsilon_integral(k)


def torus_upsilon_decomposition(p: int, q: int) -> list[tuple[int, int]]:
    """Write Upsilon of the (p, q) torus knot as a staircase combination:
    sum over i of a_i * Upsilon(T(p_i, p_i + 1)), with (a_i, p_i) returned.

    The reconstruction is verified exactly before returning.
    """
    cf = continued_fraction(q, p)
    pairs = list(zip(cf.coefficients, cf.tail_denominators))
    lhs = upsilon_from_semigroup(torus_semigroup(p, q))
    if staircase_sum(pairs) != lhs:
        raise AssemblyError(f"staircase decomposition failed to reconstruct T({p},{q})")
    return pairs


def staircase_sum(pairs) -> PLFunction:
    """sum of a * Upsilon(T(d, d+1)) over (a, d) pairs, as one PL function."""
    acc = zero_function()
    for a, d in pairs:
        if a == 0 or d == 1:
            continue
        acc = pl_add(acc, upsilon_from_semigroup(torus_semigroup(d, d + 1)).scaled(a))
    return acc
