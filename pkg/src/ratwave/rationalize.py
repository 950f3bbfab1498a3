"""Rational banks near a float bank, paraunitary by construction.

The float bank is mapped to its parameter ``phi``, each coefficient of
``phi`` is replaced by a nearby rational, and the bank is rebuilt in exact
arithmetic.  Whatever the rounding rule, the rebuilt bank satisfies the
quadratic and linear conditions exactly; only the vanishing moments degrade.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import floor, gcd, isfinite, isqrt

from .bank import check_linear, check_quadratic, from_param, moments, to_param
from .errors import BudgetExceeded
from .params import PhiParam, coprod, prod
from .scalars import RATIONAL, to_json_scalar

KINDS = ("dyadic", "best", "maxden", "screen")


@dataclass(frozen=True)
class ApproxStrategy:
    """How to pick rationals: ``dyadic`` bits, ``best`` within epsilon,
    ``maxden`` closest with bounded denominator, or a joint ``screen``."""

    kind: str
    bits: int = None
    epsilon: float = None
    max_denominator: int = None
    d_max: int = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown strategy {self.kind!r}")
        if self.kind == "dyadic" and (self.bits is None or self.bits < 1):
            raise ValueError("dyadic strategy needs bits >= 1")
        if self.kind == "best" and not (self.epsilon is not None and self.epsilon > 0):
            raise ValueError("best strategy needs epsilon > 0")
        if self.kind == "maxden" and (self.max_denominator is None or self.max_denominator < 1):
            raise ValueError("maxden strategy needs Q >= 1")
        if self.kind == "screen":
            if self.epsilon is None or self.epsilon < 0:
                raise ValueError("screen strategy needs epsilon >= 0")
            if self.d_max is None or self.d_max < 2:
                raise ValueError("screen strategy needs D_max >= 2")

    @classmethod
    def parse(cls, text):
        """``dyadic:K | best:EPS | maxden:Q | screen:EPS,DMAX``."""
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower()
        if not arg:
            raise ValueError(f"strategy {text!r} is missing its argument")
        if kind == "dyadic":
            return cls(kind, bits=int(arg))
        if kind == "best":
            return cls(kind, epsilon=float(arg))
        if kind == "maxden":
            return cls(kind, max_denominator=int(arg))
        if kind == "screen":
            eps, _, dmax = arg.partition(",")
            if not dmax:
                raise ValueError("screen strategy is screen:EPS,DMAX")
            return cls(kind, epsilon=float(eps), d_max=int(dmax))
        raise ValueError(f"unknown strategy {kind!r}")

    def __str__(self):
        if self.kind == "dyadic":
            return f"dyadic:{self.bits}"
        if self.kind == "best":
            return f"best:{self.epsilon!r}"
        if self.kind == "maxden":
            return f"maxden:{self.max_denominator}"
        return f"screen:{self.epsilon!r},{self.d_max}"


# -- scalar approximation ---------------------------------------------------


def simplest_in_interval(lo, hi):
    """Fraction of least denominator (then least ``|p|``) in ``[lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_in_interval(-hi, -lo)
    # continued-fraction descent, iterative; terms are collected then folded
    terms = []
    while True:
        fl = floor(lo)
        if fl == lo:
            terms.append(fl)
            break
        if fl + 1 <= hi:
            terms.append(fl + 1)
            break
        terms.append(fl)
        lo, hi = 1 / (hi - fl), 1 / (lo - fl)
    value = Fraction(terms[-1])
    for t in reversed(terms[:-1]):
        value = t + 1 / value
    return value


def best_rational(x, epsilon=None, max_denominator=None):
    """Rational approximation of ``x``.

    With ``epsilon``: the fraction of minimal denominator within ``epsilon``.
    With ``max_denominator``: the closest fraction whose denominator is at
    most that bound.
    """
    if (epsilon is None) == (max_denominator is None):
        raise ValueError("give exactly one of epsilon, max_denominator")
    if isinstance(x, float) and not isfinite(x):
        raise ValueError("x must be finite")
    fx = Fraction(x)
    if epsilon is not None:
        eps = Fraction(epsilon)
        return simplest_in_interval(fx - eps, fx + eps)
    return fx.limit_denominator(max_denominator)


def dyadic_round(x, bits):
    """``round(x * 2**bits) / 2**bits`` with halves rounded up, computed exactly."""
    scale = 1 << bits
    return Fraction(floor(Fraction(x) * scale + Fraction(1, 2)), scale)


def approximate_phi(phi, strategy):
    """Coefficientwise rational replacement of ``phi``."""
    if strategy.kind == "dyadic":
        f = lambda g: dyadic_round(g, strategy.bits)  # noqa: E731
    elif strategy.kind == "best":
        f = lambda g: best_rational(g, epsilon=strategy.epsilon)  # noqa: E731
    elif strategy.kind == "maxden":
        f = lambda g: best_rational(g, max_denominator=strategy.max_denominator)  # noqa: E731
    else:
        raise ValueError("screening is a joint search; call screen() instead")
    return PhiParam(phi.n, tuple(f(g) for g in phi.gammas), RATIONAL)


# -- the pipeline -------------------------------------------------------------


@dataclass(frozen=True)
class RationalizationResult:
    phi: PhiParam
    phi_q: PhiParam
    bank: object
    max_tap_denominator: int
    moment_report: object
    input_distance: float
    strategy: str = ""

    def to_json(self):
        return {
            "strategy": self.strategy,
            "phi": self.phi.to_json(),
            "phi_q": self.phi_q.to_json(),
            "bank": self.bank.to_json(),
            "max_tap_denominator": self.max_tap_denominator,
            "moments": [to_json_scalar(m) for m in self.moment_report.values],
            "input_distance": self.input_distance,
        }


def bank_parameter(bank):
    """``phi`` of a (float or rational) paraunitary bank."""
    return prod(to_param(bank), bank.genus - 1)


def rebuild(phi_q, genus, phi=None, strategy=""):
    """Exact bank for a rational ``phi_q``, with its diagnostics."""
    bank = from_param(coprod(phi_q), genus)
    assert check_quadratic(bank).is_exact() and check_linear(bank) == (2, 0)
    return RationalizationResult(
        phi=phi if phi is not None else phi_q,
        phi_q=phi_q,
        bank=bank,
        max_tap_denominator=max(Fraction(c).denominator for c in bank.h0),
        moment_report=moments(bank, max(genus - 1, 0)),
        input_distance=phi.max_distance(phi_q) if phi is not None else 0.0,
        strategy=strategy,
    )


def rationalize_bank(bank, strategy):
    if isinstance(strategy, str):
        strategy = ApproxStrategy.parse(strategy)
    if strategy.kind == "screen":
        results = screen(bank, strategy.epsilon, strategy.d_max)
        if not results:
            raise ValueError("screening found no candidate within the given range")
        return results[0]
    phi = bank_parameter(bank)
    return rebuild(approximate_phi(phi, strategy), bank.genus, phi, str(strategy))


# -- screening --------------------------------------------------------------


def fractions_in_window(x, epsilon, max_q):
    """Every reduced ``p/q`` with ``q <= max_q`` and ``|p/q - x| <= epsilon``."""
    fx, eps = Fraction(x), Fraction(epsilon)
    out = []
    for q in range(1, max_q + 1):
        p_lo = -floor(-(fx - eps) * q)
        p_hi = floor((fx + eps) * q)
        for p in range(p_lo, p_hi + 1):
            if gcd(p, q) == 1:
                out.append(Fraction(p, q))
    return sorted(set(out), key=lambda r: (r.denominator, abs(r.numerator), r))


def stern_brocot_window(x, epsilon, max_q):
    """Best approximations of ``x`` (the Stern-Brocot path) lying within ``epsilon``."""
    fx, eps = Fraction(x), Fraction(epsilon)
    base = floor(fx)
    lo_p, lo_q, hi_p, hi_q = base, 1, base + 1, 1
    found = {Fraction(lo_p, lo_q), Fraction(hi_p, hi_q)}
    while True:
        mp, mq = lo_p + hi_p, lo_q + hi_q
        if mq > max_q:
            break
        m = Fraction(mp, mq)
        found.add(m)
        if m == fx:
            break
        if m < fx:
            lo_p, lo_q = mp, mq
        else:
            hi_p, hi_q = mp, mq
    keep = [r for r in found if abs(r - fx) <= eps]
    return sorted(keep, key=lambda r: (r.denominator, abs(r.numerator), r))


def _evaluate(args):
    phi_q, genus, phi = args
    return rebuild(phi_q, genus, phi, "screen")


def screen(bank, epsilon, d_max, max_candidates=100_000, max_q=None, workers=1):
    """Rational banks with tap denominators ``<= d_max`` whose ``phi_q`` is
    within ``epsilon`` of the bank's ``phi`` (coefficientwise).

    Genus 2 is searched exhaustively: reduction of the taps can remove at most
    a factor 2 from ``p**2 + q**2``, so ``q**2 <= 2 * d_max`` bounds the search.
    For larger genus each coefficient ranges over its Stern-Brocot best
    approximations with denominator ``<= max_q`` (default ``d_max``).
    Results are sorted by tap denominator, then by the largest ``|M_p|``
    (``p >= 1``), then by ``phi_q``.
    """
    phi = bank_parameter(bank)
    if phi.n == 0:
        lists = []
    elif phi.n == 1:
        q_bound = max_q if max_q is not None else isqrt(2 * d_max)
        lists = [fractions_in_window(phi.gammas[0], epsilon, q_bound)]
    else:
        q_bound = max_q if max_q is not None else d_max
        lists = [stern_brocot_window(g, epsilon, q_bound) for g in phi.gammas]
    count = 1
    for lst in lists:
        count *= len(lst)
    if count > max_candidates:
        raise BudgetExceeded(f"{count} candidates exceed the cap of {max_candidates}")
    jobs = [(PhiParam(phi.n, combo, RATIONAL), bank.genus, phi) for combo in cartesian(*lists)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, jobs, chunksize=16))
    else:
        results = [_evaluate(j) for j in jobs]
    results = [r for r in results if r.max_tap_denominator <= d_max]
    results.sort(key=lambda r: (r.max_tap_denominator, r.moment_report.max_abs(1), r.phi_q.gammas))
    return results
