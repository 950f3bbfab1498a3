"""Two-channel (rank 2) wavelet banks with the Daubechies interleaved layout.

A genus-``N`` bank is fixed by its scaling filter
``h0 = (a_0, b_0, a_1, b_1, ..., a_{N-1}, b_{N-1})``; the wavelet filter is
``h1 = (-b_{N-1}, a_{N-1}, ..., -b_0, a_0)``.
"""

from dataclasses import dataclass

from .errors import DegreeMismatch, NotParaunitary
from .laurent import LaurentPoly
from .params import ParamPair
from .scalars import DEFAULT_TOL, FLOAT, RATIONAL, coerce, convert, parse_scalar, to_json_scalar


def wavelet_filter(h0):
    """``h1`` from ``h0`` by the interleaving rule."""
    n = len(h0) // 2
    h1 = []
    for k in range(n):
        h1.append(-h0[2 * (n - 1 - k) + 1])
        h1.append(h0[2 * (n - 1 - k)])
    return tuple(h1)


@dataclass(frozen=True)
class WaveletBank2:
    genus: int
    h0: tuple
    h1: tuple
    field: str = RATIONAL

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be positive")
        h0 = tuple(coerce(c, self.field) for c in self.h0)
        h1 = tuple(coerce(c, self.field) for c in self.h1)
        if len(h0) != 2 * self.genus or len(h1) != 2 * self.genus:
            raise ValueError(f"genus {self.genus} needs {2 * self.genus} taps per row")
        if h1 != wavelet_filter(h0):
            raise ValueError("h1 does not follow the interleaved layout of h0")
        object.__setattr__(self, "h0", h0)
        object.__setattr__(self, "h1", h1)

    @classmethod
    def from_h0(cls, h0, field=None):
        h0 = list(h0)
        if len(h0) % 2:
            raise ValueError("scaling filter must have an even number of taps")
        if field is None:
            field = FLOAT if any(isinstance(c, float) for c in h0) else RATIONAL
        h0 = tuple(coerce(c, field) for c in h0)
        return cls(len(h0) // 2, h0, wavelet_filter(h0), field)

    @property
    def a(self):
        return self.h0[0::2]

    @property
    def b(self):
        return self.h0[1::2]

    def a_poly(self):
        return LaurentPoly(self.a, 0, self.field)

    def b_poly(self):
        return LaurentPoly(self.b, 0, self.field)

    def filter_poly(self, row):
        return LaurentPoly(self.h0 if row == 0 else self.h1, 0, self.field)

    def polyphase(self):
        """``A(z) = [[a, b], [-z^{N-1} ~b, z^{N-1} ~a]]`` as nested tuples."""
        a, b = self.a_poly(), self.b_poly()
        s = self.genus - 1
        return ((a, b), (-(b.tilde().shift(s)), a.tilde().shift(s)))

    def to_field(self, field):
        return WaveletBank2.from_h0([convert(c, field) for c in self.h0], field)

    def with_tap(self, k, value):
        """Copy with ``h0[k]`` replaced (``h1`` follows the layout)."""
        h0 = list(self.h0)
        h0[k] = coerce(value, self.field)
        return WaveletBank2.from_h0(h0, self.field)

    def to_json(self):
        return {
            "genus": self.genus,
            "field": self.field,
            "h0": [to_json_scalar(c) for c in self.h0],
            "h1": [to_json_scalar(c) for c in self.h1],
        }

    @classmethod
    def from_json(cls, obj):
        field = obj.get("field")
        if field not in (None, RATIONAL, FLOAT):
            raise ValueError(f"unknown field {field!r}")
        h0 = [parse_scalar(c, field) for c in obj["h0"]]
        if field is None:
            field = FLOAT if any(isinstance(c, float) for c in h0) else RATIONAL
        bank = cls.from_h0(h0, field)
        if "genus" in obj and int(obj["genus"]) != bank.genus:
            raise ValueError("genus does not match the number of taps")
        if "h1" in obj:
            h1 = tuple(coerce(parse_scalar(c, field), field) for c in obj["h1"])
            if h1 != bank.h1:
                raise ValueError("h1 does not follow the interleaved layout of h0")
        return bank


def haar_bank(field=RATIONAL):
    return WaveletBank2.from_h0((1, 1), field)


# -- conditions -------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticReport:
    """Max absolute residual of three equivalent forms of the quadratic condition."""

    shift: object
    polyphase: object
    modulation: object

    @property
    def max(self):
        return max(self.shift, self.polyphase, self.modulation)

    def is_exact(self):
        return self.max == 0

    def within(self, tol):
        return self.max <= tol


def shift_residual(bank):
    """``max |sum_k h_i[k] h_j[k+2r] - 2 delta_ij delta_r0|`` over i, j, r."""
    rows = (bank.h0, bank.h1)
    n = len(bank.h0)
    zero = coerce(0, bank.field)
    worst = zero
    for i in range(2):
        for j in range(2):
            for r in range(-(bank.genus - 1), bank.genus):
                s = zero
                for k in range(n):
                    if 0 <= k + 2 * r < n:
                        s += rows[i][k] * rows[j][k + 2 * r]
                if i == j and r == 0:
                    s -= 2
                worst = max(worst, abs(s))
    return worst


def polyphase_residual(bank):
    """Max coefficient of ``A(z) ~A(z) - 2 I``."""
    (p, q), (r, s) = bank.polyphase()
    two = LaurentPoly.constant(2, bank.field)
    entries = (
        p * p.tilde() + q * q.tilde() - two,
        p * r.tilde() + q * s.tilde(),
        r * p.tilde() + s * q.tilde(),
        r * r.tilde() + s * s.tilde() - two,
    )
    return max(e.max_abs_coefficient() for e in entries)


def modulation_residual(bank):
    """Max coefficient of ``sum_{w=z,-z} h_r(w) ~h_s(w) - 4 delta_rs``."""
    h = (bank.filter_poly(0), bank.filter_poly(1))
    hm = (h[0].substitute_neg_z(), h[1].substitute_neg_z())
    four = LaurentPoly.constant(4, bank.field)
    worst = coerce(0, bank.field)
    for r in range(2):
        for s in range(2):
            e = h[r] * h[s].tilde() + hm[r] * hm[s].tilde()
            if r == s:
                e = e - four
            worst = max(worst, e.max_abs_coefficient())
    return worst


def check_quadratic(bank):
    return QuadraticReport(shift_residual(bank), polyphase_residual(bank), modulation_residual(bank))


def check_linear(bank):
    """``(h0(1), h1(1))``; a wavelet bank has ``(2, 0)``."""
    return sum(bank.h0, coerce(0, bank.field)), sum(bank.h1, coerce(0, bank.field))


def linear_residual(bank):
    s0, s1 = check_linear(bank)
    return max(abs(s0 - 2), abs(s1))


@dataclass(frozen=True)
class MomentReport:
    values: tuple

    def __getitem__(self, p):
        return self.values[p]

    def __len__(self):
        return len(self.values)

    def max_abs(self, start=1):
        return max((abs(v) for v in self.values[start:]), default=0)


def moments(bank, pmax):
    """``M_p = sum_k h1[k] k**p`` for ``p = 0..pmax``."""
    out = []
    for p in range(pmax + 1):
        out.append(sum((c * k**p for k, c in enumerate(bank.h1)), coerce(0, bank.field)))
    return MomentReport(tuple(out))


def _is_paraunitary(bank, tol):
    report = check_quadratic(bank)
    return report.is_exact() if bank.field == RATIONAL else report.within(tol)


# -- bridge to parameter pairs ---------------------------------------------


def to_param(bank, tol=DEFAULT_TOL):
    """Bank -> canonical pair ``((a + b) / 2, (b - a) / 2)``."""
    if not _is_paraunitary(bank, tol):
        raise NotParaunitary(f"quadratic residual {check_quadratic(bank).max}")
    a, b = bank.a_poly(), bank.b_poly()
    return ParamPair((a + b) / 2, (b - a) / 2)


def from_param(pair, genus):
    """Canonical pair -> bank with ``a = alpha - beta``, ``b = alpha + beta``."""
    for p in (pair.alpha, pair.beta):
        if not p.in_range(0, genus - 1):
            raise DegreeMismatch(f"pair degree {pair.degree} exceeds genus - 1 = {genus - 1}")
    a = pair.alpha - pair.beta
    b = pair.alpha + pair.beta
    h0 = []
    for k in range(genus):
        h0.append(a.coeff(k))
        h0.append(b.coeff(k))
    return WaveletBank2.from_h0(h0, pair.field)


# -- signals and the two-channel transform --------------------------------


@dataclass(frozen=True)
class Signal:
    """Finitely supported ``f: Z -> R``; ``samples[i]`` is ``f(start + i)``."""

    samples: tuple
    start: int = 0

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))

    def __call__(self, k):
        i = k - self.start
        if 0 <= i < len(self.samples):
            return self.samples[i]
        return 0

    @property
    def stop(self):
        return self.start + len(self.samples)

    def trimmed(self):
        s = list(self.samples)
        lo, hi = 0, len(s)
        while lo < hi and s[lo] == 0:
            lo += 1
        while hi > lo and s[hi - 1] == 0:
            hi -= 1
        return Signal(tuple(s[lo:hi]), self.start + lo if hi > lo else 0)

    def __add__(self, other):
        lo = min(self.start, other.start)
        hi = max(self.stop, other.stop)
        return Signal(tuple(self(k) + other(k) for k in range(lo, hi)), lo)

    def __sub__(self, other):
        lo = min(self.start, other.start)
        hi = max(self.stop, other.stop)
        return Signal(tuple(self(k) - other(k) for k in range(lo, hi)), lo)

    def same_as(self, other):
        """Equality of the underlying functions on Z (zero padding ignored)."""
        return self.trimmed() == other.trimmed()

    def max_abs(self):
        return max((abs(v) for v in self.samples), default=0)


def _check_signal(bank, f):
    return Signal(tuple(coerce(v, bank.field) for v in f.samples), f.start)


def channel_coefficients(bank, f, row):
    """``c_s = <f, h_row(. - 2s)>`` for every shift ``s`` that can be nonzero."""
    h = bank.h0 if row == 0 else bank.h1
    length = len(h)
    s_lo = -((length - 1 - f.start) // 2)
    s_hi = (f.stop - 1) // 2
    out = {}
    for s in range(s_lo, s_hi + 1):
        acc = coerce(0, bank.field)
        for k in range(length):
            v = f(k + 2 * s)
            if v:
                acc += v * h[k]
        if acc:
            out[s] = acc
    return out


def _expand(bank, coeffs, row):
    h = bank.h0 if row == 0 else bank.h1
    if not coeffs:
        return Signal((), 0)
    lo = 2 * min(coeffs)
    hi = 2 * max(coeffs) + len(h)
    buf = [coerce(0, bank.field)] * (hi - lo)
    half = coerce(1, bank.field) / 2
    for s, c in coeffs.items():
        w = c * half
        base = 2 * s - lo
        for k, t in enumerate(h):
            buf[base + k] += w * t
    return Signal(tuple(buf), lo)


def analyze(bank, f, strict=False, tol=DEFAULT_TOL):
    """Split ``f`` into its two channel parts ``f_r = sum_s 1/2 <f, h_r(.-2s)> h_r(.-2s)``."""
    if strict and not _is_paraunitary(bank, tol):
        raise NotParaunitary(f"quadratic residual {check_quadratic(bank).max}")
    f = _check_signal(bank, f)
    return tuple(_expand(bank, channel_coefficients(bank, f, r), r) for r in (0, 1))


def synthesize(parts):
    out = Signal((), 0)
    for p in parts:
        out = out + p
    return out
