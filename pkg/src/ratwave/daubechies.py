"""Float Daubechies scaling filters, normalized so that ``h0(1) == 2``."""

from dataclasses import dataclass
from math import comb

import mpmath
import numpy as np

from .bank import WaveletBank2
from .errors import RootFindingFailure, UnsupportedGenus
from .scalars import FLOAT

MAX_GENUS = 20


@dataclass(frozen=True)
class DaubechiesSpec:
    """Genus plus the decimal working precision used for root finding."""

    genus: int
    working_precision: int = 40
    max_genus: int = MAX_GENUS

    def __post_init__(self):
        if not 1 <= self.genus <= self.max_genus:
            raise UnsupportedGenus(f"genus must be in 1..{self.max_genus}, got {self.genus}")
        if self.working_precision < 15:
            raise ValueError("working_precision below double precision")


def _halfband_y_poly(n):
    # P(y) = sum_{k<n} C(n-1+k, k) y^k, with y = sin^2(w/2) = (2 - z - 1/z)/4
    return [comb(n - 1 + k, k) for k in range(n)]


def minimal_phase_roots(n, dps=40):
    """Zeros strictly inside the unit disk of the non-``(1+z)`` factor, as mpc."""
    if n == 1:
        return []
    with mpmath.workdps(dps):
        py = _halfband_y_poly(n)
        try:
            y_roots = mpmath.polyroots(py[::-1], maxsteps=400, extraprec=4 * dps)
        except mpmath.libmp.NoConvergence as exc:
            raise RootFindingFailure(f"halfband roots did not converge for genus {n}: {exc}") from exc
        z_roots = []
        for y in y_roots:
            # z + 1/z = 2 - 4y: the two solutions are reciprocal, keep the inner one
            s = 2 - 4 * mpmath.mpc(y)
            disc = mpmath.sqrt(s * s - 4)
            r1, r2 = (s + disc) / 2, (s - disc) / 2
            z = r1 if abs(r1) < abs(r2) else r2
            if not abs(z) < 1:
                raise RootFindingFailure(f"no root inside the unit disk for y={y} (|z|={abs(z)})")
            z_roots.append(z)
        return z_roots


def scaling_filter(n, dps=40):
    """Minimal-phase ``h0`` of length 2n with sum 2, as a float array."""
    roots = minimal_phase_roots(n, dps)
    with mpmath.workdps(dps):
        # coefficients lowest power first
        poly = [mpmath.mpc(1)]
        for factor in [[1, 1]] * n + [[-r, 1] for r in roots]:
            out = [mpmath.mpc(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                out[i] += c * factor[0]
                out[i + 1] += c * factor[1]
            poly = out
        scale = max(abs(c) for c in poly)
        if max(abs(c.imag) for c in poly) > mpmath.mpf(10) ** (-dps // 2) * scale:
            raise RootFindingFailure("complex roots did not pair up into a real filter")
        taps = [c.real for c in poly]
        total = mpmath.fsum(taps)
        # highest power first: puts the large taps first, matching the published tables
        return np.array([float(2 * t / total) for t in reversed(taps)])


def generate(spec):
    """The genus-N Daubechies bank in the float field."""
    if isinstance(spec, int):
        spec = DaubechiesSpec(spec)
    taps = scaling_filter(spec.genus, spec.working_precision)
    return WaveletBank2.from_h0([float(t) for t in taps], FLOAT)
