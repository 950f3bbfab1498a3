"""The phi <-> (alpha, beta) bijection for rank-2 paraunitary pairs.

``coprod`` sends a negative-power Laurent polynomial ``phi`` to the unique
canonical pair ``(alpha, beta)`` with

    alpha * ~alpha + beta * ~beta == 1,   alpha(1) == 1,   beta(1) == 0,

and ``[[1, 0], [phi, 1]] @ [[alpha, beta], [-~beta, ~alpha]]`` free of
negative powers.  ``prod`` inverts it.  Both stay inside the rationals when
fed rationals.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePair, ModeMismatch, RoundTripMismatch, SingularSystem
from .laurent import LaurentPoly, series_inverse_trunc
from .scalars import DEFAULT_TOL, FLOAT, RATIONAL, coerce, parse_scalar, to_json_scalar


@dataclass(frozen=True)
class PhiParam:
    """``phi(z) = sum_{k=1..n} gammas[k-1] * z**-k`` with nominal degree ``n``."""

    n: int
    gammas: tuple
    field: str = RATIONAL

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("nominal degree must be nonnegative")
        gammas = tuple(coerce(g, self.field) for g in self.gammas)
        if len(gammas) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(gammas)}")
        object.__setattr__(self, "gammas", gammas)

    @classmethod
    def zero(cls, n, field=RATIONAL):
        return cls(n, (0,) * n, field)

    @classmethod
    def from_poly(cls, p, n):
        if not p.in_range(-n, -1):
            raise ValueError(f"{p} is not in P^-_{n}")
        return cls(n, tuple(p.coeff(-k) for k in range(1, n + 1)), p.field)

    def as_poly(self):
        return LaurentPoly(self.gammas[::-1], -self.n, self.field)

    def gamma(self, k):
        """``gamma_k`` for any integer k; zero outside ``1..n``."""
        if 1 <= k <= self.n:
            return self.gammas[k - 1]
        return coerce(0, self.field)

    def is_zero(self):
        return all(g == 0 for g in self.gammas)

    def to_field(self, field):
        from .scalars import convert

        return PhiParam(self.n, tuple(convert(g, field) for g in self.gammas), field)

    def max_distance(self, other):
        if self.n != other.n:
            raise ValueError("nominal degrees differ")
        return max((abs(float(a) - float(b)) for a, b in zip(self.gammas, other.gammas)), default=0.0)

    def to_json(self):
        return {"n": self.n, "gammas": [to_json_scalar(g) for g in self.gammas]}

    @classmethod
    def from_json(cls, obj, field=None):
        gammas = [parse_scalar(g, field) for g in obj["gammas"]]
        if field is None:
            field = FLOAT if any(isinstance(g, float) for g in gammas) else RATIONAL
        return cls(int(obj["n"]), tuple(gammas), field)


@dataclass(frozen=True)
class ParamPair:
    alpha: LaurentPoly
    beta: LaurentPoly

    def __post_init__(self):
        if self.alpha.field != self.beta.field:
            raise ModeMismatch("alpha and beta live in different fields")
        for p in (self.alpha, self.beta):
            if not p.is_zero() and p.min_exp < 0:
                raise ValueError("alpha and beta must be ordinary polynomials")

    @property
    def field(self):
        return self.alpha.field

    @property
    def degree(self):
        """Largest exponent present in either polynomial (0 for constants)."""
        return max([p.max_exp for p in (self.alpha, self.beta) if not p.is_zero()], default=0)

    def norm_poly(self):
        """``alpha * ~alpha + beta * ~beta``."""
        return self.alpha * self.alpha.tilde() + self.beta * self.beta.tilde()

    def at_one(self):
        return self.alpha.evaluate_at_one(), self.beta.evaluate_at_one()

    def at_zero(self):
        return self.alpha.coeff(0), self.beta.coeff(0)

    def times(self, u):
        """Right-multiply the row ``(alpha, beta)`` by the 2x2 matrix ``u``."""
        (a, b), (c, d) = u
        return ParamPair(self.alpha * a + self.beta * c, self.alpha * b + self.beta * d)

    def residual(self, other):
        """Largest coefficient difference between two pairs."""
        da = self.alpha.to_field(FLOAT) - other.alpha.to_field(FLOAT)
        db = self.beta.to_field(FLOAT) - other.beta.to_field(FLOAT)
        return max(da.max_abs_coefficient(), db.max_abs_coefficient())

    def is_canonical(self, tol=DEFAULT_TOL):
        a1, b1 = self.at_one()
        one = LaurentPoly.constant(1, self.field)
        if self.field == RATIONAL:
            return self.norm_poly() == one and a1 == 1 and b1 == 0
        return self.norm_poly().allclose(one, tol) and abs(a1 - 1) <= tol and abs(b1) <= tol

    def to_field(self, field):
        return ParamPair(self.alpha.to_field(field), self.beta.to_field(field))

    def to_json(self):
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json()}

    @classmethod
    def from_json(cls, obj, field=None):
        alpha = LaurentPoly.from_json(obj["alpha"], field)
        beta = LaurentPoly.from_json(obj["beta"], field)
        if field is None and alpha.field != beta.field:
            # a zero polynomial carries no field information of its own
            if beta.is_zero():
                beta = beta.to_field(alpha.field)
            elif alpha.is_zero():
                alpha = alpha.to_field(beta.field)
        return cls(alpha, beta)


@dataclass(frozen=True)
class HankelSystem:
    """``theta[i][j] = gamma_{i+j}`` and ``delta = theta^T theta + I``; rhs is e_1."""

    theta: tuple
    delta: tuple
    rhs: tuple
    field: str = RATIONAL

    @property
    def size(self):
        return len(self.rhs)


@dataclass(frozen=True)
class CorrectionMatrix:
    """``U = [[u11, u12], [-u12, u11]]`` with ``u11**2 + u12**2 == c``."""

    u11: object
    u12: object
    c: object

    def matrix(self):
        return ((self.u11, self.u12), (-self.u12, self.u11))

    def inverse(self):
        c = self.c
        return ((self.u11 / c, -self.u12 / c), (self.u12 / c, self.u11 / c))


def build_theta(phi):
    n = phi.n
    one = coerce(1, phi.field)
    zero = coerce(0, phi.field)
    theta = tuple(tuple(phi.gamma(i + j) if 1 <= i + j <= n else zero for j in range(n + 1)) for i in range(n + 1))
    delta = tuple(
        tuple(
            sum((theta[k][i] * theta[k][j] for k in range(n + 1)), zero) + (one if i == j else zero)
            for j in range(n + 1)
        )
        for i in range(n + 1)
    )
    rhs = (one,) + (zero,) * n
    return HankelSystem(theta, delta, rhs, phi.field)


def _solve_exact(a, b):
    # delta is SPD, so every leading principal minor is nonzero and no pivoting is needed
    n = len(b)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for k in range(n):
        pivot = m[k][k]
        if pivot == 0:
            raise SingularSystem("zero pivot in exact elimination (matrix not positive definite)")
        for i in range(k + 1, n):
            f = m[i][k] / pivot
            if f == 0:
                continue
            row_i, row_k = m[i], m[k]
            for j in range(k, n + 1):
                row_i[j] -= f * row_k[j]
    x = [None] * n
    for i in range(n - 1, -1, -1):
        s = m[i][n] - sum(m[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / m[i][i]
    return x


def solve_system(sys):
    """Solve ``delta X = e_1`` and set ``Y = theta X``."""
    theta = sys.theta
    if sys.field == RATIONAL:
        x = _solve_exact(sys.delta, sys.rhs)
    else:
        try:
            x = [float(v) for v in np.linalg.solve(np.array(sys.delta, dtype=float), np.array(sys.rhs, dtype=float))]
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(str(exc)) from exc
        if not all(np.isfinite(x)):
            raise SingularSystem("non-finite solution")
    zero = coerce(0, sys.field)
    y = [sum((theta[i][j] * x[j] for j in range(len(x))), zero) for i in range(len(x))]
    return x, y


def uncorrected_pair(phi):
    """Pair straight from the Hankel solve; its norm constant is ``x_0``, not 1."""
    x, y = solve_system(build_theta(phi))
    return ParamPair(LaurentPoly(x, 0, phi.field), LaurentPoly(y, 0, phi.field)), x[0]


def correction_matrix(pair):
    a1, b1 = pair.at_one()
    c = a1 * a1 + b1 * b1
    if c == 0:
        raise DegeneratePair("alpha(1)**2 + beta(1)**2 == 0")
    return CorrectionMatrix(a1, b1, c)


def correct_to_canonical(pair):
    """Map a pair with constant norm ``c > 0`` into the canonical set.

    Dividing by ``sqrt(c)`` and then rotating by ``U^-1`` is the same as one
    multiplication by ``U^T / c``, which keeps rationals rational.
    """
    if pair.alpha.is_zero() and pair.beta.is_zero():
        raise DegeneratePair("both polynomials are zero")
    return pair.times(correction_matrix(pair).inverse())


def coprod(phi):
    """phi -> canonical (alpha, beta)."""
    pair, _ = uncorrected_pair(phi)
    return correct_to_canonical(pair)


def prod(pair, n=None):
    """(alpha, beta) -> phi of nominal degree ``n`` (default: the pair's degree).

    Uses ``[[1/alpha]^+_n * ~beta]^-`` when ``|alpha(0)| >= |beta(0)|`` and
    ``-[[1/beta]^+_n * ~alpha]^-`` otherwise.
    """
    if n is None:
        n = pair.degree
    if pair.degree > n:
        raise ValueError(f"pair of degree {pair.degree} does not fit nominal degree {n}")
    a0, b0 = pair.at_zero()
    if a0 == 0 and b0 == 0:
        raise DegeneratePair("alpha(0) == beta(0) == 0")
    if abs(a0) >= abs(b0):
        phi = (series_inverse_trunc(pair.alpha, n) * pair.beta.tilde()).neg_part()
    else:
        phi = -(series_inverse_trunc(pair.beta, n) * pair.alpha.tilde()).neg_part()
    return PhiParam.from_poly(phi, n)


def prod_branches(pair, n=None):
    """Both formulas for phi; ``None`` for a branch whose constant term vanishes."""
    if n is None:
        n = pair.degree
    a0, b0 = pair.at_zero()
    via_alpha = via_beta = None
    if a0 != 0:
        via_alpha = PhiParam.from_poly((series_inverse_trunc(pair.alpha, n) * pair.beta.tilde()).neg_part(), n)
    if b0 != 0:
        via_beta = PhiParam.from_poly(-(series_inverse_trunc(pair.beta, n) * pair.alpha.tilde()).neg_part(), n)
    return via_alpha, via_beta


def roundtrip_check(phi, tol=DEFAULT_TOL):
    back = prod(coprod(phi), phi.n)
    if phi.field == RATIONAL:
        if back != phi:
            raise RoundTripMismatch("prod(coprod(phi)) != phi", back.max_distance(phi))
    else:
        dist = back.max_distance(phi)
        if dist > tol:
            raise RoundTripMismatch("prod(coprod(phi)) differs from phi", dist)
    return True


def pair_roundtrip_check(pair, tol=DEFAULT_TOL):
    """Return ``U`` with ``pair == coprod(prod(pair)) @ U``; raise if that fails."""
    phi = prod(pair)
    canonical = coprod(phi)
    u = correction_matrix(pair)
    rebuilt = canonical.times(u.matrix())
    if pair.field == RATIONAL:
        if rebuilt != pair:
            raise RoundTripMismatch("pair != coprod(prod(pair)) U", rebuilt.residual(pair))
    else:
        res = rebuilt.residual(pair)
        if res > tol:
            raise RoundTripMismatch("pair != coprod(prod(pair)) U", res)
    return u
