"""Analytic functions on the unit disc and the Mobius machinery behind every norm.

All function objects evaluate vectorized: ``f(z)`` and ``f.derivative(z)``
accept complex scalars or numpy arrays of any shape and return matching
shapes.  Interior points are plain ``complex`` values with ``|z| < 1``;
points on the unit circle are carried by :class:`BoundaryPoint` (an angle,
modulus exactly 1) so that boundary evaluation never goes through the
interior code path.

Functions are immutable after construction and safe to share between
workers.  Each one may carry

* an optional Taylor view (coefficients, valid radius, tail bound),
* an optional boundary trace (``theta -> f(e^{i theta})``),
* a tuple of singular directions on the circle, used by the quadrature
  module to grade meshes toward the points where mass concentrates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

#: Interior points of the disc are plain complex numbers.
DiscPoint = complex


class EvaluationDomainError(ValueError):
    """Raised when a function is evaluated outside its certified radius."""


class TruncationError(ValueError):
    """Raised when a requested series truncation cannot meet its tail tolerance."""


def require_interior(z, r_max: float = 1.0) -> None:
    m = np.max(np.abs(z))
    if m > r_max + 1e-14:
        raise EvaluationDomainError(
            f"evaluation at |z|={m:.17g} exceeds certified radius {r_max:.17g}"
        )


@dataclass(frozen=True)
class BoundaryPoint:
    """A point on the unit circle, stored as its angle in [0, 2*pi)."""

    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", float(self.angle) % TWO_PI)

    @property
    def point(self) -> complex:
        return complex(math.cos(self.angle), math.sin(self.angle))


@dataclass(frozen=True)
class SpaceParams:
    """The exponent pair (p, lam) together with the derived exponents.

    ``box_exponent``       power of |I| in the Carleson-box quantity (p*lam)
    ``translate_exponent`` power of (1-|a|^2) weighting translate seminorms,
                           p*(1-lam)/2
    ``translate_exponent_sq`` the squared-form power p*(1-lam)
    """

    p: float
    lam: float
    box_exponent: float = field(init=False)
    translate_exponent: float = field(init=False)
    translate_exponent_sq: float = field(init=False)

    def __post_init__(self):
        if not (0.0 < self.p <= 1.0):
            raise ValueError(f"p must lie in (0, 1], got {self.p}")
        if not (0.0 <= self.lam <= 1.0):
            raise ValueError(f"lam must lie in [0, 1], got {self.lam}")
        object.__setattr__(self, "box_exponent", self.p * self.lam)
        object.__setattr__(self, "translate_exponent", self.p * (1.0 - self.lam) / 2.0)
        object.__setattr__(self, "translate_exponent_sq", self.p * (1.0 - self.lam))


# ---------------------------------------------------------------------------
# Mobius automorphisms
# ---------------------------------------------------------------------------


def mobius_apply(a, z):
    """The disc automorphism (a - z) / (1 - conj(a) z); swaps 0 and a.

    Vectorized in both arguments (broadcasting)."""
    if np.max(np.abs(a)) >= 1.0:
        raise ValueError("Mobius parameter must be interior, |a| < 1")
    return (a - z) / (1.0 - np.conj(a) * z)


def mobius_derivative(a, z):
    """d/dz of the automorphism: -(1 - |a|^2) / (1 - conj(a) z)^2."""
    return -(1.0 - np.abs(a) ** 2) / (1.0 - np.conj(a) * z) ** 2


@dataclass(frozen=True)
class MobiusMap:
    """The involutive automorphism determined by its fixed swap pair {0, a}."""

    a: complex

    def __post_init__(self):
        if abs(self.a) >= 1.0:
            raise ValueError("MobiusMap requires |a| < 1")

    def apply(self, z):
        return mobius_apply(self.a, z)

    def derivative(self, z):
        return mobius_derivative(self.a, z)

    def __call__(self, z):
        return mobius_apply(self.a, z)


# ---------------------------------------------------------------------------
# The function type
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnalyticFunction:
    """An evaluable analytic function on the disc.

    ``eval_fn`` and ``deriv_fn`` are vectorized callables on complex arrays.
    ``r_max`` is the certified evaluation radius; 1.0 means the open disc.
    ``singular_angles`` lists boundary directions toward which the function
    (or its derivative) concentrates; quadrature grids grade toward them.
    ``angular_hint`` is the minimum angular sampling that resolves the
    function's smooth oscillation (e.g. polynomial degree).
    """

    label: str
    eval_fn: Callable
    deriv_fn: Callable
    taylor_coeffs: Optional[tuple] = None
    taylor_r_max: float = 1.0
    taylor_tail_bound: float = 0.0
    boundary_fn: Optional[Callable] = None
    singular_angles: tuple = ()
    angular_hint: int = 64
    r_max: float = 1.0
    #: True when |f'|^2 oscillates angularly far above angular_hint (lacunary
    #: series); such functions need equal-weight angular rules, where the
    #: oscillation integrates exactly by aliasing, not graded Gauss panels.
    oscillatory: bool = False

    def __call__(self, z):
        if self.r_max < 1.0:
            require_interior(z, self.r_max)
        return self.eval_fn(z)

    def derivative(self, z):
        if self.r_max < 1.0:
            require_interior(z, self.r_max)
        return self.deriv_fn(z)

    def at_zero(self) -> complex:
        return complex(self.eval_fn(0.0 + 0.0j))

    @property
    def has_boundary_values(self) -> bool:
        return self.boundary_fn is not None

    def boundary(self, theta):
        if self.boundary_fn is None:
            raise EvaluationDomainError(
                f"{self.label}: no boundary trace available"
            )
        return self.boundary_fn(theta)

    # Linear algebra on functions, used by operator linearity checks and
    # by the multiplication operator.
    def __add__(self, other: "AnalyticFunction") -> "AnalyticFunction":
        coeffs = None
        if self.taylor_coeffs is not None and other.taylor_coeffs is not None:
            n = max(len(self.taylor_coeffs), len(other.taylor_coeffs))
            a = np.zeros(n, dtype=complex)
            a[: len(self.taylor_coeffs)] += self.taylor_coeffs
            a[: len(other.taylor_coeffs)] += other.taylor_coeffs
            coeffs = tuple(a)
        bnd = None
        if self.boundary_fn is not None and other.boundary_fn is not None:
            fb, gb = self.boundary_fn, other.boundary_fn
            bnd = lambda t: fb(t) + gb(t)
        fe, ge, fd, gd = self.eval_fn, other.eval_fn, self.deriv_fn, other.deriv_fn
        return AnalyticFunction(
            label=f"({self.label}+{other.label})",
            eval_fn=lambda z: fe(z) + ge(z),
            deriv_fn=lambda z: fd(z) + gd(z),
            taylor_coeffs=coeffs,
            taylor_tail_bound=self.taylor_tail_bound + other.taylor_tail_bound,
            taylor_r_max=min(self.taylor_r_max, other.taylor_r_max),
            boundary_fn=bnd,
            singular_angles=tuple(sorted(set(self.singular_angles) | set(other.singular_angles))),
            angular_hint=max(self.angular_hint, other.angular_hint),
            r_max=min(self.r_max, other.r_max),
            oscillatory=self.oscillatory or other.oscillatory,
        )

    def scaled(self, alpha: complex) -> "AnalyticFunction":
        alpha = complex(alpha)
        coeffs = None
        if self.taylor_coeffs is not None:
            coeffs = tuple(alpha * c for c in self.taylor_coeffs)
        bnd = None
        if self.boundary_fn is not None:
            fb = self.boundary_fn
            bnd = lambda t: alpha * fb(t)
        fe, fd = self.eval_fn, self.deriv_fn
        return replace(
            self,
            label=f"({alpha!r}*{self.label})",
            eval_fn=lambda z: alpha * fe(z),
            deriv_fn=lambda z: alpha * fd(z),
            taylor_coeffs=coeffs,
            taylor_tail_bound=abs(alpha) * self.taylor_tail_bound,
            boundary_fn=bnd,
        )


# ---------------------------------------------------------------------------
# Built-in families
# ---------------------------------------------------------------------------


def _horner(coeffs, z):
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def make_taylor(coeffs: Sequence[complex]) -> AnalyticFunction:
    """Polynomial with exact evaluation, derivative and Taylor view."""
    coeffs = tuple(complex(c) for c in coeffs)
    if not coeffs:
        coeffs = (0.0 + 0.0j,)
    dcoeffs = tuple(k * c for k, c in enumerate(coeffs))[1:] or (0.0 + 0.0j,)
    deg = len(coeffs) - 1
    label = "taylor:" + ",".join(_format_complex(c) for c in coeffs)

    def ev(z):
        return _horner(coeffs, z)

    def dv(z):
        return _horner(dcoeffs, z)

    def bnd(theta):
        return _horner(coeffs, np.exp(1j * np.asarray(theta, dtype=float)))

    return AnalyticFunction(
        label=label,
        eval_fn=ev,
        deriv_fn=dv,
        taylor_coeffs=coeffs,
        boundary_fn=bnd,
        angular_hint=max(64, 4 * deg + 8),
    )


def constant(c: complex) -> AnalyticFunction:
    return make_taylor([c])


def _format_complex(c: complex) -> str:
    if c.imag == 0.0:
        return f"{c.real:g}"
    return f"{c.real:g}{c.imag:+g}i"


def make_power_kernel(c, s: float) -> AnalyticFunction:
    """The kernel f(z) = (1 - conj(c) z)^(-s), principal branch, f(0) = 1.

    ``c`` may be an interior complex point or a :class:`BoundaryPoint`.
    For |c| <= 1 the quantity 1 - conj(c) z has positive real part on the
    disc, so the principal power is unambiguous.  A boundary ``c`` with
    s > 0 is singular at z = c on the circle; the singular direction is
    flagged so quadrature can grade toward it, and no boundary trace is
    exposed in that case.
    """
    if isinstance(c, BoundaryPoint):
        cc = c.point
        on_boundary = True
    else:
        cc = complex(c)
        on_boundary = abs(abs(cc) - 1.0) <= 1e-14
        if abs(cc) > 1.0 + 1e-14:
            raise ValueError(f"kernel base point must satisfy |c| <= 1, got {abs(cc)}")
    s = float(s)
    if s < 0.0:
        raise ValueError(f"kernel exponent must be >= 0, got {s}")
    if s == 0.0 or cc == 0.0:
        return make_taylor([1.0])

    cbar = np.conj(cc)
    label = f"kernel:c={_format_complex(cc)},s={s:g}"

    def ev(z):
        return np.exp(-s * np.log(1.0 - cbar * np.asarray(z, dtype=complex)))

    def dv(z):
        w = 1.0 - cbar * np.asarray(z, dtype=complex)
        return s * cbar * np.exp(-(s + 1.0) * np.log(w))

    bnd = None
    if not on_boundary:
        def bnd(theta):  # noqa: E731 - simple closure
            u = np.exp(1j * np.asarray(theta, dtype=float))
            return np.exp(-s * np.log(1.0 - cbar * u))

    return AnalyticFunction(
        label=label,
        eval_fn=ev,
        deriv_fn=dv,
        boundary_fn=bnd,
        singular_angles=(float(np.angle(cc)) % TWO_PI,),
        angular_hint=64,
    )


GAP_R_MAX_DEFAULT = 1.0 - 2.0 ** -12
GAP_TAIL_TOL_DEFAULT = 1e-8


def gap_tail_bound(coeff_rule: Callable[[int], complex], K: int, r_max: float) -> float:
    """Estimated truncation tail  sum_{k>K} |a_k| r_max^(2^k)  of a gap series."""
    total = 0.0
    for k in range(K + 1, K + 64):
        e = 2.0 ** k
        if e * math.log(r_max) < -745.0:  # underflow: remaining terms vanish
            break
        total += abs(coeff_rule(k)) * r_max ** e
    return total


def make_gap_series(
    coeff_rule: Callable[[int], complex],
    K: int,
    *,
    r_max: float = GAP_R_MAX_DEFAULT,
    tail_tol: float = GAP_TAIL_TOL_DEFAULT,
    label: Optional[str] = None,
) -> AnalyticFunction:
    """Truncated lacunary series  sum_{k=1..K} a_k z^(2^k).

    The truncation is evaluated by repeated squaring, exactly, anywhere on
    the closed disc; interior evaluation is nevertheless refused beyond
    ``r_max``, where the truncation is no longer certified to represent the
    full series within ``tail_tol``.  The boundary trace is the trace of the
    truncation itself (a polynomial).
    """
    if K < 1:
        raise TruncationError("gap series needs at least one term")
    tail = gap_tail_bound(coeff_rule, K, r_max)
    if tail > tail_tol:
        raise TruncationError(
            f"gap series truncation K={K} leaves tail {tail:.3e} > {tail_tol:.3e} "
            f"at radius {r_max}"
        )
    a = np.array([complex(coeff_rule(k)) for k in range(1, K + 1)])

    def _sum_terms(z, with_factors):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        power = z  # z^(2^0); squares to z^(2^k)
        for k in range(1, K + 1):
            power = power * power
            term = a[k - 1] * power
            if with_factors:
                term = term * (2.0 ** k)
            acc = acc + term
        return acc

    def ev(z):
        return _sum_terms(z, with_factors=False)

    def dv(z):
        # derivative sum a_k 2^k z^(2^k - 1); the z=0 limit is 0
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        nz = z != 0
        if np.any(nz):
            out[nz] = _sum_terms(z[nz], with_factors=True) / z[nz]
        if out.shape == ():
            return complex(out)
        return out

    def bnd(theta):
        return _sum_terms(np.exp(1j * np.asarray(theta, dtype=float)), with_factors=False)

    return AnalyticFunction(
        label=label or f"gap:K={K}",
        eval_fn=ev,
        deriv_fn=dv,
        boundary_fn=bnd,
        taylor_tail_bound=tail,
        angular_hint=64,
        r_max=r_max,
        oscillatory=True,
    )


def log_kernel() -> AnalyticFunction:
    """g(z) = log(1/(1-z)), principal branch; g(0) = 0, singular toward 1."""

    def ev(z):
        return -np.log(1.0 - np.asarray(z, dtype=complex))

    def dv(z):
        return 1.0 / (1.0 - np.asarray(z, dtype=complex))

    return AnalyticFunction(
        label="log1",
        eval_fn=ev,
        deriv_fn=dv,
        singular_angles=(0.0,),
        angular_hint=64,
    )


# ---------------------------------------------------------------------------
# Hyperbolic translates
# ---------------------------------------------------------------------------


def mobius_translate(f: AnalyticFunction, a: complex) -> AnalyticFunction:
    """The normalized translate g(z) = f(phi_a(z)) - f(a); g(0) = 0 exactly.

    g'(z) = f'(phi_a(z)) * phi_a'(z).  Singular directions of f move to
    phi_a of themselves (phi_a maps the circle to itself); the direction of
    ``a`` is added because the derivative factor concentrates there.
    """
    a = complex(a)
    if abs(a) >= 1.0:
        raise ValueError("translate parameter must satisfy |a| < 1")
    fa = complex(f(a * (1.0 + 0j)))
    fe, fd = f.eval_fn, f.deriv_fn

    def ev(z):
        return fe(mobius_apply(a, z)) - fa

    def dv(z):
        return fd(mobius_apply(a, z)) * mobius_derivative(a, z)

    moved = tuple(
        float(np.angle(mobius_apply(a, BoundaryPoint(t).point))) % TWO_PI
        for t in f.singular_angles
    )
    extra = (float(np.angle(a)) % TWO_PI,) if a != 0 else ()

    r_max = f.r_max
    if r_max < 1.0:
        # phi_a maps |z| <= rho into |w| <= (|a|+rho)/(1+|a| rho); invert at r_max
        r_max = max(0.0, (f.r_max - abs(a)) / (1.0 - abs(a) * f.r_max))

    return AnalyticFunction(
        label=f"translate({f.label},a={_format_complex(a)})",
        eval_fn=ev,
        deriv_fn=dv,
        singular_angles=tuple(sorted(set(moved) | set(extra))),
        angular_hint=f.angular_hint,
        r_max=r_max,
        oscillatory=f.oscillatory,
    )
