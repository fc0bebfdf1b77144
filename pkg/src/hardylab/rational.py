"""Complex polynomials and rational transfer functions.

Rational functions are kept in reduced form (no common num/den roots up
to a pairing tolerance) with a monic denominator.  A transfer function is
causal and stable exactly when all of its poles lie strictly outside the
closed unit disk.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .signals import Signal

__all__ = [
    "Polynomial",
    "RationalFunction",
    "PoleZeroReport",
    "poly_roots",
    "classify",
    "impulse_response",
    "feedback_closure",
    "compose_mobius",
]

ROOT_MATCH_RTOL = 1e-9
CIRCLE_TOL = 1e-9


class Polynomial:
    """Polynomial with complex coefficients in ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if arr.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        nonzero = np.flatnonzero(arr != 0)
        if nonzero.size == 0:
            arr = np.zeros(1, dtype=complex)
        else:
            arr = arr[: int(nonzero[-1]) + 1].copy()
        object.__setattr__(self, "coeffs", arr)
        self.coeffs.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def from_roots(cls, roots, leading=1.0) -> "Polynomial":
        acc = np.array([complex(leading)])
        for r in np.asarray(roots, dtype=complex):
            acc = np.convolve(acc, np.array([-r, 1.0]))
        return cls(acc)

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else self.coeffs.size - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return complex(acc) if acc.ndim == 0 else acc

    def derivative(self) -> "Polynomial":
        if self.degree <= 0:
            return Polynomial([0.0])
        return Polynomial(self.coeffs[1:] * np.arange(1, self.coeffs.size))

    def __add__(self, other):
        other = _as_poly(other)
        n = max(self.coeffs.size, other.coeffs.size)
        buf = np.zeros(n, dtype=complex)
        buf[: self.coeffs.size] += self.coeffs
        buf[: other.coeffs.size] += other.coeffs
        return Polynomial(buf)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if np.isscalar(other):
            return Polynomial(self.coeffs * complex(other))
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return Polynomial([0.0])
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()!r})"


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if np.isscalar(p):
        return Polynomial([p])
    return Polynomial(p)


def poly_roots(p: Polynomial) -> np.ndarray:
    """Roots with multiplicity via companion-matrix eigenvalues."""
    p = _as_poly(p)
    if p.is_zero:
        raise DomainError("zero polynomial has no well-defined roots")
    if p.degree < 1:
        raise DomainError("root finding requires degree >= 1")
    return np.roots(p.coeffs[::-1])


def _cancel_common_roots(num: Polynomial, den: Polynomial, rtol: float):
    """Pair and remove num/den roots that agree within rtol (relative)."""
    if num.is_zero or num.degree < 1 or den.degree < 1:
        return num, den
    nroots = list(poly_roots(num))
    droots = list(poly_roots(den))
    kept_den = []
    cancelled = False
    for r in droots:
        best = None
        best_dist = rtol * max(1.0, abs(r))
        for i, s in enumerate(nroots):
            d = abs(s - r)
            if d <= best_dist:
                best, best_dist = i, d
        if best is None:
            kept_den.append(r)
        else:
            nroots.pop(best)
            cancelled = True
    if not cancelled:
        return num, den
    new_num = Polynomial.from_roots(nroots, leading=num.leading)
    new_den = Polynomial.from_roots(kept_den, leading=den.leading)
    return new_num, new_den


class RationalFunction:
    """Reduced ratio num/den of complex polynomials, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1.0, reduce: bool = True, root_match_rtol: float = ROOT_MATCH_RTOL):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero:
            raise DomainError("denominator must not be identically zero")
        if num.is_zero:
            num, den = Polynomial([0.0]), Polynomial([1.0])
        elif reduce:
            num, den = _cancel_common_roots(num, den, root_match_rtol)
        lead = den.leading
        object.__setattr__(self, "num", Polynomial(num.coeffs / lead))
        object.__setattr__(self, "den", Polynomial(den.coeffs / lead))

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def boundary_values(self, n: int) -> np.ndarray:
        """Values on the size-n uniform circle grid."""
        z = np.exp(2j * np.pi * np.arange(n) / n)
        return self.num(z) / self.den(z)

    def derivative(self) -> "RationalFunction":
        # quotient rule; left unreduced because den^2 has doubled roots
        # that the pairing tolerance would not resolve anyway
        num = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RationalFunction(num, self.den * self.den, reduce=False)

    def __add__(self, other):
        other = _as_rational(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-_as_rational(other))

    def __rsub__(self, other):
        return _as_rational(other) + (-self)

    def __mul__(self, other):
        other = _as_rational(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rational(other)
        if other.is_zero:
            raise DomainError("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rational(other) / self

    def __repr__(self):
        return f"RationalFunction({self.num.coeffs.tolist()!r}, {self.den.coeffs.tolist()!r})"

    def to_dict(self) -> dict:
        return {
            "num_re": self.num.coeffs.real.tolist(),
            "num_im": self.num.coeffs.imag.tolist(),
            "den_re": self.den.coeffs.real.tolist(),
            "den_im": self.den.coeffs.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RationalFunction":
        num = np.asarray(d["num_re"], dtype=float) + 1j * np.asarray(d["num_im"], dtype=float)
        den = np.asarray(d["den_re"], dtype=float) + 1j * np.asarray(d["den_im"], dtype=float)
        return cls(num, den)


def _as_rational(r) -> RationalFunction:
    if isinstance(r, RationalFunction):
        return r
    return RationalFunction(_as_poly(r), 1.0, reduce=False)


def compose_mobius(r: RationalFunction, a, b, c, d) -> RationalFunction:
    """The Mobius image (a r + b) / (c r + d) as a rational function."""
    r = _as_rational(r)
    num = a * r.num + b * r.den
    den = c * r.num + d * r.den
    return RationalFunction(num, den)


@dataclass(frozen=True)
class PoleZeroReport:
    """Zeros, poles, and the causal-stability verdict of a reduced
    rational transfer function."""

    zeros: np.ndarray
    poles: np.ndarray
    causal_stable: bool
    reason: str  # "stable" | "pole_in_disk" | "pole_on_circle"


def classify(b: RationalFunction, circle_tol: float = CIRCLE_TOL) -> PoleZeroReport:
    """Causal-stable iff every pole lies strictly outside the closed disk.

    Poles within ``circle_tol`` of the unit circle are treated as on it
    and reported with their own reason code.
    """
    zeros = poly_roots(b.num) if b.num.degree >= 1 else np.zeros(0, dtype=complex)
    poles = poly_roots(b.den) if b.den.degree >= 1 else np.zeros(0, dtype=complex)
    moduli = np.abs(poles)
    if np.any(moduli < 1.0 - circle_tol):
        reason = "pole_in_disk"
    elif np.any(moduli <= 1.0 + circle_tol):
        reason = "pole_on_circle"
    else:
        reason = "stable"
    return PoleZeroReport(zeros=zeros, poles=poles, causal_stable=reason == "stable", reason=reason)


def impulse_response(b: RationalFunction, length: int) -> Signal:
    """First ``length`` series coefficients of b around 0 by long division."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    d = b.den.coeffs
    scale = np.max(np.abs(d))
    if abs(d[0]) <= 1e-15 * scale:
        raise DomainError("not causal at origin")
    n = b.num.coeffs
    out = np.zeros(length, dtype=complex)
    for m in range(length):
        acc = n[m] if m < n.size else 0j
        kmax = min(m, d.size - 1)
        if kmax >= 1:
            acc -= np.dot(d[1 : kmax + 1], out[m - 1 :: -1][:kmax])
        out[m] = acc / d[0]
    return Signal(out, offset=0)


def feedback_closure(P: RationalFunction, C: RationalFunction, strict: bool = False) -> RationalFunction:
    """Closed loop P / (1 + P C) of plant P under feedback compensator C.

    ``strict`` additionally requires the compensator to include a unit
    delay (C(0) = 0), the physical well-posedness condition for real-time
    loops.
    """
    P = _as_rational(P)
    C = _as_rational(C)
    if strict and abs(C(0.0)) > 1e-12:
        raise DomainError("strict feedback requires a compensator with C(0) = 0")
    gain = 1.0 + P(0.0) * C(0.0)
    if abs(gain) <= 1e-12:
        raise DomainError("algebraic loop: 1 + P(0) C(0) = 0")
    return RationalFunction(P.num * C.den, P.den * C.den + P.num * C.num)
