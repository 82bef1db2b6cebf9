"""Analytic test functions on the unit disc.

Functions are represented two ways: as truncated Maclaurin series
(CoefficientSeries) with exact coefficient algebra, and as closed-form
expression trees (FunctionExpr) that evaluate pointwise -- vectorised over
numpy arrays -- with exact first and second derivatives, and expand to
Maclaurin coefficients without any quadrature.

The atom set covers the standard boundary-probing families: disc
automorphisms, Blaschke products, logarithmic kernels, and Hadamard-gap
(lacunary) series with dyadic exponents.  Gap series are never densified
except when coefficient convolution explicitly asks for it; evaluation is
done term by term with repeated squaring.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "DomainError",
    "ParseError",
    "MAX_PARAM_MODULUS",
    "DEEPEST_PARAM_MODULUS",
    "CoefficientSeries",
    "LacunaryCoefficients",
    "FunctionExpr",
    "Constant",
    "Monomial",
    "Polynomial",
    "LogKernel",
    "PowerKernel",
    "MobiusAtom",
    "BlaschkeProduct",
    "GapSeries",
    "SumExpr",
    "ProductExpr",
    "ComposeMobius",
    "Primitive",
    "series_multiply",
    "series_antiderivative",
    "taylor",
    "eval_with_derivative",
    "derivative_values",
    "second_derivative_values",
    "value_at",
    "make_atom",
    "parse_expr",
    "compose_mobius",
    "suggest_truncation",
]

#: Parameters (automorphism centres, log-kernel apertures, Blaschke zeros)
#: must stay at or below this modulus so Taylor depths remain bounded.
MAX_PARAM_MODULUS = 0.999

#: Boundary-walking atoms may raise their own cap up to this modulus
#: (dyadic depth 40); beyond it double precision cannot separate 1 - |a|
#: from rounding noise.
DEEPEST_PARAM_MODULUS = 1.0 - 2.0 ** -40


class DomainError(ValueError):
    """A point or parameter lies outside the allowed region of the disc."""


class ParseError(ValueError):
    """Expression text rejected; carries the offending position and token."""

    def __init__(self, message: str, position: int, token: str):
        super().__init__(f"{message} (at position {position}: {token!r})")
        self.position = position
        self.token = token


def _ascomplex(z) -> np.ndarray:
    return np.asarray(z, dtype=np.complex128)


def require_disc_point(z, what: str = "evaluation point") -> np.ndarray:
    arr = _ascomplex(z)
    if np.any(np.abs(arr) >= 1.0):
        raise DomainError(f"{what} must satisfy |z| < 1")
    return arr


def require_param(a: complex, what: str = "parameter",
                  limit: float = MAX_PARAM_MODULUS) -> complex:
    a = complex(a)
    if abs(a) > limit:
        raise DomainError(f"{what} must satisfy |a| <= {limit}, got |a| = {abs(a):.6g}")
    return a


def _clean_cap(cap: float) -> float:
    cap = float(cap)
    if not MAX_PARAM_MODULUS <= cap <= DEEPEST_PARAM_MODULUS:
        raise DomainError(
            "aperture cap must lie in "
            f"[{MAX_PARAM_MODULUS}, {DEEPEST_PARAM_MODULUS!r}], got {cap:.6g}")
    return cap


# ---------------------------------------------------------------------------
# truncated series algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientSeries:
    """Truncated Maclaurin series c_0 + c_1 z + ... + c_N z^N."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128))
        if arr.ndim != 1:
            raise ValueError("coefficients must form a one-dimensional array")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, z):
        zs = _ascomplex(z)
        acc = np.full_like(zs, self.coeffs[-1])
        for c in self.coeffs[-2::-1]:
            acc = acc * zs + c
        return acc if acc.shape else complex(acc)

    def derivative(self) -> "CoefficientSeries":
        if self.degree == 0:
            return CoefficientSeries(np.zeros(1))
        n = np.arange(1, len(self.coeffs))
        return CoefficientSeries(self.coeffs[1:] * n)

    def antiderivative(self, constant: complex = 0.0) -> "CoefficientSeries":
        n = np.arange(1, len(self.coeffs) + 1)
        out = np.concatenate(([complex(constant)], self.coeffs / n))
        return CoefficientSeries(out)

    def h2_norm(self) -> float:
        """Hardy-space norm of the truncation: (sum |c_n|^2)^(1/2)."""
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def padded(self, n: int) -> np.ndarray:
        out = np.zeros(n + 1, dtype=np.complex128)
        m = min(n + 1, len(self.coeffs))
        out[:m] = self.coeffs[:m]
        return out

    def __add__(self, other: "CoefficientSeries") -> "CoefficientSeries":
        n = max(self.degree, other.degree)
        return CoefficientSeries(self.padded(n) + other.padded(n))

    def scaled(self, c: complex) -> "CoefficientSeries":
        return CoefficientSeries(self.coeffs * complex(c))


def series_multiply(u: CoefficientSeries, v: CoefficientSeries,
                    n: int) -> CoefficientSeries:
    """Cauchy product truncated at degree n."""
    if n < 0:
        raise ValueError("truncation degree must be nonnegative")
    prod = np.convolve(u.coeffs, v.coeffs)
    out = np.zeros(n + 1, dtype=np.complex128)
    m = min(n + 1, len(prod))
    out[:m] = prod[:m]
    return CoefficientSeries(out)


def series_antiderivative(u: CoefficientSeries,
                          constant: complex = 0.0) -> CoefficientSeries:
    return u.antiderivative(constant)


@dataclass(frozen=True)
class LacunaryCoefficients:
    """Amplitudes a_1..a_K attached to the dyadic exponents n_k = 2^k."""

    amps: np.ndarray
    meta: tuple = ()

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.amps, dtype=np.complex128)).copy()
        if arr.ndim != 1 or len(arr) < 1:
            raise ValueError("need at least one lacunary amplitude")
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)

    @property
    def depth(self) -> int:
        return len(self.amps)

    def exponents(self) -> np.ndarray:
        # float64 carries 2^k exactly at any usable depth; int64 wraps at 63
        return np.exp2(np.arange(1, self.depth + 1, dtype=np.float64))

    def truncated(self, depth: int) -> "LacunaryCoefficients":
        if depth < 1:
            raise ValueError("depth must be >= 1")
        return LacunaryCoefficients(self.amps[:depth], self.meta)

    def meta_dict(self) -> dict:
        return dict(self.meta)


# ---------------------------------------------------------------------------
# expression trees
# ---------------------------------------------------------------------------

class FunctionExpr:
    """Base class for closed-form analytic expressions on the disc.

    Subclasses implement _eval(z, order) returning the tuple
    (f(z), f'(z), ..., up to the requested order) as numpy arrays, and
    _taylor(n) returning exact Maclaurin coefficients 0..n.
    """

    def _eval(self, z: np.ndarray, order: int):
        raise NotImplementedError

    def _eval_deriv(self, z: np.ndarray) -> np.ndarray:
        """f'(z) alone; kernels override to skip value-channel work."""
        return self._eval(z, 1)[1]

    def _taylor(self, n: int) -> np.ndarray:
        raise NotImplementedError

    def _tail_bound(self, r: float, n: int) -> float:
        """Upper bound on sum_{m>n} |c_m| r^m."""
        raise NotImplementedError

    def degree_hint(self) -> int | None:
        """Exact polynomial degree when finite, else None."""
        return None

    def __add__(self, other: "FunctionExpr") -> "FunctionExpr":
        return SumExpr((self, other))

    def __mul__(self, other: "FunctionExpr") -> "FunctionExpr":
        return ProductExpr((self, other))


def value_at(f: FunctionExpr, z) -> complex:
    arr = require_disc_point(z)
    out = f._eval(arr, 0)[0]
    return complex(out) if not out.shape else out


def eval_with_derivative(f: FunctionExpr, z):
    """(f(z), f'(z)) with exact closed-form derivatives."""
    arr = require_disc_point(z)
    v, d = f._eval(arr, 1)
    if arr.shape:
        return v, d
    return complex(v), complex(d)


def derivative_values(f: FunctionExpr, z) -> np.ndarray:
    arr = require_disc_point(z)
    return f._eval_deriv(arr)


def second_derivative_values(f: FunctionExpr, z) -> np.ndarray:
    arr = require_disc_point(z)
    return f._eval(arr, 2)[2]


def taylor(f: FunctionExpr, n: int) -> CoefficientSeries:
    """Exact Maclaurin coefficients c_0..c_n as a CoefficientSeries."""
    if n < 0:
        raise ValueError("truncation degree must be nonnegative")
    return CoefficientSeries(f._taylor(n))


def suggest_truncation(f: FunctionExpr, r: float, tol: float = 1e-10,
                       cap: int = 1 << 22) -> int:
    """Smallest power-of-two-ish depth whose coefficient tail at radius r
    is below tol.  Exact-degree expressions return their degree."""
    d = f.degree_hint()
    if d is not None:
        return d
    n = 16
    while n < cap:
        if f._tail_bound(r, n) < tol:
            return n
        n *= 2
    raise DomainError(f"no truncation below depth {cap} reaches tail {tol:g} at r={r}")


@dataclass(frozen=True)
class Constant(FunctionExpr):
    c: complex

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))

    def _eval(self, z, order):
        v = np.full_like(z, self.c)
        zero = np.zeros_like(z)
        return (v, zero, zero)[: order + 1]

    def _taylor(self, n):
        out = np.zeros(n + 1, dtype=np.complex128)
        out[0] = self.c
        return out

    def _tail_bound(self, r, n):
        return 0.0

    def degree_hint(self):
        return 0


@dataclass(frozen=True)
class Monomial(FunctionExpr):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("monomial exponent must be nonnegative")

    def _eval(self, z, order):
        n = self.n
        v = z ** n
        if order == 0:
            return (v,)
        d1 = n * z ** (n - 1) if n >= 1 else np.zeros_like(z)
        if order == 1:
            return v, d1
        d2 = n * (n - 1) * z ** (n - 2) if n >= 2 else np.zeros_like(z)
        return v, d1, d2

    def _taylor(self, n):
        out = np.zeros(n + 1, dtype=np.complex128)
        if self.n <= n:
            out[self.n] = 1.0
        return out

    def _tail_bound(self, r, n):
        return 0.0 if n >= self.n else r ** self.n

    def degree_hint(self):
        return self.n


@dataclass(frozen=True)
class Polynomial(FunctionExpr):
    series: CoefficientSeries

    def _eval(self, z, order):
        v = self.series.eval(z)
        v = _ascomplex(v)
        if order == 0:
            return (v,)
        d1s = self.series.derivative()
        d1 = _ascomplex(d1s.eval(z))
        if order == 1:
            return v, d1
        d2 = _ascomplex(d1s.derivative().eval(z))
        return v, d1, d2

    def _taylor(self, n):
        return self.series.padded(n)

    def _tail_bound(self, r, n):
        c = self.series.coeffs
        if n >= len(c) - 1:
            return 0.0
        m = np.arange(n + 1, len(c))
        return float(np.sum(np.abs(c[n + 1:]) * r ** m))

    def degree_hint(self):
        return self.series.degree


@dataclass(frozen=True)
class LogKernel(FunctionExpr):
    """scale * log(offset / (1 - conj(a) z)); principal branch.

    offset=1 gives the plain logarithmic kernel, offset=2 the boundary
    test function with value log 2 at the origin.
    """

    a: complex
    scale: complex = 1.0
    offset: float = 1.0
    cap: float = MAX_PARAM_MODULUS

    def __post_init__(self):
        object.__setattr__(self, "cap", _clean_cap(self.cap))
        object.__setattr__(
            self, "a", require_param(self.a, "log-kernel aperture", self.cap))
        object.__setattr__(self, "scale", complex(self.scale))
        if not (self.offset > 0):
            raise DomainError("log-kernel offset must be positive")
        object.__setattr__(self, "offset", float(self.offset))

    def _eval(self, z, order):
        ab = np.conj(self.a)
        w = 1.0 - ab * z
        v = self.scale * (math.log(self.offset) - np.log(w))
        if order == 0:
            return (v,)
        d1 = self.scale * ab / w
        if order == 1:
            return v, d1
        d2 = self.scale * ab * ab / (w * w)
        return v, d1, d2

    def _eval_deriv(self, z):
        ab = np.conj(self.a)
        return self.scale * ab / (1.0 - ab * z)

    def _taylor(self, n):
        out = np.zeros(n + 1, dtype=np.complex128)
        out[0] = self.scale * math.log(self.offset)
        if n >= 1:
            ab = np.conj(self.a)
            k = np.arange(1, n + 1)
            out[1:] = self.scale * ab ** k / k
        return out

    def _tail_bound(self, r, n):
        q = abs(self.a) * r
        if q == 0.0:
            return 0.0
        return abs(self.scale) * q ** (n + 1) / ((n + 1) * (1.0 - q))


@dataclass(frozen=True)
class PowerKernel(FunctionExpr):
    """scale * (1 - conj(a) z)^(-q) for q > 0.

    q=2 with scale (1-|a|^2)^2 is the unit-mass reproducing peak at a.
    """

    a: complex
    q: float
    scale: complex = 1.0
    cap: float = MAX_PARAM_MODULUS

    def __post_init__(self):
        object.__setattr__(self, "cap", _clean_cap(self.cap))
        object.__setattr__(
            self, "a", require_param(self.a, "power-kernel aperture", self.cap))
        if not self.q > 0:
            raise DomainError("power-kernel exponent must be positive")
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "scale", complex(self.scale))

    def _eval(self, z, order):
        ab = np.conj(self.a)
        w = 1.0 - ab * z
        v = self.scale * w ** (-self.q)
        if order == 0:
            return (v,)
        d1 = v * self.q * ab / w
        if order == 1:
            return v, d1
        d2 = v * self.q * (self.q + 1.0) * (ab / w) ** 2
        return v, d1, d2

    def _coeff_moduli(self, n):
        # |c_k| for k = 0..n via the binomial-series recursion
        out = np.empty(n + 1, dtype=np.float64)
        out[0] = abs(self.scale)
        aa = abs(self.a)
        for k in range(n):
            out[k + 1] = out[k] * aa * (k + self.q) / (k + 1.0)
        return out

    def _taylor(self, n):
        out = np.empty(n + 1, dtype=np.complex128)
        out[0] = self.scale
        ab = np.conj(self.a)
        for k in range(n):
            out[k + 1] = out[k] * ab * (k + self.q) / (k + 1.0)
        return out

    def _tail_bound(self, r, n):
        aa = abs(self.a) * r
        if aa == 0.0:
            return 0.0
        # geometric majorant once the term ratio (k+q)/(k+1) * |a| r caps out
        beta = max((n + 1.0 + self.q) / (n + 2.0), 1.0) * aa
        if beta >= 1.0:
            return math.inf
        lead = self._coeff_moduli(n + 1)[n + 1] * r ** (n + 1)
        return lead / (1.0 - beta)


@dataclass(frozen=True)
class MobiusAtom(FunctionExpr):
    """Disc automorphism (a - z) / (1 - conj(a) z); swaps 0 and a."""

    a: complex
    cap: float = MAX_PARAM_MODULUS

    def __post_init__(self):
        object.__setattr__(self, "cap", _clean_cap(self.cap))
        object.__setattr__(
            self, "a", require_param(self.a, "automorphism centre", self.cap))

    def _eval(self, z, order):
        a = self.a
        ab = np.conj(a)
        w = 1.0 - ab * z
        v = (a - z) / w
        if order == 0:
            return (v,)
        t = abs(a) ** 2 - 1.0
        d1 = t / (w * w)
        if order == 1:
            return v, d1
        d2 = 2.0 * ab * t / (w * w * w)
        return v, d1, d2

    def _eval_deriv(self, z):
        w = 1.0 - np.conj(self.a) * z
        return (abs(self.a) ** 2 - 1.0) / (w * w)

    def _taylor(self, n):
        out = np.zeros(n + 1, dtype=np.complex128)
        out[0] = self.a
        if n >= 1:
            ab = np.conj(self.a)
            t = abs(self.a) ** 2 - 1.0
            out[1:] = t * ab ** np.arange(0, n)
        return out

    def _tail_bound(self, r, n):
        q = abs(self.a) * r
        t = 1.0 - abs(self.a) ** 2
        if q == 0.0:
            return 0.0 if n >= 1 else t * r
        return t * r * q ** n / (1.0 - q)


def _mobius_factor_series(a: complex, unimod: complex, n: int) -> np.ndarray:
    out = np.zeros(n + 1, dtype=np.complex128)
    out[0] = unimod * a
    if n >= 1:
        ab = np.conj(a)
        out[1:] = unimod * (abs(a) ** 2 - 1.0) * ab ** np.arange(0, n)
    return out


@dataclass(frozen=True)
class BlaschkeProduct(FunctionExpr):
    """Finite Blaschke product with the usual |a|/a normalisation per zero.

    A zero at the origin contributes the factor z.
    """

    zeros: tuple

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        if len(zs) == 0:
            raise DomainError("a Blaschke product needs at least one zero")
        for a in zs:
            require_param(a, "Blaschke zero")
        object.__setattr__(self, "zeros", zs)

    def _factor_eval(self, a, z, order):
        if a == 0:
            one = np.ones_like(z)
            zero = np.zeros_like(z)
            return (z, one, zero)[: order + 1]
        unimod = abs(a) / a
        ab = np.conj(a)
        w = 1.0 - ab * z
        v = unimod * (a - z) / w
        if order == 0:
            return (v,)
        t = abs(a) ** 2 - 1.0
        d1 = unimod * t / (w * w)
        if order == 1:
            return v, d1
        d2 = unimod * 2.0 * ab * t / (w ** 3)
        return v, d1, d2

    def _eval(self, z, order):
        vals = np.ones_like(z)
        d1 = np.zeros_like(z)
        d2 = np.zeros_like(z)
        for a in self.zeros:
            fv = self._factor_eval(a, z, order)
            if order >= 2:
                d2 = d2 * fv[0] + 2.0 * d1 * fv[1] + vals * fv[2]
            if order >= 1:
                d1 = d1 * fv[0] + vals * fv[1]
            vals = vals * fv[0]
        return (vals, d1, d2)[: order + 1]

    def _taylor(self, n):
        acc = np.zeros(n + 1, dtype=np.complex128)
        acc[0] = 1.0
        for a in self.zeros:
            if a == 0:
                fac = np.zeros(n + 1, dtype=np.complex128)
                if n >= 1:
                    fac[1] = 1.0
            else:
                fac = _mobius_factor_series(a, abs(a) / a, n)
            acc = np.convolve(acc, fac)[: n + 1]
        return acc

    def _tail_bound(self, r, n):
        # |B| <= 1 on the closed disc, so |c_m| <= 1 for every m.
        if r >= 1.0:
            return math.inf
        return r ** (n + 1) / (1.0 - r)


@dataclass(frozen=True)
class GapSeries(FunctionExpr):
    """Hadamard gap series sum_k a_k z^(2^k), k = 1..depth.

    Evaluation is sparse: repeated squaring, never a dense expansion.
    """

    coeffs: LacunaryCoefficients

    def _eval(self, z, order):
        amps = self.coeffs.amps
        depth = self.coeffs.depth
        v = np.zeros_like(z)
        d1 = np.zeros_like(z) if order >= 1 else None
        d2 = np.zeros_like(z) if order >= 2 else None
        # chain t_k = z^(2^k - 1); then z^(2^k) = t_k * z, z^(2^k - 2) = t_{k-1}^2
        t = z.copy()  # k = 1: z^(2-1)
        for k in range(1, depth + 1):
            nk = float(2 ** k)
            a = amps[k - 1]
            zk = t * z
            v = v + a * zk
            if order >= 1:
                d1 = d1 + a * nk * t
            if order >= 2:
                # z^(2^k - 2) = (z^(2^(k-1) - 1))^2 for k >= 2; for k = 1 it is 1
                if k == 1:
                    u = np.ones_like(z)
                else:
                    u = t_prev * t_prev
                d2 = d2 + a * nk * (nk - 1.0) * u
            t_prev = t
            t = t * t * z  # z^(2^(k+1) - 1)
        return (v, d1, d2)[: order + 1]

    def _taylor(self, n):
        out = np.zeros(n + 1, dtype=np.complex128)
        for k in range(1, self.coeffs.depth + 1):
            e = 2 ** k
            if e > n:
                break
            out[e] = self.coeffs.amps[k - 1]
        return out

    def _tail_bound(self, r, n):
        total = 0.0
        for k in range(1, self.coeffs.depth + 1):
            e = 2 ** k
            if e > n:
                total += abs(self.coeffs.amps[k - 1]) * r ** min(e, 1 << 30)
        return total

    def degree_hint(self):
        return 2 ** self.coeffs.depth


@dataclass(frozen=True)
class SumExpr(FunctionExpr):
    terms: tuple

    def __post_init__(self):
        if len(self.terms) < 1:
            raise DomainError("empty sum")
        object.__setattr__(self, "terms", tuple(self.terms))

    def _eval(self, z, order):
        parts = [t._eval(z, order) for t in self.terms]
        return tuple(sum(p[i] for p in parts) for i in range(order + 1))

    def _taylor(self, n):
        acc = np.zeros(n + 1, dtype=np.complex128)
        for t in self.terms:
            acc = acc + t._taylor(n)
        return acc

    def _tail_bound(self, r, n):
        return sum(t._tail_bound(r, n) for t in self.terms)

    def degree_hint(self):
        ds = [t.degree_hint() for t in self.terms]
        if any(d is None for d in ds):
            return None
        return max(ds)


@dataclass(frozen=True)
class ProductExpr(FunctionExpr):
    factors: tuple

    def __post_init__(self):
        if len(self.factors) < 1:
            raise DomainError("empty product")
        object.__setattr__(self, "factors", tuple(self.factors))

    def _eval(self, z, order):
        vals = np.ones_like(z)
        d1 = np.zeros_like(z)
        d2 = np.zeros_like(z)
        for f in self.factors:
            fv = f._eval(z, order)
            if order >= 2:
                d2 = d2 * fv[0] + 2.0 * d1 * fv[1] + vals * fv[2]
            if order >= 1:
                d1 = d1 * fv[0] + vals * fv[1]
            vals = vals * fv[0]
        return (vals, d1, d2)[: order + 1]

    def _taylor(self, n):
        acc = np.zeros(n + 1, dtype=np.complex128)
        acc[0] = 1.0
        for f in self.factors:
            acc = np.convolve(acc, f._taylor(n))[: n + 1]
        return acc

    def _sum_bound(self, expr, r, n=0):
        # bound on sum |c_m| r^m: tail at 0 plus |c_0|
        c0 = abs(complex(np.atleast_1d(expr._taylor(0))[0]))
        return c0 + expr._tail_bound(r, 0)

    def _tail_bound(self, r, n):
        # tail(uv, n) <= M_u tail_v(n/2) + tail_u(n/2) M_v, folded pairwise
        if len(self.factors) == 1:
            return self.factors[0]._tail_bound(r, n)
        half = n // 2
        u, rest = self.factors[0], ProductExpr(self.factors[1:])
        mu = self._sum_bound(u, r)
        mv = rest._sum_bound(rest, r)
        return mu * rest._tail_bound(r, half) + u._tail_bound(r, half) * mv

    def degree_hint(self):
        ds = [f.degree_hint() for f in self.factors]
        if any(d is None for d in ds):
            return None
        return sum(ds)


@dataclass(frozen=True)
class ComposeMobius(FunctionExpr):
    """f composed with the automorphism swapping 0 and b."""

    f: FunctionExpr
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "b", require_param(self.b, "composition centre"))

    def _eval(self, z, order):
        phi = MobiusAtom(self.b)
        pv = phi._eval(z, min(order, 2))
        inner = self.f._eval(pv[0], order)
        if order == 0:
            return (inner[0],)
        d1 = inner[1] * pv[1]
        if order == 1:
            return inner[0], d1
        d2 = inner[2] * pv[1] ** 2 + inner[1] * pv[2]
        return inner[0], d1, d2

    def _taylor(self, n):
        # Composition coefficients of degree <= n draw on the whole outer
        # tail, so expand the outer factor until its tail is negligible on
        # the image radius of a mid-disc circle.
        r_img = (abs(self.b) + 0.9) / (1.0 + 0.9 * abs(self.b))
        d = self.f.degree_hint()
        if d is not None:
            depth = d
        else:
            depth = 16
            while depth < (1 << 14) and self.f._tail_bound(r_img, depth) > 1e-13:
                depth *= 2
        outer = self.f._taylor(depth)
        inner = MobiusAtom(self.b)._taylor(n)
        acc = np.zeros(n + 1, dtype=np.complex128)
        acc[0] = outer[depth]
        for k in range(depth - 1, -1, -1):
            acc = np.convolve(acc, inner)[: n + 1]
            acc[0] += outer[k]
        return acc

    def _tail_bound(self, r, n):
        # composition with an automorphism keeps the image radius below
        # (|b| + r) / (1 + |b| r); delegate to the outer tail at that radius
        rr = (abs(self.b) + r) / (1.0 + abs(self.b) * r)
        return self.f._tail_bound(rr, n)


@dataclass(frozen=True)
class Primitive(FunctionExpr):
    """Antiderivative of `integrand`, vanishing at the origin.

    Supports exact derivative evaluation only; the value requires a series
    expansion, so order-0 pointwise evaluation raises.  This is the natural
    representation of integration-operator images inside derivative-based
    seminorms.
    """

    integrand: FunctionExpr

    def _eval(self, z, order):
        if order == 0:
            raise DomainError("a primitive has no closed-form pointwise value; "
                              "expand with taylor() instead")
        inner = self.integrand._eval(z, order - 1)
        marker = np.full_like(z, np.nan)
        return (marker,) + tuple(inner)

    def _taylor(self, n):
        if n == 0:
            return np.zeros(1, dtype=np.complex128)
        inner = CoefficientSeries(self.integrand._taylor(n - 1))
        return inner.antiderivative(0.0).padded(n)

    def _tail_bound(self, r, n):
        return self.integrand._tail_bound(r, max(n - 1, 0))

    def degree_hint(self):
        d = self.integrand.degree_hint()
        return None if d is None else d + 1


def compose_mobius(f: FunctionExpr, b: complex) -> FunctionExpr:
    return ComposeMobius(f, b)


# ---------------------------------------------------------------------------
# named atoms
# ---------------------------------------------------------------------------

def make_atom(kind: str, **params) -> FunctionExpr:
    """Construct the named boundary-probing families.

    kinds: fa (normalised log kernel, needs a != 0 and p > 1), ha (offset-2
    log kernel), fp (gap series with amplitudes k^(-1/2) 2^(-k/p)),
    log, cauchy, mobius, blaschke, gap, poly, monomial, constant.

    Parametric kinds accept an optional cap raising the default modulus
    bound on a, so boundary families can walk past 0.999.
    """
    kind = kind.lower()
    cap = float(params.get("cap", MAX_PARAM_MODULUS))
    if kind == "fa":
        a = require_param(complex(params["a"]), "aperture", _clean_cap(cap))
        p = float(params["p"])
        if a == 0:
            raise DomainError("the normalised log kernel needs a nonzero aperture")
        if not p > 1.0:
            raise DomainError("the normalised log kernel needs p > 1")
        scale = math.log(1.0 / (1.0 - abs(a) ** 2)) ** (-1.0 / p)
        return LogKernel(a, scale=scale, offset=1.0, cap=cap)
    if kind == "ha":
        return LogKernel(complex(params["a"]), scale=1.0, offset=2.0, cap=cap)
    if kind == "fp":
        p = float(params["p"])
        depth = int(params["depth"])
        if not p > 0:
            raise DomainError("gap-family exponent p must be positive")
        if depth < 1:
            raise DomainError("gap-family depth must be >= 1")
        k = np.arange(1, depth + 1, dtype=np.float64)
        amps = k ** -0.5 * 2.0 ** (-k / p)
        meta = (("family", "fp"), ("p", p))
        return GapSeries(LacunaryCoefficients(amps, meta))
    if kind == "log":
        return LogKernel(complex(params["a"]),
                         scale=complex(params.get("scale", 1.0)),
                         offset=float(params.get("offset", 1.0)), cap=cap)
    if kind == "cauchy":
        return PowerKernel(complex(params["a"]),
                           q=float(params.get("q", 1.0)),
                           scale=complex(params.get("scale", 1.0)), cap=cap)
    if kind == "mobius":
        return MobiusAtom(complex(params["a"]), cap=cap)
    if kind == "blaschke":
        return BlaschkeProduct(tuple(params["zeros"]))
    if kind == "gap":
        return GapSeries(LacunaryCoefficients(np.asarray(params["amps"],
                                                         dtype=np.complex128)))
    if kind == "poly":
        return Polynomial(CoefficientSeries(np.asarray(params["coeffs"],
                                                       dtype=np.complex128)))
    if kind == "monomial":
        return Monomial(int(params["n"]))
    if kind == "constant":
        return Constant(complex(params["c"]))
    raise DomainError(f"unknown atom kind: {kind!r}")


# ---------------------------------------------------------------------------
# expression mini-language
# ---------------------------------------------------------------------------
#
# grammar (tokens separated by whitespace):
#   expr   := term (' + ' term)*
#   term   := atom (' * ' atom)*
#   atom   := NAME ':' payload     e.g.  poly:[1,0,2]   fa:a=0.9,p=2
# payloads carry no spaces; complex literals look like 0.5, -0.3i, 0.5+0.25i.

def _parse_complex(text: str, position: int) -> complex:
    t = text.strip()
    if not t:
        raise ParseError("empty number", position, text)
    t = t.replace("I", "i").replace("j", "i")
    # locate a +/- separating real and imaginary parts (not leading, not after e/E)
    split = -1
    for idx in range(1, len(t)):
        if t[idx] in "+-" and t[idx - 1] not in "eE":
            split = idx
    try:
        if t.endswith("i"):
            if split > 0:
                re_part = float(t[:split])
                imag_text = t[split:-1]
                im_part = float(imag_text) if imag_text not in ("+", "-") \
                    else float(imag_text + "1")
            else:
                re_part = 0.0
                body = t[:-1]
                im_part = float(body) if body not in ("", "+", "-") \
                    else float(body + "1")
            return complex(re_part, im_part)
        return complex(float(t), 0.0)
    except ValueError:
        raise ParseError("malformed complex literal", position, text) from None


def _parse_list(payload: str, position: int) -> list:
    if not (payload.startswith("[") and payload.endswith("]")):
        raise ParseError("expected a bracketed list", position, payload)
    inner = payload[1:-1]
    if not inner:
        raise ParseError("empty list", position, payload)
    return [_parse_complex(item, position) for item in inner.split(",")]


def _parse_kv(payload: str, position: int) -> dict:
    out = {}
    for item in payload.split(","):
        if "=" not in item:
            raise ParseError("expected key=value", position, item)
        key, val = item.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def _parse_atom(token: str, position: int) -> FunctionExpr:
    if ":" not in token:
        raise ParseError("expected name:payload", position, token)
    name, payload = token.split(":", 1)
    name = name.lower()
    try:
        if name == "poly":
            return make_atom("poly", coeffs=_parse_list(payload, position))
        if name == "blaschke":
            return make_atom("blaschke", zeros=_parse_list(payload, position))
        if name == "gap":
            return make_atom("gap", amps=_parse_list(payload, position))
        kv = _parse_kv(payload, position)
        cap = float(kv.get("cap", MAX_PARAM_MODULUS))
        if name == "fa":
            return make_atom("fa", a=_parse_complex(kv["a"], position),
                             p=float(kv["p"]), cap=cap)
        if name == "ha":
            return make_atom("ha", a=_parse_complex(kv["a"], position), cap=cap)
        if name == "fp":
            return make_atom("fp", p=float(kv["p"]), depth=int(kv["depth"]))
        if name == "log":
            return make_atom(
                "log", a=_parse_complex(kv["a"], position),
                scale=_parse_complex(kv.get("scale", "1"), position),
                offset=float(kv.get("offset", "1")), cap=cap)
        if name == "cauchy":
            return make_atom(
                "cauchy", a=_parse_complex(kv["a"], position),
                q=float(kv.get("q", "1")),
                scale=_parse_complex(kv.get("scale", "1"), position), cap=cap)
        if name == "mobius":
            return make_atom("mobius", a=_parse_complex(kv["a"], position),
                             cap=cap)
        if name == "monomial":
            return make_atom("monomial", n=int(kv["n"]))
        if name == "constant":
            return make_atom("constant", c=_parse_complex(kv["c"], position))
    except ParseError:
        raise
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}", position, token) from None
    except (ValueError, DomainError) as exc:
        raise ParseError(str(exc), position, token) from None
    raise ParseError("unknown atom name", position, name)


def parse_expr(text: str) -> FunctionExpr:
    """Parse the whitespace-separated expression mini-language.

    Example: 'fa:a=0.9,p=2 * poly:[1,1] + mobius:a=0.5+0.25i'
    ('*' binds tighter than '+').
    """
    raw = text.strip()
    if not raw:
        raise ParseError("empty expression", 0, "")
    tokens = []
    pos = 0
    for piece in raw.split():
        position = text.find(piece, pos)
        tokens.append((piece, position))
        pos = position + len(piece)

    terms: list[FunctionExpr] = []
    current: list[FunctionExpr] = []
    expect_atom = True
    for piece, position in tokens:
        if expect_atom:
            if piece in ("+", "*"):
                raise ParseError("expected an atom, found an operator",
                                 position, piece)
            current.append(_parse_atom(piece, position))
            expect_atom = False
        else:
            if piece == "*":
                expect_atom = True
            elif piece == "+":
                terms.append(current[0] if len(current) == 1
                             else ProductExpr(tuple(current)))
                current = []
                expect_atom = True
            else:
                raise ParseError("expected '+' or '*' between atoms",
                                 position, piece)
    if expect_atom:
        last = tokens[-1]
        raise ParseError("expression ends with a dangling operator",
                         last[1], last[0])
    terms.append(current[0] if len(current) == 1 else ProductExpr(tuple(current)))
    return terms[0] if len(terms) == 1 else SumExpr(tuple(terms))
