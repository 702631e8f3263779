"""Minimal Laplacian -d^2/dx^2 on (0,1): the deficiency-index-2 example.

The minimally defined operator has m(S) = pi^2, ker S* = span{1, x}, and
V = span{1 - 2x}.  The extensions that keep the Friedrichs bottom are the
operators with boundary condition

    g(0) + g(1) = 0,    g'(0) + g'(1) = b g(0),    b >= 0,

with the dictionary t = 3 b + 12 to the scalar extension parameter.  The
non-common eigenvalues of the b-family are the roots of the secular
function F(lambda) = t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List

import numpy as np

from .numerics import Bracket, DomainError, QuadratureRule, bisect, integrate
from .kvb import DeficiencyModel

M_S = math.pi ** 2


class PoleError(ArithmeticError):
    """Evaluation too close to a genuine singularity of F."""


class SearchError(RuntimeError):
    """A bracket scan exhausted its budget."""


class ConvergenceError(ArithmeticError):
    """Eigenfunction-series truncation misses the tail tolerance."""


class PreconditionError(ValueError):
    """A sampled function violates a required boundary condition."""


@dataclass(frozen=True)
class BoundaryCondition:
    """One of the four self-adjointness classes for H^2(0,1) restrictions.

    two-dim:   g'(0) = b1 g(0) + c g(1),  g'(1) = -conj(c) g(0) - b2 g(1)
    one-dim-a: g'(0) = b1 g(0) + conj(c) g'(1),  g(1) = c g(0)
    one-dim-b: g'(1) = -b1 g(1),  g(0) = 0
    dirichlet: g(0) = 0 = g(1)
    """

    variant: str
    b1: float = 0.0
    b2: float = 0.0
    c: complex = 0.0

    @classmethod
    def two_dim(cls, b1: float, b2: float, c: complex) -> "BoundaryCondition":
        return cls("two-dim", b1=b1, b2=b2, c=c)

    @classmethod
    def one_dim_a(cls, b1: float, c: complex) -> "BoundaryCondition":
        return cls("one-dim-a", b1=b1, c=c)

    @classmethod
    def one_dim_b(cls, b1: float) -> "BoundaryCondition":
        return cls("one-dim-b", b1=b1)

    @classmethod
    def dirichlet(cls) -> "BoundaryCondition":
        return cls("dirichlet")


@dataclass(frozen=True)
class SecularFunction:
    """F at a fixed extension level t; roots of F = t are eigenvalues."""

    t: float

    def shifted(self, lam: float) -> float:
        return secular_F(lam) - self.t


@dataclass(frozen=True)
class IntervalSpectrum:
    """Eigenvalues below the cutoff, split into the common sin family and
    the t-dependent secular roots."""

    sin_family: List[float]
    secular_roots: List[float]
    bottom: float


def sf_inverse_on_kernel(a: complex, b: complex) -> np.ndarray:
    """Cubic coefficients (ascending) of S_F^{-1}(a + b x)."""
    return np.array([0.0, a / 2.0 + b / 6.0, -a / 2.0, -b / 6.0])


def resolvent_at_bottom() -> Callable[[float], float]:
    """(S_F - pi^2)^{-1} applied to 1 - 2x; the minimal-norm solution."""
    return lambda x: (math.cos(math.pi * x) - 1.0 + 2.0 * x) / M_S


def _gram_from_quadrature() -> np.ndarray:
    rule = QuadratureRule.gauss(panels=8, nodes=10)
    basis = [lambda x: 1.0, lambda x: x]
    g = np.empty((2, 2))
    for i, ui in enumerate(basis):
        for j, uj in enumerate(basis):
            g[i, j] = integrate(lambda x: ui(x) * uj(x), 0.0, 1.0, rule)
    return 0.5 * (g + g.T)


def even_mode_coefficient(n: int) -> float:
    """<1 - 2x, sqrt(2) sin(n pi x)>: 2 sqrt(2)/(n pi) for even n, 0 odd."""
    if n % 2 == 1:
        return 0.0
    return 2.0 * math.sqrt(2.0) / (n * math.pi)


@lru_cache(maxsize=8)
def deficiency_model(terms: int = 10_000, tail_tol: float = 1e-8) -> DeficiencyModel:
    """Model with basis {1, x}, V spanned by 1 - 2x, and the weighted Gram
    entry evaluated by the even-mode eigenfunction series."""
    n = np.arange(2, 2 * terms + 1, 2, dtype=float)
    c2 = 8.0 / (n * n * math.pi ** 2)  # squared series coefficients
    n_max = n[-1]
    # terms decay like 8/(pi^4 n^4); integral comparison bound for the tail
    tail_bound = 8.0 / (3.0 * math.pi ** 4 * (n_max - 1) ** 3)

    def weighted_gram(mu: float) -> np.ndarray:
        if mu > M_S + 1e-12:
            raise DomainError(f"weighted_gram needs mu <= m(S) = {M_S}")
        if tail_bound > tail_tol:
            raise ConvergenceError(
                f"series tail bound {tail_bound:.3e} exceeds {tail_tol:.3e}")
        value = float(np.sum(c2 / (n * n * math.pi ** 2 - mu)))
        return np.array([[value]])

    return DeficiencyModel(
        m_S=M_S,
        dim=2,
        gram=_gram_from_quadrature(),
        V_basis=np.array([[1.0], [-2.0]]),
        weighted_gram=weighted_gram,
    )


def b_to_t(b: float) -> float:
    return 3.0 * b + 12.0


def t_to_b(t: float) -> float:
    return (t - 12.0) / 3.0


def secular_F(lam: float) -> float:
    """F(lambda) in the cot form 12 - 6 sqrt(l) cot(sqrt(l)/2).

    Genuine singularities sit at 4 n^2 pi^2, n >= 1; the removable ones of
    the (1 + cos)/sin form are absent.  Hyperbolic branch for lambda < 0,
    continuous limit F(0) = 0.
    """
    if lam > 0.0:
        s = math.sqrt(lam)
        k = round(s / (2.0 * math.pi))
        if k >= 1 and abs(lam - (2.0 * k * math.pi) ** 2) < 1e-9:
            raise PoleError(f"lambda = {lam} is within 1e-9 of a singularity")
        # cot(x) = -tan(x - (n + 1/2) pi): the phase reduction makes the
        # zeros at half-integer multiples of pi (lambda = odd squares) exact
        x = 0.5 * s
        n = round(x / math.pi - 0.5)
        cot = -math.tan(x - (n + 0.5) * math.pi)
        return 12.0 - 6.0 * s * cot
    if lam == 0.0:
        return 0.0
    kappa = math.sqrt(-lam)
    return 12.0 - 6.0 * kappa / math.tanh(0.5 * kappa)


def _singularity(k: int) -> float:
    return (2.0 * k * math.pi) ** 2


def _root_in_first_interval(t: float, tol: float = 1e-12) -> float:
    delta = 1e-6
    hi = _singularity(1) - delta
    while secular_F(hi) <= t:
        delta /= 10.0
        if delta < 2e-9:
            raise SearchError("cannot bracket below the first singularity")
        hi = _singularity(1) - delta
    lo = -1.0
    while secular_F(lo) >= t:
        lo *= 4.0
        if lo < -1e12:
            raise SearchError("negative-branch bracket scan exhausted")
    f = SecularFunction(t).shifted
    return bisect(f, Bracket.from_function(f, lo, hi), tol)


def _root_in_interval(k: int, t: float, tol: float = 1e-12) -> float:
    a, b = _singularity(k), _singularity(k + 1)
    f = SecularFunction(t).shifted
    delta = 1e-6
    while True:
        lo, hi = a + delta, b - delta
        if f(lo) < 0.0 < f(hi):
            return bisect(f, Bracket(lo, hi, f(lo), f(hi)), tol)
        delta /= 10.0
        if delta < 2e-9:
            raise SearchError(f"cannot bracket F = {t} in ({a}, {b})")


def spectrum(t: float, cutoff: float = 200.0) -> IntervalSpectrum:
    """Eigenvalues of the extension at level t up to the cutoff."""
    if not cutoff > 0:
        raise DomainError("cutoff must be positive")
    sin_family = []
    n = 0
    while (2 * n + 1) ** 2 * math.pi ** 2 <= cutoff:
        sin_family.append((2 * n + 1) ** 2 * math.pi ** 2)
        n += 1
    first_root = _root_in_first_interval(t)
    roots = [first_root] if first_root <= cutoff else []
    k = 1
    while _singularity(k) < cutoff:
        root = _root_in_interval(k, t)
        if root <= cutoff:
            roots.append(root)
        k += 1
    bottom = min(math.pi ** 2, first_root)
    return IntervalSpectrum(sin_family=sin_family, secular_roots=roots, bottom=bottom)


@dataclass(frozen=True)
class Classification:
    top: bool
    t: float
    margin: float


def classify(b: float) -> Classification:
    """Top iff b >= 0, i.e. t = 3b + 12 >= t_q = 12."""
    return Classification(top=b >= 0.0, t=b_to_t(b), margin=b)


def named_extension_spectrum(name: str, cutoff: float = 200.0) -> IntervalSpectrum:
    """Closed-form spectra of the periodic, anti-periodic, and Dirichlet
    extensions.  Bottoms: 0, pi^2, pi^2."""
    odd = []
    n = 0
    while (2 * n + 1) ** 2 * math.pi ** 2 <= cutoff:
        odd.append((2 * n + 1) ** 2 * math.pi ** 2)
        n += 1
    if name == "Periodic":
        rest = [v for v in ((2 * n) ** 2 * math.pi ** 2 for n in range(0, 1000))
                if v <= cutoff]
        bottom = 0.0
    elif name == "AntiPeriodic":
        rest = list(odd)  # each odd square is doubly degenerate
        bottom = math.pi ** 2
    elif name == "Dirichlet":
        rest = [v for v in ((2 * n) ** 2 * math.pi ** 2 for n in range(1, 1000))
                if v <= cutoff]
        bottom = math.pi ** 2
    else:
        raise DomainError(f"unknown named extension {name!r}")
    return IntervalSpectrum(sin_family=odd, secular_roots=sorted(rest), bottom=bottom)


def domain_vector(t: float, alpha: complex, beta: complex) -> np.ndarray:
    """Ascending cubic coefficients of the explicit polynomial part g - f
    of a domain element, for the parameter level t."""
    return np.array([
        alpha,
        (t * alpha + 3.0 * beta) / 6.0 - 2.0 * alpha,
        -(t * alpha + beta) / 2.0,
        t * alpha / 3.0,
    ])


def poly_value(coeffs: np.ndarray, x: float) -> complex:
    return sum(c * x ** k for k, c in enumerate(coeffs))


def poly_derivative(coeffs: np.ndarray, x: float) -> complex:
    return sum(k * c * x ** (k - 1) for k, c in enumerate(coeffs) if k >= 1)


def form_value_direct(g: Callable[[float], float], gprime: Callable[[float], float],
                      b: float, rule: QuadratureRule | None = None,
                      bc_tol: float = 1e-8) -> float:
    """Quadratic form int |g'|^2 + b |g(0)|^2 by quadrature, for g obeying
    g(0) + g(1) = 0 and g'(0) + g'(1) = b g(0) within bc_tol."""
    if abs(g(0.0) + g(1.0)) > bc_tol:
        raise PreconditionError("g(0) + g(1) = 0 violated")
    if abs(gprime(0.0) + gprime(1.0) - b * g(0.0)) > bc_tol:
        raise PreconditionError("g'(0) + g'(1) = b g(0) violated")
    rule = rule or QuadratureRule.gauss(panels=64, nodes=10)
    return integrate(lambda x: abs(gprime(x)) ** 2, 0.0, 1.0, rule) + b * abs(g(0.0)) ** 2
