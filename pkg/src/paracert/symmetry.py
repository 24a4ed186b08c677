"""Gaussian symmetry algebra for the two reflected paraboloid extensions.

The extension operators are

    E+ f(t, x) = INT exp(i(t|xi|^2 + x.xi)) f(xi) dxi      (sign +1)
    E- f(t, x) = INT exp(i(-t|xi|^2 + x.xi)) f(xi) dxi     (sign -1)

Generalized Gaussians exp(-a|xi|^2 + b.xi + c) with Re a > 0 are closed
under both the frequency-side symmetries and the extensions, everything
in exact closed form, so group laws and intertwining identities can be
checked pointwise to near machine precision.

Products of complex vectors here are plain bilinear sums (no conjugate):
v.w = sum v_j w_j, and |v|^2 always means sum v_j^2 of the possibly
complex entries when it appears inside analytic continuations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

__all__ = [
    "GeneralizedGaussian",
    "SymmetryParams",
    "SpacetimeSymmetry",
    "CrossAction",
    "ParamSequencePair",
    "OrthogonalityReport",
    "CheckRow",
    "SuiteReport",
    "apply_symmetry",
    "extension_of_gaussian",
    "reflect",
    "compose",
    "inverse",
    "cross_phase",
    "classify_orthogonality",
    "random_gaussian",
    "random_params",
    "run_property_suite",
]

Vector = tuple[float, ...]
CVector = tuple[complex, ...]


def _dot(u: Sequence[complex], v: Sequence[complex]) -> complex:
    return sum(a * b for a, b in zip(u, v, strict=True))


def _sumsq(u: Sequence[complex]) -> complex:
    return sum(a * a for a in u)


def _norm(u: Sequence[float]) -> float:
    return math.hypot(*u) if u else 0.0


@dataclass(frozen=True)
class GeneralizedGaussian:
    """xi -> exp(-a |xi|^2 + b . xi + c) with Re a > 0."""

    a: complex
    b: CVector
    c: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", tuple(complex(v) for v in self.b))
        object.__setattr__(self, "c", complex(self.c))
        if not self.a.real > 0:
            raise ValueError(f"need Re a > 0, got a = {self.a}")

    @property
    def d(self) -> int:
        return len(self.b)

    @classmethod
    def standard(cls, d: int) -> "GeneralizedGaussian":
        return cls(1.0, (0.0,) * d, 0.0)

    def __call__(self, xi: Sequence[float]) -> complex:
        xi = tuple(xi)
        return cmath.exp(-self.a * _sumsq(xi) + _dot(self.b, xi) + self.c)


@dataclass(frozen=True)
class SymmetryParams:
    """Frequency-side symmetry in canonical order (scaling, modulation, shift).

    sign +1 acts by lam^(d/p) e^(i( t0|lam xi - xi0|^2 + x0.(lam xi - xi0) ))
    f(lam xi - xi0); sign -1 flips the sign of the quadratic phase (the
    time translation enters with -t0).
    """

    sign: int
    lam: float
    t0: float
    x0: Vector
    xi: Vector
    p: Fraction = Fraction(2)

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self.lam > 0:
            raise ValueError("scaling must be positive")
        object.__setattr__(self, "x0", tuple(float(v) for v in self.x0))
        object.__setattr__(self, "xi", tuple(float(v) for v in self.xi))
        if len(self.x0) != len(self.xi):
            raise ValueError("x0 and xi dimensions differ")
        object.__setattr__(self, "p", Fraction(self.p))

    @property
    def d(self) -> int:
        return len(self.x0)

    @property
    def q(self) -> Fraction:
        p_prime = self.p / (self.p - 1)
        return Fraction(self.d + 2, self.d) * p_prime

    @classmethod
    def identity(cls, d: int, sign: int = +1) -> "SymmetryParams":
        return cls(sign, 1.0, 0.0, (0.0,) * d, (0.0,) * d)


def apply_symmetry(s: SymmetryParams, g: GeneralizedGaussian) -> GeneralizedGaussian:
    """Closed-form action of a symmetry on a generalized Gaussian."""
    if s.d != g.d:
        raise ValueError("dimension mismatch")
    ae = g.a - 1j * s.sign * s.t0
    lam = s.lam
    a_new = lam * lam * ae
    b_new = tuple(
        2 * lam * ae * s.xi[j] + lam * (g.b[j] + 1j * s.x0[j]) for j in range(s.d)
    )
    c_new = (
        g.c
        - ae * _sumsq(s.xi)
        - _dot([g.b[j] + 1j * s.x0[j] for j in range(s.d)], s.xi)
        + (s.d / float(s.p)) * math.log(lam)
    )
    return GeneralizedGaussian(a_new, b_new, c_new)


def extension_of_gaussian(
    g: GeneralizedGaussian, sign: int, t: float, x: Sequence[float]
) -> complex:
    """E(+/-) of a generalized Gaussian, evaluated exactly.

    With z = a - i*sign*t (Re z = Re a > 0 so the principal branch is
    safe) the frequency integral collapses to

        (pi/z)^(d/2) * exp( sum_j (b_j + i x_j)^2 / (4z) + c ).
    """
    x = tuple(x)
    if len(x) != g.d:
        raise ValueError("dimension mismatch")
    z = g.a - 1j * sign * t
    shifted = tuple(g.b[j] + 1j * x[j] for j in range(g.d))
    return (math.pi / z) ** (g.d / 2) * cmath.exp(_sumsq(shifted) / (4 * z) + g.c)


def reflect(g: GeneralizedGaussian) -> GeneralizedGaussian:
    """g~(xi) = conj(g(-xi)): conjugate a and c, conjugate and negate b."""
    return GeneralizedGaussian(
        g.a.conjugate(), tuple(-v.conjugate() for v in g.b), g.c.conjugate()
    )


def compose(
    s1: SymmetryParams, s2: SymmetryParams
) -> tuple[SymmetryParams, complex]:
    """Canonical parameters and unit phase of s1 after s2 (s1 o s2).

    The canonical family is a group only up to a global unimodular
    phase; that phase is returned as a separate complex factor.
    """
    if s1.sign != s2.sign or s1.d != s2.d or s1.p != s2.p:
        raise ValueError("can only compose symmetries of one family")
    sg = s1.sign
    l2sq = s2.lam * s2.lam
    t_new = s2.t0 + s1.t0 / l2sq
    x_new = tuple(
        s2.x0[j] + s1.x0[j] / s2.lam + 2 * sg * (s1.t0 / l2sq) * s2.xi[j]
        for j in range(s1.d)
    )
    xi_new = tuple(s2.lam * s1.xi[j] + s2.xi[j] for j in range(s1.d))
    params = SymmetryParams(sg, s1.lam * s2.lam, t_new, x_new, xi_new, s1.p)
    phase_arg = sg * (s1.t0 / l2sq) * _sumsq(s2.xi).real + (
        _dot(s1.x0, s2.xi) / s2.lam
    )
    return params, cmath.exp(1j * phase_arg)


def inverse(s: SymmetryParams) -> SymmetryParams:
    """Parameters composing with s to the identity (up to phase)."""
    lam = s.lam
    return SymmetryParams(
        s.sign,
        1.0 / lam,
        -s.t0 * lam * lam,
        tuple(lam * (2 * s.sign * s.t0 * s.xi[j] - s.x0[j]) for j in range(s.d)),
        tuple(-v / lam for v in s.xi),
        s.p,
    )


@dataclass(frozen=True)
class SpacetimeSymmetry:
    """Canonical spacetime-side symmetry matching a frequency-side one.

    sign +1:  T F(t,x) = lam^(-(d+2)/q) e^(i( lam^-2 t |xi|^2 + lam^-1 x.xi ))
              F(lam^-2 t + t0, lam^-1 x + x0 + 2 lam^-2 t xi)
    sign -1 flips the quadratic phase and the drift term.
    """

    sign: int
    lam: float
    t0: float
    x0: Vector
    xi: Vector
    q: Fraction

    @classmethod
    def from_params(cls, s: SymmetryParams) -> "SpacetimeSymmetry":
        return cls(s.sign, s.lam, s.t0, s.x0, s.xi, s.q)

    @property
    def d(self) -> int:
        return len(self.x0)

    def apply_to(self, F: Callable) -> Callable:
        sg, lam, t0, x0, xi = self.sign, self.lam, self.t0, self.x0, self.xi
        scale = lam ** (-(self.d + 2) / float(self.q))
        ilam2 = 1.0 / (lam * lam)
        xi_sq = _sumsq(xi).real

        def out(t: float, x: Sequence[float]) -> complex:
            x = tuple(x)
            phase = sg * ilam2 * t * xi_sq + _dot(x, xi) / lam
            arg_t = ilam2 * t + t0
            arg_x = tuple(
                x[j] / lam + x0[j] + 2 * sg * ilam2 * t * xi[j]
                for j in range(self.d)
            )
            return scale * cmath.exp(1j * phase) * F(arg_t, arg_x)

        return out

    def apply_inverse_to(self, F: Callable) -> Callable:
        sg, lam, t0, x0, xi = self.sign, self.lam, self.t0, self.x0, self.xi
        scale = lam ** ((self.d + 2) / float(self.q))
        xi_sq = _sumsq(xi).real

        def out(t: float, x: Sequence[float]) -> complex:
            x = tuple(x)
            dt = t - t0
            shifted = tuple(
                x[j] - x0[j] - 2 * sg * dt * xi[j] for j in range(self.d)
            )
            phase = sg * dt * xi_sq + _dot(shifted, xi)
            return (
                scale
                * cmath.exp(-1j * phase)
                * F(lam * lam * dt, tuple(lam * v for v in shifted))
            )

        return out


@dataclass(frozen=True)
class CrossAction:
    """Conjugation of an opposite-family symmetry through the first one.

    For s_plus with parameters (lam, t, x, xi) and r_minus with
    (kap, s, y, eta), write rho = kap/lam.  The composed operator
    U^-1 T acts on F by

        rho^((d+2)/q) e^(i Psi(t,x)) F(rho^2 t + dt0, rho x + dx0 + 2 rho^2 (t-s) m)

    with m = xi + eta/rho, dt0 = t0 - rho^2 s0, dx0 = x0 - rho y0 and

        Psi = rho^2 t |m|^2 + rho x.m - 2(t|eta|^2 + x.eta) + theta,

    theta being the constant cross phase.
    """

    d: int
    q: Fraction
    rho: float
    m: Vector  # xi + eta/rho
    eta: Vector
    s0: float
    dt0: float
    dx0: Vector
    theta: float

    def apply_to(self, F: Callable) -> Callable:
        rho, m, eta = self.rho, self.m, self.eta
        scale = rho ** ((self.d + 2) / float(self.q))
        m_sq = _sumsq(m).real
        eta_sq = _sumsq(eta).real

        def out(t: float, x: Sequence[float]) -> complex:
            x = tuple(x)
            psi = (
                rho * rho * t * m_sq
                + rho * _dot(x, m)
                - 2.0 * (t * eta_sq + _dot(x, eta))
                + self.theta
            )
            arg_t = rho * rho * t + self.dt0
            drift = 2.0 * rho * rho * (t - self.s0)
            arg_x = tuple(
                rho * x[j] + self.dx0[j] + drift * m[j] for j in range(self.d)
            )
            return scale * cmath.exp(1j * psi) * F(arg_t, arg_x)

        return out


def cross_phase(
    s_plus: SymmetryParams, r_minus: SymmetryParams
) -> tuple[CrossAction, float]:
    """Constant phase and affine data of U^-1 T for opposite families."""
    if s_plus.sign != +1 or r_minus.sign != -1:
        raise ValueError("expected a (+1, -1) pair in that order")
    if s_plus.d != r_minus.d:
        raise ValueError("dimension mismatch")
    lam, t0, x0, xi = s_plus.lam, s_plus.t0, s_plus.x0, s_plus.xi
    kap, s0, y0, eta = r_minus.lam, r_minus.t0, r_minus.x0, r_minus.xi
    rho = kap / lam
    xi_sq = _sumsq(xi).real
    eta_sq = _sumsq(eta).real
    theta = (
        -rho * rho * xi_sq * s0
        - rho * _dot(y0, xi)
        - 2.0 * rho * s0 * _dot(eta, xi)
        + s0 * eta_sq
        + _dot(y0, eta)
    )
    action = CrossAction(
        d=s_plus.d,
        q=s_plus.q,
        rho=rho,
        m=tuple(xi[j] + eta[j] / rho for j in range(s_plus.d)),
        eta=eta,
        s0=s0,
        dt0=t0 - rho * rho * s0,
        dx0=tuple(x0[j] - rho * y0[j] for j in range(s_plus.d)),
        theta=theta,
    )
    return action, theta


# ---------------------------------------------------------------------------
# Asymptotic orthogonality classifier (heuristic)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParamSequencePair:
    """Two finite parameter sequences standing in for n -> infinity."""

    first: tuple[SymmetryParams, ...]
    second: tuple[SymmetryParams, ...]

    def __post_init__(self):
        object.__setattr__(self, "first", tuple(self.first))
        object.__setattr__(self, "second", tuple(self.second))
        if len(self.first) != len(self.second) or len(self.first) < 3:
            raise ValueError(
                "need two equally long sequences of at least three samples"
            )
        d = self.first[0].d
        for s in self.first + self.second:
            if s.d != d:
                raise ValueError("mixed dimensions in sequence pair")
        for name, seq in (("first", self.first), ("second", self.second)):
            if len({s.sign for s in seq}) != 1:
                raise ValueError(f"{name} sequence mixes symmetry families")

    @property
    def mixed_signs(self) -> bool:
        return self.first[0].sign != self.second[0].sign

    def __len__(self) -> int:
        return len(self.first)


@dataclass(frozen=True)
class OrthogonalityReport:
    condition: int  # 1 scale, 2 frequency, 3 spacetime, 0 none detected
    label: str
    threshold: float
    witnesses: dict[str, tuple[float, ...]]
    heuristic: str = (
        "finite-sample trend test; detects divergence, never certifies its absence"
    )

    @property
    def orthogonal(self) -> bool:
        return self.condition != 0


_COND_LABELS = {
    0: "none",
    1: "scale separation",
    2: "frequency separation",
    3: "spacetime separation",
}


def _witness_row(a: SymmetryParams, b: SymmetryParams, mixed: bool):
    rho = a.lam / b.lam
    w1 = max(rho, 1.0 / rho)
    if mixed:
        w2 = _norm(tuple(rho * b.xi[j] + a.xi[j] for j in range(a.d)))
        w3 = abs(a.t0 - rho * rho * b.t0) + _norm(
            tuple(
                a.x0[j]
                - rho * b.x0[j]
                - 2.0 * rho * b.t0 * (b.xi[j] + rho * a.xi[j])
                for j in range(a.d)
            )
        )
    else:
        w2 = _norm(tuple(rho * b.xi[j] - a.xi[j] for j in range(a.d)))
        w3 = abs(a.t0 - rho * rho * b.t0) + _norm(
            tuple(
                a.x0[j]
                - rho * b.x0[j]
                + 2.0 * rho * b.t0 * (b.xi[j] - rho * a.xi[j])
                for j in range(a.d)
            )
        )
    return w1, w2, w3


def classify_orthogonality(
    pair: ParamSequencePair, threshold: float = 100.0
) -> OrthogonalityReport:
    """Heuristic trend test for the three divergence conditions.

    A condition fires when its witness exceeds the threshold at the last
    index and is nondecreasing over the last three samples.  Conditions
    are tried in order (scale, frequency, spacetime); "none" only means
    no divergence was detected on this finite sample.
    """
    rows = [
        _witness_row(a, b, pair.mixed_signs)
        for a, b in zip(pair.first, pair.second)
    ]
    tail = rows[-3:]
    witnesses = {
        "scale": tuple(r[0] for r in rows),
        "frequency": tuple(r[1] for r in rows),
        "spacetime": tuple(r[2] for r in rows),
    }
    for idx, key in ((1, "scale"), (2, "frequency"), (3, "spacetime")):
        series = [r[idx - 1] for r in tail]
        if series[-1] > threshold and all(
            u <= v for u, v in zip(series, series[1:])
        ):
            return OrthogonalityReport(idx, _COND_LABELS[idx], threshold, witnesses)
    return OrthogonalityReport(0, _COND_LABELS[0], threshold, witnesses)


# ---------------------------------------------------------------------------
# Randomized property suite (shared by the CLI and the test suite)
# ---------------------------------------------------------------------------


def random_gaussian(rng, d: int) -> GeneralizedGaussian:
    """A generic well-conditioned Gaussian for property checks."""
    return GeneralizedGaussian(
        complex(rng.uniform(0.6, 1.8), rng.uniform(-0.8, 0.8)),
        tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(d)),
        complex(rng.uniform(-0.4, 0.4), rng.uniform(-1, 1)),
    )


def random_params(rng, d: int, sign: int) -> SymmetryParams:
    return SymmetryParams(
        sign,
        rng.uniform(0.6, 1.7),
        rng.uniform(-1.5, 1.5),
        tuple(rng.uniform(-1.5, 1.5) for _ in range(d)),
        tuple(rng.uniform(-1.5, 1.5) for _ in range(d)),
    )


@dataclass(frozen=True)
class CheckRow:
    name: str
    cases: int
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_error < self.tolerance

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class SuiteReport:
    seed: int
    rows: tuple[CheckRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "checks": [r.to_json_dict() for r in self.rows],
        }


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / (1.0 + abs(b))


def _direct_action(s: SymmetryParams, g: GeneralizedGaussian, xi: Vector) -> complex:
    """The defining formula, applied literally (the oracle for apply)."""
    u = tuple(s.lam * xi[j] - s.xi[j] for j in range(s.d))
    usq = _sumsq(u).real
    phase = s.sign * s.t0 * usq + _dot(s.x0, u).real
    return s.lam ** (s.d / float(s.p)) * cmath.exp(1j * phase) * g(u)


def run_property_suite(seed: int = 0, cases: int = 100) -> SuiteReport:
    """Randomized verification of every closed-form identity in this module.

    Each check reports its worst relative error over `cases` draws; the
    quadrature-based checks (isometry, extension versus direct numeric
    integration) run fewer draws because each is a full grid pass.
    """
    import random

    import numpy as np

    rng = random.Random(seed)
    rows: list[CheckRow] = []

    # 1. apply against the literal definition
    err = 0.0
    for _ in range(cases):
        d = rng.choice((1, 2))
        s = random_params(rng, d, rng.choice((+1, -1)))
        g = random_gaussian(rng, d)
        h = apply_symmetry(s, g)
        for _ in range(3):
            xi = tuple(rng.uniform(-2, 2) for _ in range(d))
            err = max(err, _rel(h(xi), _direct_action(s, g, xi)))
    rows.append(CheckRow("apply_pointwise", cases, err, 1e-12))

    # 2. intertwining E(Sg) = T(Eg)
    err = 0.0
    for _ in range(cases):
        d = rng.choice((1, 2))
        sign = rng.choice((+1, -1))
        s = random_params(rng, d, sign)
        g = random_gaussian(rng, d)
        h = apply_symmetry(s, g)
        T = SpacetimeSymmetry.from_params(s)
        TEg = T.apply_to(
            lambda t, x, _g=g, _s=sign: extension_of_gaussian(_g, _s, t, x)
        )
        for _ in range(3):
            t = rng.uniform(-2, 2)
            x = tuple(rng.uniform(-2, 2) for _ in range(d))
            err = max(err, _rel(extension_of_gaussian(h, sign, t, x), TEg(t, x)))
    rows.append(CheckRow("intertwining", cases, err, 1e-10))

    # 3. conjugation identity: E-(g) = conj(E+(reflect g))
    err = 0.0
    for _ in range(cases):
        d = rng.choice((1, 2))
        g = random_gaussian(rng, d)
        t = rng.uniform(-2, 2)
        x = tuple(rng.uniform(-2, 2) for _ in range(d))
        v1 = extension_of_gaussian(g, -1, t, x)
        v2 = extension_of_gaussian(reflect(g), +1, t, x).conjugate()
        err = max(err, _rel(v1, v2))
    rows.append(CheckRow("conjugation_identity", cases, err, 1e-12))

    # 4. composition in canonical form, up to the returned phase
    err = 0.0
    for _ in range(cases):
        d = rng.choice((1, 2))
        sign = rng.choice((+1, -1))
        s1 = random_params(rng, d, sign)
        s2 = random_params(rng, d, sign)
        g = random_gaussian(rng, d)
        lhs = apply_symmetry(s1, apply_symmetry(s2, g))
        s12, phase = compose(s1, s2)
        rhs = apply_symmetry(s12, g)
        for _ in range(3):
            xi = tuple(rng.uniform(-2, 2) for _ in range(d))
            err = max(err, _rel(lhs(xi), phase * rhs(xi)))
    rows.append(CheckRow("compose_pointwise", cases, err, 1e-11))

    # 5. inverse composes to the identity parameters
    err = 0.0
    for _ in range(cases):
        d = rng.choice((1, 2))
        s = random_params(rng, d, rng.choice((+1, -1)))
        comp, phase = compose(inverse(s), s)
        err = max(
            err,
            abs(comp.lam - 1.0),
            abs(comp.t0),
            max(abs(v) for v in comp.x0),
            max(abs(v) for v in comp.xi),
            abs(abs(phase) - 1.0),
        )
    rows.append(CheckRow("inverse_roundtrip", cases, err, 1e-12))

    # 6. cross action against direct operator composition
    err = 0.0
    F = lambda t, x: cmath.exp(1j * (0.3 * t - 0.7 * sum(x))) / (
        1 + t * t + sum(v * v for v in x)
    )
    for _ in range(cases):
        d = rng.choice((1, 2))
        sp = random_params(rng, d, +1)
        rm = random_params(rng, d, -1)
        action, _ = cross_phase(sp, rm)
        direct = SpacetimeSymmetry.from_params(rm).apply_inverse_to(
            SpacetimeSymmetry.from_params(sp).apply_to(F)
        )
        via = action.apply_to(F)
        for _ in range(3):
            t = rng.uniform(-2, 2)
            x = tuple(rng.uniform(-2, 2) for _ in range(d))
            err = max(err, _rel(via(t, x), direct(t, x)))
    rows.append(CheckRow("cross_action", cases, err, 1e-10))

    # 7. isometry of the lambda^(d/p) normalization, numeric L^p mass
    quad_cases = cases
    err = 0.0
    for _ in range(quad_cases):
        d = rng.choice((1, 2))
        s = random_params(rng, d, rng.choice((+1, -1)))
        g = random_gaussian(rng, d)
        err = max(
            err,
            abs(_lp_mass(apply_symmetry(s, g), float(s.p), np)
                - _lp_mass(g, float(s.p), np))
            / _lp_mass(g, float(s.p), np),
        )
    rows.append(CheckRow("isometry_quadrature", quad_cases, err, 1e-6))

    # 8. closed-form extension against direct oscillatory quadrature
    err = 0.0
    for _ in range(quad_cases):
        d = rng.choice((1, 2))
        sign = rng.choice((+1, -1))
        g = random_gaussian(rng, d)
        t = rng.uniform(-1.5, 1.5)
        x = tuple(rng.uniform(-2, 2) for _ in range(d))
        exact = extension_of_gaussian(g, sign, t, x)
        err = max(err, abs(_extension_quadrature(g, sign, t, x, np) - exact)
                  / (1.0 + abs(exact)))
    rows.append(CheckRow("extension_quadrature", quad_cases, err, 1e-6))

    return SuiteReport(seed, tuple(rows))


def _lp_mass(g: GeneralizedGaussian, p: float, np) -> float:
    """INT |g|^p by per-axis trapezoid; |g|^p is a separable Gaussian."""
    A = p * g.a.real
    total = math.exp(p * g.c.real)
    for bj in g.b:
        B = p * bj.real
        mu = B / (2 * A)
        sigma = 1.0 / math.sqrt(2 * A)
        grid = np.linspace(mu - 12 * sigma, mu + 12 * sigma, 4001)
        total *= float(
            np.trapezoid(np.exp(-A * grid**2 + B * grid), grid)
        )
    return total


def _extension_quadrature(
    g: GeneralizedGaussian, sign: int, t: float, x: Vector, np
) -> complex:
    """Direct numeric integral of e^(i(sign t |xi|^2 + x.xi)) g(xi).

    Separable across axes since a is isotropic: one oscillatory 1D
    integral per axis, sharing the factor e^c.
    """
    total = cmath.exp(g.c)
    grid = np.linspace(-16.0, 16.0, 40001)
    for j in range(g.d):
        vals = np.exp(
            (1j * sign * t - g.a) * grid**2 + (g.b[j] + 1j * x[j]) * grid
        )
        total *= complex(np.trapezoid(vals, grid))
    return total
