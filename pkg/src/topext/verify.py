"""Full verification matrix: analytic claims against oracles.

Each case produces one Report record; `run` returns the sorted list.  The
CLI `verify` command emits them and fails (exit 1) when any case fails.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict
from typing import Dict, List, Optional

import numpy as np

from . import coulomb, fem, interval, kvb, point
from .numerics import QuadratureRule, integrate

PI2 = math.pi ** 2

# tolerances of the acceptance matrix
TQ_TOL = 1e-6
QV_TOL = 1e-8
ROOT_TOL = 1e-10
ORACLE_REL_TOL = 5e-3
PERIODIC_ABS_TOL = 1e-8
ORDER_WINDOW = 0.2
SUP_REL_TOL = 1e-12
COULOMB_LIMIT_TOL = 1e-4
COULOMB_RESIDUAL_TOL = 1e-10

CLASSIFY_BS = (-4.0, -1.0, -0.25, 0.0, 0.5, 5.0, 50.0)


@dataclass
class Report:
    case: str
    example: str
    parameters: Dict[str, float] = field(default_factory=dict)
    m_S: Optional[float] = None
    t_q: Optional[float] = None
    classification: str = ""
    bottom_analytic: Optional[float] = None
    bottom_oracle: Optional[float] = None
    abs_error: Optional[float] = None
    passed: bool = True
    detail: str = ""

    def to_record(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_record(cls, line: str) -> "Report":
        return cls(**json.loads(line))


def _oracle_close(analytic: float, discrete: float) -> bool:
    return abs(discrete - analytic) <= ORACLE_REL_TOL * max(abs(analytic), 1.0)


def case_interval_tq(terms: int = 10_000) -> Report:
    model = interval.deficiency_model(terms)
    tq = kvb.build_q(model)
    # independent route to q[v]: closed-form resolvent plus quadrature
    res = interval.resolvent_at_bottom()
    rule = QuadratureRule.gauss(panels=64, nodes=10)
    inner = integrate(lambda x: (1.0 - 2.0 * x) * res(x), 0.0, 1.0, rule)
    norm2 = integrate(lambda x: (1.0 - 2.0 * x) ** 2, 0.0, 1.0, rule)
    q_v = float(PI2 * norm2 + PI2 ** 2 * inner)
    ok = abs(tq.t_q_scalar - 12.0) <= TQ_TOL and abs(q_v - 4.0) <= QV_TOL
    return Report(
        case="interval-tq", example="interval",
        parameters={"terms": terms}, m_S=PI2, t_q=tq.t_q_scalar,
        classification="Top", bottom_analytic=PI2, passed=ok,
        detail=f"t_q={tq.t_q_scalar!r} q[v]={q_v!r}")


def case_point_tq() -> Report:
    model = point.deficiency_model_point()
    tq = kvb.build_q(model)
    gram = float(model.gram[0, 0])
    reg = float(model.weighted_gram(1.0)[0, 0])
    ok = (abs(tq.t_q_scalar - 2.0) <= TQ_TOL
          and abs(gram - PI2) <= QV_TOL
          and abs(reg - PI2) <= QV_TOL)
    return Report(
        case="point-tq", example="point", m_S=1.0, t_q=tq.t_q_scalar,
        classification="Top", bottom_analytic=0.0, passed=ok,
        detail=f"t_q={tq.t_q_scalar!r} |G1|^2={gram!r} reg={reg!r}")


def case_interval_secular() -> Report:
    f_at_pi2 = interval.secular_F(PI2)
    root = interval.spectrum(12.0, cutoff=50.0).secular_roots[0]
    ok = f_at_pi2 == 12.0 and abs(root - PI2) <= ROOT_TOL
    return Report(
        case="interval-secular", example="interval", m_S=PI2,
        classification="Top", bottom_analytic=PI2, passed=ok,
        detail=f"F(pi^2)={f_at_pi2!r} root={root!r}")


def cases_interval_classify(grid: int) -> List[Report]:
    reports = []
    for b in CLASSIFY_BS:
        cls = interval.classify(b)
        analytic = interval.spectrum(cls.t, cutoff=200.0).bottom
        discrete = fem.discrete_bottom(grid, fem.AntiPeriodicRobin(b))
        ok = _oracle_close(analytic, discrete) and cls.top == (b >= 0.0)
        if b < 0:
            ok = ok and discrete < PI2
        reports.append(Report(
            case=f"interval-classify-b={b:g}", example="interval",
            parameters={"b": b, "grid": grid}, m_S=PI2, t_q=12.0,
            classification="Top" if cls.top else "NotTop",
            bottom_analytic=analytic, bottom_oracle=discrete,
            abs_error=abs(discrete - analytic), passed=ok))
    return reports


def cases_named_spectra(grid: int) -> List[Report]:
    specs = [
        ("Dirichlet", interval.BoundaryCondition.dirichlet(), PI2, ORACLE_REL_TOL * PI2),
        ("Periodic", fem.Periodic(), 0.0, PERIODIC_ABS_TOL),
        ("AntiPeriodic", fem.AntiPeriodicRobin(0.0), PI2, ORACLE_REL_TOL * PI2),
    ]
    reports = []
    for name, bc, analytic, tol in specs:
        discrete = fem.discrete_bottom(grid, bc)
        err = abs(discrete - analytic)
        reports.append(Report(
            case=f"named-{name.lower()}", example="interval",
            parameters={"grid": grid}, m_S=PI2,
            classification="Friedrichs" if name == "Dirichlet"
            else ("Top" if analytic == PI2 else "NotTop"),
            bottom_analytic=analytic, bottom_oracle=discrete,
            abs_error=err, passed=err <= tol))
    return reports


def cases_convergence() -> List[Report]:
    reports = []
    for name, bc, analytic in [
        ("dirichlet", interval.BoundaryCondition.dirichlet(), PI2),
        ("antiperiodic", fem.AntiPeriodicRobin(0.0), PI2),
    ]:
        e_500 = abs(fem.discrete_bottom(500, bc) - analytic)
        e_1000 = abs(fem.discrete_bottom(1000, bc) - analytic)
        order = math.log2(e_500 / e_1000)
        ok = abs(order - 2.0) <= ORDER_WINDOW
        reports.append(Report(
            case=f"convergence-{name}", example="interval",
            parameters={"grids": 500.0, "order": order}, m_S=PI2,
            classification="Top", bottom_analytic=analytic, passed=ok,
            detail=f"order={order!r}"))
    return reports


def case_variational(matrices: int = 200, samples: int = 500, dim: int = 5,
                     seed: int = 1234) -> Report:
    rng = np.random.default_rng(seed)
    worst = 0.0
    ok = True
    for i in range(matrices):
        B = rng.standard_normal((dim, dim))
        A = B @ B.T + dim * np.eye(dim)
        h = rng.standard_normal(dim)
        sup, closed = kvb.variational_sup_check(A, h, samples=samples, seed=seed + i)
        excess = (sup - closed) / closed
        worst = max(worst, excess)
        if excess > SUP_REL_TOL:
            ok = False
    return Report(
        case="variational-sup", example="abstract",
        parameters={"matrices": matrices, "samples": samples},
        passed=ok, detail=f"worst relative excess {worst!r}")


def interval_t_grid_bottoms():
    ts = np.linspace(-50.0, 300.0, 50)
    bottoms = [interval.spectrum(float(t), cutoff=200.0).bottom for t in ts]
    return ts, bottoms


def case_ordering() -> Report:
    ts, bottoms = interval_t_grid_bottoms()
    monotone = all(b2 >= b1 - 1e-9 for b1, b2 in zip(bottoms, bottoms[1:]))
    ok = monotone
    for model, m_S in [(interval.deficiency_model(), PI2),
                       (point.deficiency_model_point(), 1.0)]:
        mus = np.linspace(0.0, m_S, 20)
        vals = [float(model.weighted_gram(float(mu))[0, 0]) for mu in mus]
        ok = ok and all(v2 >= v1 - 1e-12 for v1, v2 in zip(vals, vals[1:]))
    return Report(
        case="ordering-monotonicity", example="abstract", passed=ok,
        detail="spectrum bottom nondecreasing in t; weighted_gram nondecreasing in mu")


def case_krein() -> Report:
    ts, bottoms = interval_t_grid_bottoms()
    ok = True
    for t, bottom in zip(ts, bottoms):
        if t <= 0:
            continue
        lower = kvb.krein_bound(PI2, float(t))
        if not (lower - 1e-9 <= bottom <= t + 1e-9):
            ok = False
    return Report(
        case="krein-bound", example="interval", m_S=PI2, passed=ok,
        detail="krein_bound(pi^2, t) <= bottom(S_t) <= t on the positive t grid")


def cases_point() -> List[Report]:
    reports = []
    for alpha in (-1.0, -1.0 / (4 * math.pi), -1e-3, 0.0, 1.0):
        expected = -(4.0 * math.pi * alpha) ** 2 if alpha < 0 else None
        spec = point.point_spectrum(alpha)
        ok = spec.eigenvalue == expected
        reports.append(Report(
            case=f"point-spectrum-alpha={alpha:g}", example="point",
            parameters={"alpha": alpha}, m_S=1.0,
            classification="Top" if alpha >= 0 else "NotTop",
            bottom_analytic=spec.bottom, passed=ok))
    # classify agreement with the abstract criterion on an alpha grid
    model = point.deficiency_model_point()
    tq = kvb.build_q(model)
    agree = True
    for alpha in np.linspace(-1.0, 1.0, 21):
        T = point.extension_parameter(float(alpha))
        if kvb.is_top_extension(T, tq) != point.classify_point(float(alpha)).top:
            agree = False
    reports.append(Report(
        case="point-classify-grid", example="point", m_S=1.0, t_q=tq.t_q_scalar,
        passed=agree, detail="classify_point == is_top_extension on 21 alphas"))
    return reports


def cases_coulomb() -> List[Report]:
    reports = []
    limit_ok = True
    worst = 0.0
    for nu in (0.5, 1.0, 2.0, 5.0):
        gap = abs(coulomb.script_F(nu, -1e-10) - coulomb.alpha_threshold(nu))
        worst = max(worst, gap)
        if gap > COULOMB_LIMIT_TOL:
            limit_ok = False
    reports.append(Report(
        case="coulomb-threshold-limit", example="coulomb", passed=limit_ok,
        detail=f"worst |F(-1e-10) - alpha_nu| = {worst!r}"))

    pairs = [(nu, coulomb.alpha_threshold(nu) - d)
             for nu in (0.5, 1.0, 2.0, 5.0, 10.0) for d in (0.1, 1.0)]
    root_ok = True
    for nu, alpha in pairs:
        E = coulomb.coulomb_eigenvalue(nu, alpha)
        resid = abs(coulomb.script_F(nu, E) - alpha)
        if E is None or resid > COULOMB_RESIDUAL_TOL:
            root_ok = False
        if coulomb.count_sign_changes(nu, alpha) != 1:
            root_ok = False
    for nu in (0.5, 1.0, 2.0):
        if coulomb.coulomb_eigenvalue(nu, coulomb.alpha_threshold(nu)) is not None:
            root_ok = False
        if coulomb.coulomb_eigenvalue(nu, 1e6) is not None:
            root_ok = False
    reports.append(Report(
        case="coulomb-roots", example="coulomb", passed=root_ok,
        detail="10 below-threshold pairs: residual <= 1e-10, unique sign change; "
               "no root at or above threshold"))
    return reports


def run(grid: int = 2000, only: Optional[str] = None) -> List[Report]:
    """Run the verification matrix, optionally filtered to one example."""
    reports: List[Report] = []
    reports.append(case_interval_tq())
    reports.append(case_point_tq())
    reports.append(case_interval_secular())
    reports.extend(cases_interval_classify(grid))
    reports.extend(cases_named_spectra(grid))
    reports.extend(cases_convergence())
    reports.append(case_variational())
    reports.append(case_ordering())
    reports.append(case_krein())
    reports.extend(cases_point())
    reports.extend(cases_coulomb())
    if only is not None:
        reports = [r for r in reports if r.example == only or r.case.startswith(only)]
    return sorted(reports, key=lambda r: r.case)
