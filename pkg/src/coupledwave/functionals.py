"""Functional extraction and bound verification for solver records.

From a stored radial run this module computes the spatial averages
U = int u dx and V = int v dx with their time derivatives, the weighted
averages U1 = int u Psi dx, V1 = int v Psi dx, U2 = int u_t Psi dx, and
the kernel-weighted functionals

    curlyU(t) = int u_t(t, x) eta_{r1}(t, t, x) dx,
    curlyV(t) = int v(t, x)  eta_{r2}(t, t, x) dx,

then verifies numerically the statements the blow-up proofs rest on:
the data floors U1 >= eps*I1[u0], V1 >= eps*I2[v0], U2 >= eps*I1[u1],
the power-envelope lower bounds for int |v|^q dx and int |u_t|^p dx,
the exact integral representations of curlyU/curlyV in the undamped
case, and the logarithmic seed bounds on the critical curve.

All spatial quadrature is trapezoidal on the solver grid, matching the
scheme's order.  Bound checks fit the (unknown) constants at the window
start and test the claimed shape, not absolute constants.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exponents import Region, classify
from .solver import ProblemSpec, SolutionRecord, radial_grid
from .special import KernelConfig, kernel_nodes, multiplier, phi, surface_area

__all__ = [
    "FunctionalSeries",
    "InitialDataIntegrals",
    "CheckId",
    "BoundCheck",
    "extract",
    "data_integrals",
    "nonlinearity_integrals",
    "check_floor_bounds",
    "check_nonlinearity_bounds",
    "check_fundamental_identity",
    "check_log_seeds",
    "write_series_csv",
    "write_check_report",
]

FLOOR_SLACK = 0.02


@dataclass
class FunctionalSeries:
    """Sampled functional values over a run.

    U, Uprime, V, Vprime are plain spatial integrals; U1, V1, U2 the
    Psi-weighted ones; curlyU, curlyV the kernel-weighted ones with the
    kernel exponents (r1, r2) recorded.
    """

    times: np.ndarray
    U: np.ndarray
    Uprime: np.ndarray
    V: np.ndarray
    Vprime: np.ndarray
    U1: np.ndarray
    V1: np.ndarray
    U2: np.ndarray
    curlyU: np.ndarray
    curlyV: np.ndarray
    r1: float
    r2: float


@dataclass(frozen=True)
class InitialDataIntegrals:
    """Data integrals I_j[f] = (m_j(0)/2) int f Phi dx (eps excluded)."""

    I1_u0: float
    I1_u1: float
    I2_v0: float
    I2_v1: float


class CheckId(Enum):
    U1_FLOOR = "U1Floor"
    V1_FLOOR = "V1Floor"
    U2_FLOOR = "U2Floor"
    NONLIN_Q = "NonlinQ"
    NONLIN_P = "NonlinP"
    CURLY_U_LOG = "CurlyULog"
    CURLY_V_LOG = "CurlyVLog"


@dataclass(frozen=True)
class BoundCheck:
    """Result of one lower-bound shape check.

    min_margin is the minimum over the window of (observed value -
    claimed shape x fitted constant); the check passes when it is
    nonnegative up to the stated numerical slack.
    """

    bound_id: CheckId
    min_margin: float
    window: tuple
    passed: bool


def _radial_weights(record: SolutionRecord) -> np.ndarray:
    dr = record.r[1] - record.r[0]
    w = record.r ** (record.n - 1) * dr
    w[0] *= 0.5
    w[-1] *= 0.5
    return surface_area(record.n) * w


def _check_grids_match(record: SolutionRecord, spec: ProblemSpec) -> None:
    expected = radial_grid(spec)
    if record.r.shape != expected.shape or not np.allclose(record.r, expected):
        raise ValueError("record grid does not match the problem spec grid")


def _diag_kernel_series(record, cfg, profiles):
    """int profile(t) * eta_r(t, t, .) dx for every sample, vectorised.

    eta on the diagonal is a pure lam-integral of exp(-lam(R+t)) *
    Phi(lam rho) lam^r, so Phi on (lam, rho) is precomputed once and the
    t-dependence reduces to per-node exponential factors.
    """
    w = _radial_weights(record)
    lam, wl = kernel_nodes(cfg)
    phi_mat = phi(record.n, np.multiply.outer(lam, record.r))  # (m, M)
    proj = profiles @ (phi_mat * w).T  # (N, m)
    decay = np.exp(-np.multiply.outer(record.times + cfg.R, lam))  # (N, m)
    return (proj * decay) @ wl


def extract(record: SolutionRecord, spec: ProblemSpec, r1: float, r2: float,
            lambda0: float = 1.0, quad_nodes: int = 64) -> FunctionalSeries:
    """Compute all nine functional series from a stored run."""
    if not record.has_profiles:
        raise ValueError("functional extraction needs stored profiles")
    _check_grids_match(record, spec)
    if not (r1 > -1.0 and r2 > -1.0):
        raise ValueError("kernel exponents must satisfy r > -1")
    w = _radial_weights(record)
    decay = np.exp(-record.times)
    phi_row = phi(record.n, record.r)
    wp = phi_row * w
    cfg1 = KernelConfig(r=r1, lambda0=lambda0, R=spec.R, quad_nodes=quad_nodes)
    cfg2 = KernelConfig(r=r2, lambda0=lambda0, R=spec.R, quad_nodes=quad_nodes)
    return FunctionalSeries(
        times=record.times.copy(),
        U=record.u @ w,
        Uprime=record.ut @ w,
        V=record.v @ w,
        Vprime=record.vt @ w,
        U1=decay * (record.u @ wp),
        V1=decay * (record.v @ wp),
        U2=decay * (record.ut @ wp),
        curlyU=_diag_kernel_series(record, cfg1, record.ut),
        curlyV=_diag_kernel_series(record, cfg2, record.v),
        r1=float(r1),
        r2=float(r2),
    )


def data_integrals(spec: ProblemSpec) -> InitialDataIntegrals:
    """Quadrature of I_j[f] for the four data profiles (without eps)."""
    r = radial_grid(spec)
    dr = r[1] - r[0]
    w = r ** (spec.n - 1) * dr
    w[0] *= 0.5
    w[-1] *= 0.5
    w = surface_area(spec.n) * w * phi(spec.n, r)
    bump = spec.data.profile(r, spec.R)
    base = float(bump @ w)
    m1 = float(multiplier(spec.b1, 0.0))
    m2 = float(multiplier(spec.b2, 0.0))
    return InitialDataIntegrals(
        I1_u0=0.5 * m1 * spec.data.a_u0 * base,
        I1_u1=0.5 * m1 * spec.data.a_u1 * base,
        I2_v0=0.5 * m2 * spec.data.a_v0 * base,
        I2_v1=0.5 * m2 * spec.data.a_v1 * base,
    )


def nonlinearity_integrals(record: SolutionRecord, spec: ProblemSpec):
    """Series int |v|^q dx and int |u_t|^p dx on the record samples."""
    if not record.has_profiles:
        raise ValueError("nonlinearity integrals need stored profiles")
    w = _radial_weights(record)
    nl_q = np.abs(record.v) ** spec.pq.q @ w
    nl_p = np.abs(record.ut) ** spec.pq.p @ w
    return nl_q, nl_p


def _shape_check(check_id, times, observed, shape, window_mask, rel_slack):
    idx = np.nonzero(window_mask)[0]
    if idx.size < 2:
        raise ValueError(f"empty check window for {check_id.value}")
    i0 = idx[0]
    const = observed[i0] / shape[i0]
    margins = observed[idx] - const * shape[idx]
    min_margin = float(margins.min())
    # rel_slack loosens the fitted (maximal) constant by a small factor
    slacked = observed[idx] - (1.0 - rel_slack) * const * shape[idx]
    tol = 1e-12 * abs(float(observed[i0]))
    return BoundCheck(
        bound_id=check_id,
        min_margin=min_margin,
        window=(float(times[i0]), float(times[idx[-1]])),
        passed=bool(float(slacked.min()) >= -tol),
    )


def check_floor_bounds(series: FunctionalSeries, integrals: InitialDataIntegrals,
                       eps: float, slack: float = FLOOR_SLACK) -> list[BoundCheck]:
    """Verify U1 >= eps I1[u0], V1 >= eps I2[v0], U2 >= eps I1[u1].

    The floors hold at every sample up to blow-up, with a small relative
    slack absorbing discretisation error.
    """
    results = []
    floors = [
        (CheckId.U1_FLOOR, series.U1, eps * integrals.I1_u0),
        (CheckId.V1_FLOOR, series.V1, eps * integrals.I2_v0),
        (CheckId.U2_FLOOR, series.U2, eps * integrals.I1_u1),
    ]
    window = (float(series.times[0]), float(series.times[-1]))
    for cid, observed, floor in floors:
        margins = observed - floor
        min_margin = float(margins.min())
        tol = slack * abs(floor) + 1e-15
        results.append(
            BoundCheck(
                bound_id=cid,
                min_margin=min_margin,
                window=window,
                passed=bool(min_margin >= -tol),
            )
        )
    return results


def check_nonlinearity_bounds(record: SolutionRecord, spec: ProblemSpec,
                              t_start: float = 1.0) -> list[BoundCheck]:
    """Power-envelope checks for the nonlinearity integrals.

    Fits the constant at the window start (t = t_start) and verifies
    that (1+t)^(n-1-(n-1)q/2) (resp. with p) remains a valid lower
    envelope up to the end of the record.
    """
    nl_q, nl_p = nonlinearity_integrals(record, spec)
    n = spec.n
    t = record.times
    mask = t >= t_start
    results = []
    for cid, observed, expo in (
        (CheckId.NONLIN_Q, nl_q, spec.pq.q),
        (CheckId.NONLIN_P, nl_p, spec.pq.p),
    ):
        shape = (1.0 + t) ** (n - 1.0 - 0.5 * (n - 1.0) * expo)
        results.append(_shape_check(cid, t, observed, shape, mask, FLOOR_SLACK))
    return results


def check_fundamental_identity(record: SolutionRecord, spec: ProblemSpec,
                               r1: float, r2: float, checkpoints=None,
                               lambda0: float = 1.0, quad_nodes: int = 64):
    """Residuals of the exact integral representations of curlyU, curlyV.

    Valid for the undamped system only.  Both sides are evaluated at
    checkpoint times; the time integral of the nonlinear source against
    the kernels uses the trapezoid rule over the stored samples.
    Returns the maximum relative residual for each identity.
    """
    if not (spec.b1.is_zero and spec.b2.is_zero):
        raise ValueError("the fundamental identities hold for zero damping only")
    if not record.has_profiles:
        raise ValueError("identity check needs stored profiles")
    _check_grids_match(record, spec)

    times = record.times
    if checkpoints is None:
        picks = np.unique((len(times) - 1) * np.array([0.25, 0.5, 0.75, 1.0]))
        checkpoints = [int(round(i)) for i in picks]
    else:
        checkpoints = [int(np.argmin(np.abs(times - tc))) for tc in checkpoints]

    w = _radial_weights(record)
    r_nodes = record.r
    bump = spec.data.profile(r_nodes, spec.R)
    u0 = spec.eps * spec.data.a_u0 * bump
    u1 = spec.eps * spec.data.a_u1 * bump
    v0 = spec.eps * spec.data.a_v0 * bump
    v1 = spec.eps * spec.data.a_v1 * bump

    cfg1 = KernelConfig(r=r1, lambda0=lambda0, R=spec.R, quad_nodes=quad_nodes)
    cfg1_shift = KernelConfig(r=r1 + 2.0, lambda0=lambda0, R=spec.R, quad_nodes=quad_nodes)
    cfg2 = KernelConfig(r=r2, lambda0=lambda0, R=spec.R, quad_nodes=quad_nodes)

    series = extract(record, spec, r1, r2, lambda0=lambda0, quad_nodes=quad_nodes)
    p, q = spec.pq.p, spec.pq.q

    def lam_projection(cfg, profile_or_matrix):
        lam, wl = kernel_nodes(cfg)
        phi_mat = phi(record.n, np.multiply.outer(lam, r_nodes))  # (m, M)
        proj = (phi_mat * w) @ np.atleast_2d(profile_or_matrix).T  # (m, N) or (m, 1)
        return lam, wl, proj

    lam1s, wl1s, proj_u0 = lam_projection(cfg1_shift, u0)
    lam1, wl1, proj_u1 = lam_projection(cfg1, u1)
    _, _, proj_vq = lam_projection(cfg1, np.abs(record.v) ** q)  # (m, N)
    lam2, wl2, proj_v0 = lam_projection(cfg2, v0)
    _, _, proj_v1 = lam_projection(cfg2, v1)
    _, _, proj_utp = lam_projection(cfg2, np.abs(record.ut) ** p)

    def sinhc(y):
        out = np.ones_like(y)
        big = np.abs(y) >= 1e-4
        out[big] = np.sinh(y[big]) / y[big]
        small = ~big
        out[small] = 1.0 + y[small] ** 2 / 6.0
        return out

    res_u, res_v = 0.0, 0.0
    for ci in checkpoints:
        tc = times[ci]
        decay1s = np.exp(-lam1s * (spec.R + tc))
        decay1 = np.exp(-lam1 * (spec.R + tc))
        decay2 = np.exp(-lam2 * (spec.R + tc))
        # curlyU identity
        lin1 = tc * float((wl1s * decay1s * sinhc(lam1s * tc)) @ proj_u0[:, 0])
        lin2 = float((wl1 * decay1 * np.cosh(lam1 * tc)) @ proj_u1[:, 0])
        hist = proj_vq[:, : ci + 1]  # (m, ci+1)
        cosh_fac = np.cosh(np.multiply.outer(lam1, tc - times[: ci + 1]))
        src = float((wl1 * decay1) @ ((hist * cosh_fac) @ _sub_trapezoid_weights(times, ci)))
        rhs = lin1 + lin2 + src
        lhs = series.curlyU[ci]
        res_u = max(res_u, abs(lhs - rhs) / max(abs(lhs), 1e-300))
        # curlyV identity
        lin1v = float((wl2 * decay2 * np.cosh(lam2 * tc)) @ proj_v0[:, 0])
        lin2v = tc * float((wl2 * decay2 * sinhc(lam2 * tc)) @ proj_v1[:, 0])
        histv = proj_utp[:, : ci + 1]
        dt_sub = _sub_trapezoid_weights(times, ci)
        span = tc - times[: ci + 1]
        sinh_fac = span * sinhc(np.multiply.outer(lam2, span))
        srcv = float((wl2 * decay2) @ ((histv * sinh_fac) @ dt_sub))
        rhsv = lin1v + lin2v + srcv
        lhsv = series.curlyV[ci]
        res_v = max(res_v, abs(lhsv - rhsv) / max(abs(lhsv), 1e-300))
    return res_u, res_v


def _sub_trapezoid_weights(times, ci):
    """Trapezoid weights for integrating over samples 0..ci."""
    sub = np.zeros(ci + 1)
    if ci == 0:
        return sub
    sub[1:-1] = 0.5 * (times[2 : ci + 1] - times[: ci - 1])
    sub[0] = 0.5 * (times[1] - times[0])
    sub[-1] = 0.5 * (times[ci] - times[ci - 1])
    return sub


def check_log_seeds(series: FunctionalSeries, spec: ProblemSpec, eps: float,
                    tol: float = 1e-9) -> list[BoundCheck]:
    """Logarithmic seed bounds for the kernel functionals on the critical curve.

    CurlyULog: curlyU dominates const * log(t) from t = e on (theta1
    critical and double critical); CurlyVLog: curlyV dominates const *
    log(2t/3) (theta2 critical and double critical).  Constants are
    fitted at the window start.
    """
    if not (spec.b1.is_zero and spec.b2.is_zero):
        raise ValueError("log seed bounds are formulated for zero damping")
    region = classify(spec.n, spec.pq, tol).region
    if region not in (
        Region.CRITICAL_THETA1,
        Region.CRITICAL_THETA2,
        Region.DOUBLE_CRITICAL,
    ):
        raise ValueError(f"log seed bounds need a critical spec, got {region.value}")
    t = series.times
    checks = []
    if region in (Region.CRITICAL_THETA1, Region.DOUBLE_CRITICAL):
        mask = t >= math.e
        shape = np.where(t > 1.0, np.log(np.maximum(t, 1.0)), np.nan)
        checks.append(_shape_check(CheckId.CURLY_U_LOG, t, series.curlyU, shape, mask, FLOOR_SLACK))
    if region in (Region.CRITICAL_THETA2, Region.DOUBLE_CRITICAL):
        mask = t >= math.e
        arg = 2.0 * t / 3.0
        shape = np.where(arg > 1.0, np.log(np.maximum(arg, 1.0)), np.nan)
        checks.append(_shape_check(CheckId.CURLY_V_LOG, t, series.curlyV, shape, mask, FLOOR_SLACK))
    return checks


def write_series_csv(series: FunctionalSeries, directory) -> list:
    """One CSV per functional series, columns (t, value)."""
    os.makedirs(directory, exist_ok=True)
    names = ["U", "Uprime", "V", "Vprime", "U1", "V1", "U2", "curlyU", "curlyV"]
    paths = []
    for name in names:
        values = getattr(series, name)
        path = os.path.join(directory, f"{name}.csv")
        with open(path, "w") as fh:
            fh.write("t,value\n")
            for t, v in zip(series.times, values):
                fh.write(f"{t:.17g},{v:.17g}\n")
        paths.append(path)
    return paths


def write_check_report(checks: list[BoundCheck], path) -> None:
    """JSON report: one entry per check with id, margin, window, pass."""
    payload = [
        {
            "bound_id": c.bound_id.value,
            "min_margin": c.min_margin,
            "window": list(c.window),
            "pass": c.passed,
        }
        for c in checks
    ]
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
