"""Iteration machinery: lower-bound sequences, closed forms, frame
constants, blow-up threshold times and divergence drivers.

The subcritical argument generates sequences (C_j, a_j, b_j) and
(K_j, alpha_j, beta_j) through

    V(t)  >= C_j (1+t)^(-b_j) t^(a_j),
    U'(t) >= K_j (1+t)^(-beta_j) t^(alpha_j),

with multiplicative recursions a_{j+1} = pq a_j + p + 2, b_{j+1} =
pq b_j + n(pq-1), alpha_{j+1} = pq alpha_j + 2q + 1, beta_{j+1} =
pq beta_j + n(pq-1) and explicit closed forms.  The critical (slicing)
argument generates (C_j, a_j, b_j), (K_j, alpha_j, beta_j) and
(D_j, g_j, h_j) for the three critical cases, against slicing times
ell_j = 2 - 2^{-j}.  Coefficient sequences are doubly exponential in j
and therefore held in log scale.

Threshold times invert the divergence drivers:  subcritical
eps^p J(t) (or eps^q Jtilde(t)) with J(t) = 2^{-((n-1)p/2+n)} N t^{p
theta1}; critical H(t, eps) = E eps^{pq} (log t)^{q/(pq-1)} and its
analogues.  A driver value above 1 certifies divergence of the
lower-bound sequence at (t, eps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exponents import (
    EQUALITY_TOL,
    PredictionKind,
    Region,
    as_pair,
    check_dimension,
    theta1,
    theta2,
)

__all__ = [
    "J_MAX_LIMIT",
    "CriticalCase",
    "SequenceTable",
    "IterationConstants",
    "ThresholdTime",
    "subcritical_sequences",
    "critical_sequences",
    "geometric_sums",
    "series_S",
    "threshold_time",
    "r_parameters",
    "divergence_driver",
    "divergence_certificate",
    "write_table_csv",
]

# (pq)^j exceeds double range in driver subexpressions beyond this
J_MAX_LIMIT = 60

LOG2 = math.log(2.0)


class CriticalCase(Enum):
    THETA1 = "theta1"
    THETA2 = "theta2"
    DOUBLE = "double"


@dataclass
class SequenceTable:
    """Iteration sequences with brute-recursion and closed-form columns.

    ``coeff_log`` holds log C_j (or log K_j, log D_j) from the step
    recursion; ``coeff_log_closed`` evaluates the same unrolled sum
    directly from the closed-form power sequences.  ``ell`` carries the
    slicing times for critical families and is None otherwise.
    """

    family: str
    n: int
    p: float
    q: float
    j: np.ndarray
    coeff_log: np.ndarray
    coeff_log_closed: np.ndarray
    t_power: np.ndarray
    t_power_closed: np.ndarray
    weight_power: np.ndarray
    weight_power_closed: np.ndarray
    ell: np.ndarray | None = None


@dataclass(frozen=True)
class IterationConstants:
    """Frame and seed constants with every derived constant materialised.

    C, K are the frame constants of the coupled integral inequalities;
    Ctilde, Ktilde the nonlinearity lower-bound constants; m1_0, m2_0
    the damping multipliers at t = 0.  None of these is computable in
    closed form, so they default to 1 and are exposed as configuration.
    The derived fields follow: M, N (theta1-critical coefficient
    recursion), M1, N1 (theta2), M2, N2 (double), S = pq/(pq-1)^2,
    Nconst and Ntilde (subcritical threshold constants) and the
    critical lifespan constants E, E1, E2 (also kept as logs for
    overflow-free threshold evaluation).
    """

    n: int
    p: float
    q: float
    C: float = 1.0
    K: float = 1.0
    Ctilde: float = 1.0
    Ktilde: float = 1.0
    m1_0: float = 1.0
    m2_0: float = 1.0
    M: float = 1.0
    N: float = 1.0
    M1: float = 1.0
    N1: float = 1.0
    M2: float = 1.0
    N2: float = 1.0
    S: float = 1.0
    Ntilde: float = 1.0
    Nconst: float = 1.0
    E: float = 1.0
    E1: float = 1.0
    E2: float = 1.0
    log_E: float = 0.0
    log_E1: float = 0.0
    log_E2: float = 0.0

    @classmethod
    def from_frame(cls, n, pq, C: float = 1.0, K: float = 1.0,
                   Ctilde: float = 1.0, Ktilde: float = 1.0,
                   m1_0: float = 1.0, m2_0: float = 1.0) -> "IterationConstants":
        n = check_dimension(n)
        pq = as_pair(pq)
        p, q = pq.p, pq.q
        x = pq.product
        for name, val in (("C", C), ("K", K), ("Ctilde", Ctilde),
                          ("Ktilde", Ktilde), ("m1_0", m1_0), ("m2_0", m2_0)):
            if not val > 0:
                raise ValueError(f"constant {name} must be positive, got {val}")
        M = 2.0 ** (-q * (3.0 * n + 4.0)) * C * K**q * (x - 1.0) / x
        N = 2.0 ** (2.0 * q) * x
        M1 = 2.0 ** (-3.0 * n * p - 6.0) * K * C**p * (x - 1.0) / x
        N1 = 2.0 ** (2.0 * (p + 1.0)) * x
        M2 = 2.0 ** (-5.0 * q - 2.0) * C * K**q * ((x - 1.0) / (q * (p + 1.0))) ** (q + 1.0)
        N2 = 2.0**q * x ** (q + 1.0)
        S = x / (x - 1.0) ** 2
        Msub = C * K**p * (n + 1.0 + (p + 2.0) / (x - 1.0)) ** (-(p + 2.0))
        Msub_t = K * C**q * (n + (2.0 * q + 1.0) / (x - 1.0)) ** (-(2.0 * q + 1.0))
        Nconst = (
            m2_0 * Ktilde / (n * (n + 1.0))
            * x ** (-(p + 2.0) * x / (x - 1.0) ** 2)
            * Msub ** (1.0 / (x - 1.0))
        )
        Ntilde = (
            m1_0 * Ctilde / n
            * x ** (-(2.0 * q + 1.0) * x / (x - 1.0) ** 2)
            * Msub_t ** (1.0 / (x - 1.0))
        )
        log_E = (
            -q * (2.0 * p - 1.0) / (x - 1.0) * LOG2
            + math.log(Ctilde)
            - S * math.log(N)
            + (x - 1.0) * math.log(M)
        )
        log_E1 = (
            -p * (2.0 * q - 1.0) / (x - 1.0) * LOG2
            + math.log(Ktilde)
            - S * math.log(N1)
            + (x - 1.0) * math.log(M1)
        )
        log_E2 = (
            -(2.0 + (q + 1.0) / (x - 1.0)) * LOG2
            + math.log(Ctilde)
            - S * math.log(N2)
            + (x - 1.0) * math.log(M2)
        )
        return cls(
            n=n, p=p, q=q, C=C, K=K, Ctilde=Ctilde, Ktilde=Ktilde,
            m1_0=m1_0, m2_0=m2_0, M=M, N=N, M1=M1, N1=N1, M2=M2, N2=N2,
            S=S, Ntilde=Ntilde, Nconst=Nconst,
            E=math.exp(log_E), E1=math.exp(log_E1), E2=math.exp(log_E2),
            log_E=log_E, log_E1=log_E1, log_E2=log_E2,
        )

    def matches(self, n, pq, tol: float = 1e-12) -> bool:
        pq = as_pair(pq)
        return self.n == n and abs(self.p - pq.p) <= tol and abs(self.q - pq.q) <= tol


@dataclass(frozen=True)
class ThresholdTime:
    """Blow-up threshold time; T = exp(log_T) may overflow to inf for
    critical kinds, log_T is always finite."""

    kind: PredictionKind
    T: float
    log_T: float
    formula_id: str


def _check_jmax(j_max: int) -> int:
    if int(j_max) != j_max or j_max < 1:
        raise ValueError(f"j_max must be a positive integer, got {j_max}")
    if j_max > J_MAX_LIMIT:
        raise ValueError(f"j_max capped at {J_MAX_LIMIT}, got {j_max}")
    return int(j_max)


def subcritical_sequences(n, pq, j_max: int, consts: IterationConstants | None = None,
                          eps: float = 1.0):
    """Brute recursions and closed forms for the subcritical families.

    Returns (table for (C_j, a_j, b_j), table for (K_j, alpha_j,
    beta_j)).  Seeds: a0 = n+1, b0 = (n-1)p/2, C0 = m2(0) Ktilde eps^p
    / (n(n+1)); alpha0 = n, beta0 = (n-1)q/2, K0 = m1(0) Ctilde eps^q
    / n.  Coefficients are tracked in log scale.
    """
    n = check_dimension(n)
    pq = as_pair(pq)
    j_max = _check_jmax(j_max)
    if consts is None:
        consts = IterationConstants.from_frame(n, pq)
    elif not consts.matches(n, pq, tol=1e-9):
        raise ValueError("IterationConstants built for different (n, p, q)")
    p, q = pq.p, pq.q
    x = pq.product
    js = np.arange(j_max + 1)

    # V-family: (C_j, a_j, b_j)
    a0 = n + 1.0
    b0 = 0.5 * (n - 1.0) * p
    logC0 = math.log(consts.m2_0 * consts.Ktilde / (n * (n + 1.0))) + p * math.log(eps)
    a = np.empty(j_max + 1)
    b = np.empty(j_max + 1)
    logC = np.empty(j_max + 1)
    a[0], b[0], logC[0] = a0, b0, logC0
    logCK = math.log(consts.C) + p * math.log(consts.K)
    for j in range(j_max):
        logC[j + 1] = (
            logCK + x * logC[j]
            - p * math.log(a[j] * q + 1.0)
            - math.log(a[j] * x + p + 1.0)
            - math.log(a[j] * x + p + 2.0)
        )
        a[j + 1] = x * a[j] + p + 2.0
        b[j + 1] = x * b[j] + n * (x - 1.0)
    a_closed = (a0 + (p + 2.0) / (x - 1.0)) * x**js - (p + 2.0) / (x - 1.0)
    b_closed = (b0 + n) * x**js - n
    logC_closed = _unrolled_coeff(
        logC0, x, j_max,
        lambda ac: logCK
        - p * math.log(ac * q + 1.0)
        - math.log(ac * x + p + 1.0)
        - math.log(ac * x + p + 2.0),
        a_closed,
    )
    table_v = SequenceTable(
        family="subcritical-v", n=n, p=p, q=q, j=js,
        coeff_log=logC, coeff_log_closed=logC_closed,
        t_power=a, t_power_closed=a_closed,
        weight_power=b, weight_power_closed=b_closed,
    )

    # U'-family: (K_j, alpha_j, beta_j)
    al0 = float(n)
    be0 = 0.5 * (n - 1.0) * q
    logK0 = math.log(consts.m1_0 * consts.Ctilde / n) + q * math.log(eps)
    al = np.empty(j_max + 1)
    be = np.empty(j_max + 1)
    logK = np.empty(j_max + 1)
    al[0], be[0], logK[0] = al0, be0, logK0
    logKC = math.log(consts.K) + q * math.log(consts.C)
    for j in range(j_max):
        logK[j + 1] = (
            logKC + x * logK[j]
            - q * math.log(al[j] * p + 1.0)
            - q * math.log(al[j] * p + 2.0)
            - math.log(al[j] * x + 2.0 * q + 1.0)
        )
        al[j + 1] = x * al[j] + 2.0 * q + 1.0
        be[j + 1] = x * be[j] + n * (x - 1.0)
    al_closed = (al0 + (2.0 * q + 1.0) / (x - 1.0)) * x**js - (2.0 * q + 1.0) / (x - 1.0)
    be_closed = (be0 + n) * x**js - n
    logK_closed = _unrolled_coeff(
        logK0, x, j_max,
        lambda ac: logKC
        - q * math.log(ac * p + 1.0)
        - q * math.log(ac * p + 2.0)
        - math.log(ac * x + 2.0 * q + 1.0),
        al_closed,
    )
    table_u = SequenceTable(
        family="subcritical-uprime", n=n, p=p, q=q, j=js,
        coeff_log=logK, coeff_log_closed=logK_closed,
        t_power=al, t_power_closed=al_closed,
        weight_power=be, weight_power_closed=be_closed,
    )
    return table_v, table_u


def _unrolled_coeff(log0, x, j_max, step_from_power, power_closed):
    """Direct (non-recursive) evaluation of log coeff_j via the unrolled
    sum log c_j = x^j log c_0 + sum_{k<j} x^{j-1-k} d_k with d_k built
    from the closed-form power sequence."""
    out = np.empty(j_max + 1)
    out[0] = log0
    d = np.array([step_from_power(power_closed[k]) for k in range(j_max)])
    for j in range(1, j_max + 1):
        ks = np.arange(j)
        out[j] = x**j * log0 + float(np.sum(x ** (j - 1 - ks) * d[:j]))
    return out


def critical_sequences(case, n, pq, j_max: int,
                       consts: IterationConstants | None = None,
                       eps: float = 1.0, tol: float = EQUALITY_TOL) -> SequenceTable:
    """Slicing-method sequences for one critical case.

    THETA1: a_{j+1} = a_j pq + 1, b_{j+1} = q(p-1) + b_j pq, coefficient
    step 2^{-2qj - 3q(n+2)} C K^q C_j^{pq} (a_j pq + 1)^{-1}, seeds
    a0 = 1, b0 = 0, C0 = Ctilde eps^{pq}.  THETA2 swaps the roles with
    K_j.  DOUBLE uses g_{j+1} = g_j pq + q + 1, h_{j+1} = h_j pq +
    pq - 1, D0 = Ctilde eps^q.  The slicing column is ell_j = 2 - 2^{-j}.
    """
    case = CriticalCase(case)
    n = check_dimension(n, minimum=2)
    pq = as_pair(pq)
    j_max = _check_jmax(j_max)
    if consts is None:
        consts = IterationConstants.from_frame(n, pq)
    elif not consts.matches(n, pq, tol=1e-9):
        raise ValueError("IterationConstants built for different (n, p, q)")
    t1 = theta1(n, pq)
    t2 = theta2(n, pq)
    if case is CriticalCase.THETA1 and abs(t1) > tol:
        raise ValueError(f"(p, q) not on the theta1 curve: theta1 = {t1}")
    if case is CriticalCase.THETA2 and abs(t2) > tol:
        raise ValueError(f"(p, q) not on the theta2 curve: theta2 = {t2}")
    if case is CriticalCase.DOUBLE and (abs(t1) > tol or abs(t2) > tol):
        raise ValueError(f"(p, q) not at the double-critical point: {t1}, {t2}")
    p, q = pq.p, pq.q
    x = pq.product
    js = np.arange(j_max + 1)
    ell = 2.0 - 2.0 ** (-js.astype(float))

    if case is CriticalCase.THETA1:
        log0 = math.log(consts.Ctilde) + x * math.log(eps)
        base = math.log(consts.C) + q * math.log(consts.K)
        t_add = 1.0
        w_add = q * (p - 1.0)

        def step(j, ac):
            return base + (-2.0 * q * j - 3.0 * q * (n + 2.0)) * LOG2 - math.log(ac * x + 1.0)

        t0v, w0 = 1.0, 0.0
        t_closed = (x ** (js + 1.0) - 1.0) / (x - 1.0)
        w_closed = w_add / (x - 1.0) * (x**js - 1.0)
        family = "critical-theta1"
    elif case is CriticalCase.THETA2:
        log0 = math.log(consts.Ktilde) + x * math.log(eps)
        base = math.log(consts.K) + p * math.log(consts.C)
        t_add = 1.0
        w_add = p * (q - 1.0)

        def step(j, ac):
            return base + (-2.0 * (p + 1.0) * j - (3.0 * n + 2.0) * p - 8.0) * LOG2 - math.log(ac * x + 1.0)

        t0v, w0 = 1.0, 0.0
        t_closed = (x ** (js + 1.0) - 1.0) / (x - 1.0)
        w_closed = w_add / (x - 1.0) * (x**js - 1.0)
        family = "critical-theta2"
    else:
        log0 = math.log(consts.Ctilde) + q * math.log(eps)
        base = math.log(consts.C) + q * math.log(consts.K)
        t_add = q + 1.0
        w_add = x - 1.0

        def step(j, ac):
            return base + (-(j + 6.0) * q - 2.0) * LOG2 - q * math.log(ac * p + 1.0) - math.log(ac * x + q + 1.0)

        t0v, w0 = 1.0, 0.0
        t_closed = (1.0 + (q + 1.0) / (x - 1.0)) * x**js - (q + 1.0) / (x - 1.0)
        w_closed = x**js - 1.0
        family = "critical-double"

    tp = np.empty(j_max + 1)
    wp = np.empty(j_max + 1)
    logc = np.empty(j_max + 1)
    tp[0], wp[0], logc[0] = t0v, w0, log0
    for j in range(j_max):
        logc[j + 1] = x * logc[j] + step(j, tp[j])
        tp[j + 1] = x * tp[j] + t_add
        wp[j + 1] = x * wp[j] + w_add
    logc_closed = np.empty(j_max + 1)
    logc_closed[0] = log0
    d = np.array([step(k, t_closed[k]) for k in range(j_max)])
    for j in range(1, j_max + 1):
        ks = np.arange(j)
        logc_closed[j] = x**j * log0 + float(np.sum(x ** (j - 1 - ks) * d[:j]))
    return SequenceTable(
        family=family, n=n, p=p, q=q, j=js,
        coeff_log=logc, coeff_log_closed=logc_closed,
        t_power=tp, t_power_closed=t_closed,
        weight_power=wp, weight_power_closed=w_closed,
        ell=ell,
    )


def geometric_sums(x: float, j: int):
    """The two partial-sum identities used to unroll the recursions.

    Returns (sum_{k<j} x^k, sum_{k<j} (j-k) x^k), each evaluated by
    direct summation and by closed form; raises if the two evaluations
    disagree beyond 1e-12 relative.
    """
    if not x > 1.0:
        raise ValueError(f"geometric base must exceed 1, got {x}")
    if int(j) != j or j < 1:
        raise ValueError(f"j must be a positive integer, got {j}")
    j = int(j)
    ks = np.arange(j, dtype=float)
    powers = x**ks
    direct1 = float(powers.sum())
    direct2 = float(((j - ks) * powers).sum())
    closed1 = (x**j - 1.0) / (x - 1.0)
    closed2 = ((x ** (j + 1.0) - 1.0) / (x - 1.0) - (j + 1.0)) / (x - 1.0)
    for d, c in ((direct1, closed1), (direct2, closed2)):
        if abs(d - c) > 1e-12 * max(abs(d), abs(c)):
            raise ArithmeticError(f"sum formula disagreement: direct={d}, closed={c}")
    return closed1, closed2


def series_S(pq_product: float, j_max: int = 200):
    """Partial sums S_j = sum_{k<=j} k (pq)^{-k} and the limit
    S = (1/pq) / (1 - 1/pq)^2 = pq/(pq-1)^2."""
    x = float(pq_product)
    if not x > 1.0:
        raise ValueError(f"pq must exceed 1, got {x}")
    j_max = int(j_max)
    ks = np.arange(1, j_max + 1, dtype=float)
    terms = ks * x**-ks
    partial = np.cumsum(terms)
    limit = (1.0 / x) / (1.0 - 1.0 / x) ** 2
    return partial, limit


def threshold_time(n, pq, eps: float, consts: IterationConstants,
                   region: Region) -> ThresholdTime:
    """Explicit blow-up threshold for the given region.

    Subcritical: T = 2^{((n-1)/2 + n/p)/theta1} N^{-1/(p theta1)}
    eps^{-1/theta1} on the theta1-dominant branch (q-analogue with
    Ntilde otherwise).  Critical: log T = E^{-(pq-1)/q} eps^{-p(pq-1)}
    and the analogous expressions with E1, E2.
    """
    n = check_dimension(n)
    pq = as_pair(pq)
    if not eps > 0:
        raise ValueError("eps must be positive")
    if not consts.matches(n, pq, tol=1e-9):
        raise ValueError("IterationConstants built for different (n, p, q)")
    if region is Region.SUPERCRITICAL:
        raise ValueError("no blow-up threshold in the supercritical region")
    p, q = pq.p, pq.q
    x = pq.product
    log_eps = math.log(eps)
    if region is Region.SUBCRITICAL:
        t1 = theta1(n, pq)
        t2 = theta2(n, pq)
        if t1 >= t2:
            log_T = (
                (0.5 * (n - 1.0) + n / p) / t1 * LOG2
                - math.log(consts.Nconst) / (p * t1)
                - log_eps / t1
            )
            fid = "subcritical-theta1"
        else:
            log_T = (
                (0.5 * (n - 1.0) + n / q) / t2 * LOG2
                - math.log(consts.Ntilde) / (q * t2)
                - log_eps / t2
            )
            fid = "subcritical-theta2"
        return ThresholdTime(PredictionKind.POWER_LAW, math.exp(log_T), log_T, fid)
    if region is Region.CRITICAL_THETA1:
        log_T = math.exp(-(x - 1.0) / q * consts.log_E - p * (x - 1.0) * log_eps)
        kind, fid = PredictionKind.EXP_THETA1, "critical-theta1"
    elif region is Region.CRITICAL_THETA2:
        log_T = math.exp(-(x - 1.0) / p * consts.log_E1 - q * (x - 1.0) * log_eps)
        kind, fid = PredictionKind.EXP_THETA2, "critical-theta2"
    elif region is Region.DOUBLE_CRITICAL:
        log_T = math.exp(
            -(x - 1.0) / (q + 1.0) * consts.log_E2
            - q * (x - 1.0) / (q + 1.0) * log_eps
        )
        kind, fid = PredictionKind.EXP_DOUBLE, "critical-double"
    else:
        raise ValueError(f"unknown region {region}")
    try:
        T = math.exp(log_T)
    except OverflowError:
        T = math.inf
    return ThresholdTime(kind, T, log_T, fid)


def r_parameters(case, n, pq, offset: float = 0.1, tol: float = EQUALITY_TOL):
    """Critical kernel exponents (r1, r2) for the given case.

    Equality holds on the case's own curve: r1 = (n-1)/2 - 1/p on the
    theta1 curve, r2 = (n-1)/2 - 1/q on the theta2 curve; the strict
    inequality on the other exponent is realised with a configurable
    positive offset above the larger of the two equality values.  In
    the double case both equalities hold and the exchange identities
    (n-1)/2 - 1/p = n - 1 - (n-1)q/2 and (n-1)/2 - 1/q = n - (n-1)p/2
    are asserted to 1e-12.
    """
    case = CriticalCase(case)
    n = check_dimension(n, minimum=2)
    pq = as_pair(pq)
    if not offset > 0:
        raise ValueError("offset must be positive")
    t1 = theta1(n, pq)
    t2 = theta2(n, pq)
    p, q = pq.p, pq.q
    r1_eq = 0.5 * (n - 1.0) - 1.0 / p
    r2_eq = 0.5 * (n - 1.0) - 1.0 / q
    if case is CriticalCase.THETA1:
        if abs(t1) > tol:
            raise ValueError(f"(p, q) not on the theta1 curve: theta1 = {t1}")
        return r1_eq, max(r1_eq, r2_eq) + offset
    if case is CriticalCase.THETA2:
        if abs(t2) > tol:
            raise ValueError(f"(p, q) not on the theta2 curve: theta2 = {t2}")
        return max(r1_eq, r2_eq) + offset, r2_eq
    if abs(t1) > tol or abs(t2) > tol:
        raise ValueError(f"(p, q) not double-critical: theta1={t1}, theta2={t2}")
    id1 = abs(r1_eq - (n - 1.0 - 0.5 * (n - 1.0) * q))
    id2 = abs(r2_eq - (n - 0.5 * (n - 1.0) * p))
    if id1 > 1e-12 or id2 > 1e-12:
        raise AssertionError(
            f"double-critical exchange identities violated: {id1}, {id2}"
        )
    return r1_eq, r2_eq


def divergence_driver(family: str, n, pq, eps: float, consts: IterationConstants,
                      t: float | None = None, log_t: float | None = None) -> float:
    """Value of the divergence driver for a sequence family at (t, eps).

    Families: 'subcritical-v' uses eps^p J(t), 'subcritical-uprime'
    eps^q Jtilde(t); the critical families use H, H1, H2.  ``log_t``
    may be given instead of t when t overflows.
    """
    n = check_dimension(n)
    pq = as_pair(pq)
    if not eps > 0:
        raise ValueError("eps must be positive")
    if log_t is None:
        if t is None or not t > 0:
            raise ValueError("need t > 0 or log_t")
        log_t = math.log(t)
    if not consts.matches(n, pq, tol=1e-9):
        raise ValueError("IterationConstants built for different (n, p, q)")
    p, q = pq.p, pq.q
    x = pq.product
    log_eps = math.log(eps)
    if family == "subcritical-v":
        t1 = theta1(n, pq)
        log_val = (
            p * log_eps
            - (0.5 * (n - 1.0) * p + n) * LOG2
            + math.log(consts.Nconst)
            + p * t1 * log_t
        )
    elif family == "subcritical-uprime":
        t2 = theta2(n, pq)
        log_val = (
            q * log_eps
            - (0.5 * (n - 1.0) * q + n) * LOG2
            + math.log(consts.Ntilde)
            + q * t2 * log_t
        )
    elif family == "critical-theta1":
        if not log_t > 0:
            raise ValueError("critical drivers need t > 1")
        log_val = consts.log_E + x * log_eps + q / (x - 1.0) * math.log(log_t)
    elif family == "critical-theta2":
        if not log_t > 0:
            raise ValueError("critical drivers need t > 1")
        log_val = consts.log_E1 + x * log_eps + p / (x - 1.0) * math.log(log_t)
    elif family == "critical-double":
        if not log_t > 0:
            raise ValueError("critical drivers need t > 1")
        log_val = consts.log_E2 + q * log_eps + (q + 1.0) / (x - 1.0) * math.log(log_t)
    else:
        raise ValueError(f"unknown sequence family {family!r}")
    return math.exp(log_val)


def divergence_certificate(table: SequenceTable, eps: float, t: float,
                           consts: IterationConstants) -> bool:
    """Whether the divergence driver of the table's family exceeds 1 at
    (t, eps), certifying blow-up of the lower-bound sequence there."""
    value = divergence_driver(table.family, table.n, (table.p, table.q), eps,
                              consts, t=t)
    return bool(value > 1.0)


def write_table_csv(table: SequenceTable, path) -> None:
    """CSV export with brute and closed-form columns side by side."""
    with open(path, "w") as fh:
        fh.write(
            "j,coeff_log,coeff_log_closed,t_power,t_power_closed,"
            "weight_power,weight_power_closed,ell_j\n"
        )
        for i, j in enumerate(table.j):
            ell = "" if table.ell is None else format(table.ell[i], ".17g")
            row = [
                str(int(j)),
                format(table.coeff_log[i], ".17g"),
                format(table.coeff_log_closed[i], ".17g"),
                format(table.t_power[i], ".17g"),
                format(table.t_power_closed[i], ".17g"),
                format(table.weight_power[i], ".17g"),
                format(table.weight_power_closed[i], ".17g"),
                ell,
            ]
            fh.write(",".join(row) + "\n")
