"""Shared solver fixtures; session-scoped since runs are deterministic."""

import pytest

from coupledwave.exponents import ExponentPair, cusp_exponents
from coupledwave.iteration import r_parameters
from coupledwave.solver import GridSpec, InitialDataFamily, ProblemSpec, run
from coupledwave.special import DampingSpec


@pytest.fixture(scope="session")
def standard_spec():
    """Strongly subcritical undamped blow-up run (n=3, p=q=2)."""
    return ProblemSpec(
        n=3,
        pq=ExponentPair(2.0, 2.0),
        b1=DampingSpec.zero(),
        b2=DampingSpec.zero(),
        R=1.0,
        eps=1.0,
        data=InitialDataFamily(k=3, amplitudes=(4.0, 4.0, 4.0, 4.0)),
        grid=GridSpec(dr=0.02, t_max=8.0),
    )


@pytest.fixture(scope="session")
def standard_run(standard_spec):
    return run(standard_spec)


@pytest.fixture(scope="session")
def damped_spec():
    """Same problem with scattering-class power-decay damping."""
    return ProblemSpec(
        n=3,
        pq=ExponentPair(2.0, 2.0),
        b1=DampingSpec.power_decay(0.5, 2.0),
        b2=DampingSpec.power_decay(0.5, 2.0),
        R=1.0,
        eps=1.0,
        data=InitialDataFamily(k=3, amplitudes=(4.0, 4.0, 4.0, 4.0)),
        grid=GridSpec(dr=0.02, t_max=10.0),
    )


@pytest.fixture(scope="session")
def damped_run(damped_spec):
    return run(damped_spec)


@pytest.fixture(scope="session")
def negative_spec():
    """Sign-flipped u1: violates the blow-up hypotheses on purpose."""
    return ProblemSpec(
        n=3,
        pq=ExponentPair(2.0, 2.0),
        b1=DampingSpec.zero(),
        b2=DampingSpec.zero(),
        R=1.0,
        eps=1.0,
        data=InitialDataFamily(k=3, amplitudes=(4.0, -4.0, 4.0, 4.0)),
        grid=GridSpec(dr=0.02, t_max=5.0),
        enforce_hypotheses=False,
    )


@pytest.fixture(scope="session")
def negative_run(negative_spec):
    return run(negative_spec)


@pytest.fixture(scope="session")
def identity_spec():
    """Fine-grid undamped short-horizon run for the exact identities."""
    return ProblemSpec(
        n=3,
        pq=ExponentPair(2.0, 2.0),
        b1=DampingSpec.zero(),
        b2=DampingSpec.zero(),
        R=1.0,
        eps=1.0,
        data=InitialDataFamily(k=3, amplitudes=(1.0, 1.0, 1.0, 1.0)),
        grid=GridSpec(dr=0.005, t_max=2.0),
    )


@pytest.fixture(scope="session")
def identity_run(identity_spec):
    return run(identity_spec)


@pytest.fixture(scope="session")
def cusp_spec():
    """Double-critical run at the n=3 cusp point.

    u-dominant data: the |u_t|^p source then drives curlyV's growth
    from the start, so the log-seed ratios are minimised at the fit
    point.
    """
    c = cusp_exponents(3)
    return ProblemSpec(
        n=3,
        pq=ExponentPair(c.p_mix, c.q_mix),
        b1=DampingSpec.zero(),
        b2=DampingSpec.zero(),
        R=1.0,
        eps=1.0,
        data=InitialDataFamily(k=3, amplitudes=(2.5, 2.5, 1.0, 1.0)),
        grid=GridSpec(dr=0.02, t_max=12.0),
    )


@pytest.fixture(scope="session")
def cusp_run(cusp_spec):
    return run(cusp_spec)


@pytest.fixture(scope="session")
def cusp_r_parameters(cusp_spec):
    return r_parameters("double", cusp_spec.n, cusp_spec.pq)
