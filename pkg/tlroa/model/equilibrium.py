from __future__ import annotations
import logging
import math
import typing
import numpy as np
from scipy.optimize    import fsolve
from tlroa.datatypes   import Scenario, Phase, State, SaturationMode
from tlroa.exceptions  import NoEquilibrium, NoConvergence
from tlroa.model.swing import VectorField

__all__ = [
    'equilibrium',
    'is_stable_equilibrium'
]

logger = logging.getLogger(__name__)

MAX_EVALUATIONS = 200
TWO_PI          = 2 * math.pi

def is_stable_equilibrium(field: VectorField, x1: float) -> bool:
    """Whether `(x1, 0)` has positive damping and a Hurwitz Jacobian."""

    _, _, _, d = field.coefficients_at(x1, field.t_ref)
    a          = field.jacobian(field.t_ref, (x1, 0.0))

    return d > 0 and np.trace(a) < 0 and np.linalg.det(a) > 0

def _solve(field: VectorField, t_m: float, x1: float) -> float:
    """Root of `k_i V sin(x1) = T_m` on the period nearest the starting angle."""

    k_i_v = field.k_i * field.v
    start = x1

    roots, info, ier, message = fsolve(
        lambda x: k_i_v * np.sin(x) - t_m,
        [x1],
        fprime      = lambda x: [[k_i_v * math.cos(x[0])]],
        xtol        = 1e-14,
        maxfev      = MAX_EVALUATIONS,
        factor      = 0.1,
        full_output = True
    )
    x1 = float(roots[0])

    if ier != 1 and abs(info['fvec'][0]) > 1e-9:
        raise NoConvergence(f'equilibrium search did not converge: {message} (last x1={x1:.17g})')

    return x1 + TWO_PI * round((start - x1) / TWO_PI)

def equilibrium(sc: Scenario,
                phase: Phase = Phase.POSTFAULT,
                guess: typing.Optional[State] = None
) -> State:
    """Stable equilibrium of a constant phase of `sc`, nearest to `guess`.

    On a constant phase `x2 = 0` at rest, which leaves the scalar equation
    `k_i V sin(x1) = T_m`, solved with `fsolve`. Of the two roots per
    period the stable one is returned.

    Raises `NoEquilibrium` if the sine equation has no root, which happens when
    the grid is too weak for the injected current or the voltage is zero.
    """

    if phase == Phase.RAMP:
        raise ValueError('the ramp phase has no equilibrium')

    if guess is None:
        guess = State(0.0, 0.0)

    field = VectorField(sc, phase, SaturationMode.NONE)
    _, t_m, _, _ = field.coefficients_at(0.0, field.t_ref)
    k_i_v = field.k_i * field.v

    if k_i_v == 0 or abs(t_m) > k_i_v:
        raise NoEquilibrium(f'no equilibrium in phase {phase.name}: T_m={t_m:.6g} exceeds k_i*V_g={k_i_v:.6g}')

    x1 = _solve(field, t_m, guess.x1)

    if not is_stable_equilibrium(field, x1):
        mirror = math.pi - x1
        mirror = mirror + TWO_PI * round((guess.x1 - mirror) / TWO_PI)
        mirror = _solve(field, t_m, mirror)

        logger.debug('root x1=%.6g is unstable, trying x1=%.6g', x1, mirror)

        if not is_stable_equilibrium(field, mirror):
            raise NoEquilibrium(f'no stable equilibrium in phase {phase.name} near x1={guess.x1:.6g}')

        x1 = mirror

    logger.debug('equilibrium of phase %s: x1=%.17g', phase.name, x1)

    return State(x1, 0.0)
