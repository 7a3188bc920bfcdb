import sys
import numpy as np
import tlroa

def roundtrip_errors(sc: tlroa.Scenario, mode: tlroa.SaturationMode, starts: np.ndarray, duration: float):
    cfg    = tlroa.IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12)
    t0     = sc.t_ramp_end
    errors = []

    for x1, x2 in starts:
        start    = tlroa.State(x1, x2)
        forward  = tlroa.integrate_forward(start, t0, t0 + duration, sc, cfg, mode)
        backward = tlroa.integrate_reverse(forward.end, duration, sc, cfg, mode, t_start=t0)

        errors.append(backward.end.distance(start))

    return np.array(errors)

def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 20

    sc    = tlroa.Scenario.default()
    x_eq  = tlroa.equilibrium(sc)
    rng   = np.random.default_rng(0)
    near  = np.column_stack([x_eq.x1 + rng.uniform(-0.3, 0.3, count), x_eq.x2 + rng.uniform(-5, 5, count)])
    fast  = np.column_stack([x_eq.x1 + rng.uniform(-0.3, 0.3, count), rng.uniform(40, 60, count)])

    print('post-fault equilibrium:', x_eq)
    print()

    for label, mode, starts in [('no saturation',                   tlroa.SaturationMode.NONE,   near),
                                ('smooth saturation',               tlroa.SaturationMode.SMOOTH, near),
                                ('smooth saturation (saturated)',   tlroa.SaturationMode.SMOOTH, fast)]:
        errors = roundtrip_errors(sc, mode, starts, 1.0)

        print(f'{label:32} max roundtrip error {errors.max():.3e} over {len(errors)} start(s)')

    print()

    try:
        tlroa.integrate_reverse(x_eq, 1.0, sc, sat_mode=tlroa.SaturationMode.HARD)
    except tlroa.HardSaturationNotReversible as exc:
        print('hard saturation:', exc)

    # Reversing a clamped run with the unclamped flow misses the start.
    t0       = sc.t_ramp_end
    start    = tlroa.State(*fast[0])
    forward  = tlroa.integrate_forward(start, t0, t0 + 1.0, sc, sat_mode=tlroa.SaturationMode.HARD)
    backward = tlroa.integrate_reverse(forward.end, 1.0, sc, sat_mode=tlroa.SaturationMode.NONE, t_start=t0)

    print(f'hard-clamped run reversed without the clamp misses its start by {backward.end.distance(start):.3e}')

    return 0

if __name__ == '__main__':
    sys.exit(main())
