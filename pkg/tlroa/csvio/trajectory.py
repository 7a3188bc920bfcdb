import collections
import typing
from tlroa.csvio.header import write_header, format_value, csv_writer
from tlroa.datatypes    import Trajectory, Direction

__all__ = [
    'write_trajectory_csv'
]

def write_trajectory_csv(file: typing.TextIO, traj: Trajectory, config_hash: str, wrapped: bool = False) -> None:
    """Writes `t, delta_rad, ddelta_rad_per_s, event`, one row per step.

    Events are attached to the row with their time; several are joined by `|`.
    """

    if wrapped:
        traj = traj.wrapped()

    events = collections.defaultdict(list)

    for event in traj.events:
        events[event.time].append(event.kind.label)

    clock = 'backward' if traj.direction == Direction.REVERSE else 'forward'

    write_header(
        file,
        'trajectory',
        config_hash,
        {'t': 's', 'delta_rad': 'rad', 'ddelta_rad_per_s': 'rad/s'},
        {'clock': clock, 'clock_origin': traj.clock_origin, 'wrapped': wrapped}
    )

    writer = csv_writer(file)
    writer.writerow(['t', 'delta_rad', 'ddelta_rad_per_s', 'event'])

    for t, (delta, omega) in zip(traj.times, traj.states):
        writer.writerow([format_value(t), format_value(delta), format_value(omega), '|'.join(events.get(float(t), []))])
