import typing
from tlroa.csvio.header import write_header, format_value, csv_writer
from tlroa.datatypes    import ClassifiedGrid

__all__ = [
    'write_grid_csv'
]

def write_grid_csv(file: typing.TextIO, grid: ClassifiedGrid, config_hash: str) -> None:
    write_header(
        file,
        'grid',
        config_hash,
        {'delta': 'rad', 'ddelta': 'rad/s', 'settle_time': 's'},
        {
            'scenario_hash':    grid.scenario_hash,
            'n_delta':          len(grid.deltas),
            'n_omega':          len(grid.omegas),
            'simulation_count': grid.simulation_count
        }
    )

    writer = csv_writer(file)
    writer.writerow(['i_delta', 'j_omega', 'delta', 'ddelta', 'label', 'basin', 'settle_time', 'note'])

    for i, delta in enumerate(grid.deltas):
        for j, omega in enumerate(grid.omegas):
            label = grid.label(i, j)

            writer.writerow([
                i,
                j,
                format_value(delta),
                format_value(omega),
                str(label),
                label.basin,
                format_value(grid.settle_time[i, j]),
                grid.notes.get((i, j), '')
            ])
