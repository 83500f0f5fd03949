"""Critical bond percolation crossing-geometry laboratory."""

from ._perclab import (  # noqa: F401
    BoxGeometry,
    Config,
    DegenerateStatistics,
    __version__,
    crossing_lengths,
    detect_three_arm,
    estimate_pi3,
    fit_power_law,
    has_horizontal_crossing,
    lowest_crossing,
    min_defect_circuit,
    run_ratio_experiment,
    sample_config,
    shortest_crossing,
    three_arm_characterization,
    three_arm_edge_set,
)
