"""Flip-Schelling segregation dynamics on random graphs.

Simulation of one-shot majority flip dynamics on calibrated torus
geometric graphs and Erdos-Renyi graphs, exact small-graph oracles,
closed-form bounds, and a deterministic experiment harness.
"""

from .exactmath import (
    DiscreteDistribution,
    RegionMeasures,
    binom_collision_upper_bound,
    binom_distribution,
    binom_ge_prob,
    binom_pmf,
    binomial_mode,
    edge_within_tau_fraction,
    er_common_empty_probability,
    prob_gt_one_and_bound,
    region_measures,
    rw_abs_compare,
    rw_lower_bound,
    theorem1_bound,
)
from .fsp import (
    MINUS,
    PLUS,
    DecisivenessTriple,
    edge_decisiveness,
    exact_decisiveness_probability,
    exact_monochrome_probability,
    fsp_step,
    initial_types,
    monochrome_fraction,
)
from .graphs import (
    Graph,
    NeighborhoodPartition,
    edge_distances,
    er_probability_for_degree,
    generate_er,
    generate_rgg,
    neighborhood_partition,
    radius_for_degree,
    torus_distance,
    write_edge_list,
)
from .harness import (
    ExperimentConfig,
    SummaryRow,
    TrialRecord,
    emit_plot_data,
    quartiles,
    read_records_csv,
    read_summary_csv,
    run_experiment,
    summarize,
    write_records_csv,
    write_summary_csv,
)
from .rng import RngStream, StreamOrigin, derive_stream

__version__ = "0.1.0"
