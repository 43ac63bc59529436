"""Monte-Carlo benchmarks, reference curves and application metrics."""
from .analytic import (
    analytic_path_probs,
    analytic_tradeoff,
    competition_free_expectation,
    degree_counts,
    l1_distribution,
    mean_manhattan,
    path_set_curves,
    path_set_estimate,
    single_path_expectation,
)
from .apps import binary_entropy, heatmap_bins, network_rates, secret_key_rate, threshold_rate, unification_advantage
from .scenario import (
    SampleRecord,
    ScenarioConfig,
    ScenarioKind,
    TemporalSettings,
    csv_header,
    read_csv,
    records_to_csv,
    run_scenario,
    run_sweep,
    with_param,
    write_csv,
)
from .stats import SummaryStats, sample_depths, summarize
