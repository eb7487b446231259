"""Experiment configs, replication runner, CSV/SVG export and the CLI."""
from .config import ConfigError, ExperimentConfig, build_configs, load_config, parse_config_text, with_horizon
from .export import read_aggregate_csv, read_traces_csv, write_aggregate_csv, write_traces_csv
from .runner import AggregateResult, aggregate, regret_slope, replication_seed, run_experiment, run_replication
from .svg import emit_svg, render_svg
