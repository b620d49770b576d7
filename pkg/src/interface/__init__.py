"""Config documents, results files and the command-line surface."""
from src.interface.config_parser import (
    parse_config, parse_sweep, render_config, config_hash, setup_fingerprint, apply_overrides
)
from src.interface.results_writer import (
    write_results_csv, write_schedule_csv, write_sweep_index, read_results_csv
)

__all__ = [
    'parse_config', 'parse_sweep', 'render_config', 'config_hash', 'setup_fingerprint', 'apply_overrides',
    'write_results_csv', 'write_schedule_csv', 'write_sweep_index', 'read_results_csv'
]
