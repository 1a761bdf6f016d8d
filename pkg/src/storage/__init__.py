from storage.binary import read_trajectory, write_samples, write_trajectory
from storage.plots import PlotKind, emit_plot_data
from storage.records import get_writer, read_json, write_json
from storage.tables import Table, read_csv, write_csv

__all__ = [
    "PlotKind",
    "Table",
    "emit_plot_data",
    "get_writer",
    "read_csv",
    "read_json",
    "read_trajectory",
    "write_csv",
    "write_json",
    "write_samples",
    "write_trajectory",
]
