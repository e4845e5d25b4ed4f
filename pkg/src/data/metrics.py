# Scan metrics track how operator norms and defects evolve along a parameter path

import csv
import os
from typing import Any, Dict, List, Optional, Sequence

import numpy as np


class ScanRecorder:
    def __init__(self, axis: str, metric_names: Sequence[str]):
        self.axis = axis
        self.metrics: Dict[str, List[float]] = {axis: []}
        for name in metric_names:
            self.metrics[name] = []

    def collect(self, axis_value: float, metrics_dict: Dict[str, float]):
        """Record one point of the scan; unknown keys are ignored"""
        self.metrics[self.axis].append(float(axis_value))
        for key in self.metrics:
            if key == self.axis:
                continue
            value = metrics_dict.get(key)
            self.metrics[key].append(float(value) if value is not None else float("nan"))

    def __len__(self):
        return len(self.metrics[self.axis])

    def get_latest(self, metric_name):
        """Get the most recent value for a given metric"""
        if metric_name in self.metrics and self.metrics[metric_name]:
            return self.metrics[metric_name][-1]
        return None

    def get_series(self, metric_name, limit=None) -> List[float]:
        """Get the series for a given metric, optionally limited to the last N points"""
        if metric_name not in self.metrics:
            return []

        series = self.metrics[metric_name]
        if limit and len(series) > limit:
            return series[-limit:]
        return series

    def loglog_slope(self, metric_name) -> Optional[float]:
        """Least-squares slope of log(metric) against log(axis); None below two usable points"""
        x = np.asarray(self.metrics[self.axis], dtype=float)
        y = np.asarray(self.get_series(metric_name), dtype=float)
        usable = (x > 0) & (y > 0) & np.isfinite(y)
        if np.count_nonzero(usable) < 2 or np.unique(x[usable]).size < 2:
            return None
        slope, _ = np.polyfit(np.log(x[usable]), np.log(y[usable]), 1)
        return float(slope)

    def is_monotone(self, metric_name, decreasing_with_axis: bool = False) -> bool:
        """
        Whether the metric moves in one direction as the axis grows; with
        decreasing_with_axis=False the metric must grow with the axis.
        """
        order = np.argsort(self.metrics[self.axis], kind="stable")
        values = np.asarray(self.get_series(metric_name), dtype=float)[order]
        steps = np.diff(values)
        if decreasing_with_axis:
            return bool(np.all(steps <= 0))
        return bool(np.all(steps >= 0))

    def rows(self) -> List[Dict[str, Any]]:
        keys = list(self.metrics)
        return [{key: self.metrics[key][i] for key in keys} for i in range(len(self))]

    def export_csv(self, filepath: str) -> str:
        """Export the scan table to a CSV file"""
        directory = os.path.dirname(filepath)
        if directory:
            os.makedirs(directory, exist_ok=True)

        with open(filepath, 'w', newline='') as f:
            writer = csv.writer(f)
            writer.writerow(self.metrics.keys())
            for row in self.rows():
                writer.writerow(row.values())

        return filepath
