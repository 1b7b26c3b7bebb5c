"""Plotting helpers for experiment outputs."""
