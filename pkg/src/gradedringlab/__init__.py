"""Finite graded rings: constructions, cleanness verdicts, radicals and theorem checks."""

__version__ = "0.1.0"
