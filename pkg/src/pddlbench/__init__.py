"""Benchmark harness for LLM PDDL formalization and planning."""

__version__ = "0.1.0"
