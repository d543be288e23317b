"""Command-line interface: experiment runner, batch runs and self-test."""
