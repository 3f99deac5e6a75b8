"""Utility scripts for local and deployed diagnostics."""
