"""Utility functions for TraceRing."""
