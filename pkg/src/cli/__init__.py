"""Command Line Interface for TraceRing."""
