"""Web interface for TraceRing."""
