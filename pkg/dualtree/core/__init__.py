"""Core services for dualtree."""
