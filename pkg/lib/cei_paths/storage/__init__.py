"""Storage interfaces and implementations."""
