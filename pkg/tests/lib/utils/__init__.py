"""Tests for path functionals."""
