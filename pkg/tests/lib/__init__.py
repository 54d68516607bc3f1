"""Tests for the cei_paths library."""
