"""Tests for value objects and errors."""
