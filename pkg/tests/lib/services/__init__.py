"""Tests for samplers, transforms, statistics and experiments."""
