"""Tests for the command-line front ends."""
