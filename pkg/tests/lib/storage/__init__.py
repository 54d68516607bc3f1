"""Tests for sample codecs and artifact storage."""
