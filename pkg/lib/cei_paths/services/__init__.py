"""Sampling, transforms, statistics and the experiment registry."""
