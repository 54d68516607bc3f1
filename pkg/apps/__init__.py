"""Command-line front ends built on the cei_paths library."""
