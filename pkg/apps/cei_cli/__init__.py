"""cei - command-line front end for sampling, transforming and verifying paths."""
