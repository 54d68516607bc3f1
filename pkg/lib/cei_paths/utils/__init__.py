"""Pure functionals of grid paths."""
