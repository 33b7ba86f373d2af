"""Bouncers: machines whose tape is described by a formula with repeaters
that reproduces a special case of itself."""
