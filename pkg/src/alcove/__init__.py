"""Combinatorics of alcoves, admissible sets and Serre weights for GL_n."""
