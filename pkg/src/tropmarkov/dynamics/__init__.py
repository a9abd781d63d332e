"""Exact and floating dynamics: Markov/Euclid trees, tropical maps, torus folding, Farey paths, ergodic estimators."""
