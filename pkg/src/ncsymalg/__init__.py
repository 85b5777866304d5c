"""Exact computations with noncommutative symmetric algebras of field bimodules."""
