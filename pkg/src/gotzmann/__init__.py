"""Borel-fixed ideals, extremal ideals and a local Gotzmann persistence test."""
