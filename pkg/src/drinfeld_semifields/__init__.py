"""Drinfeld-module constructions of semifield rank-metric codes."""
