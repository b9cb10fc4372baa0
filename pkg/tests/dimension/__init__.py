"""Tests for scripts.dimension."""
