"""Tests for scripts.components."""
