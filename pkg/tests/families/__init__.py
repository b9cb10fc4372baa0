"""Tests for scripts.families."""
