"""Tests for the bnalg toolkit."""
