"""Test suite of the diagthue app."""
