"""This package defines the diagthue management commands."""
