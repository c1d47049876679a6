"""This package defines one management command per diagthue subcommand."""
