"""Entry point of the diagthue command-line tool. Each subcommand is a management command
of the diagthue app; hyphenated names map to the underscored command modules."""
import os
import sys

SUBCOMMANDS = ('expand', 'invariants', 'check', 'solve', 'partition', 'verify-lemmas', 'zk', 'induction', 'table')

USAGE = f'usage: diagthue {{{",".join(SUBCOMMANDS)}}} [options]'


def main(argv: list[str] = None) -> int:
    """Run one subcommand.

    :param argv: The arguments, without the program name. Defaults to sys.argv[1:].
    :return: 0 on success, 1 on a domain error or a VIOLATED lemma, 2 on a usage error.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        sys.stderr.write(USAGE + '\n')
        return 2
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'DiagonalThue.settings')
    try:
        import django
        from django.core.management import load_command_class
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    django.setup()

    name = argv[0].replace('-', '_')
    command = load_command_class('diagthue', name)
    try:
        command.run_from_argv(['diagthue', name, *argv[1:]])
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 1
    return 0
