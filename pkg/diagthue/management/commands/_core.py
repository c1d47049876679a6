"""This module defines the base class of all diagthue commands: common flags, form loading,
run manifests, output writing and the mapping of domain errors to exit codes."""
from __future__ import annotations

import abc as _abc
import csv as _csv
import dataclasses as _dc
import io as _io
import json as _json
import pathlib as _pathlib
import time as _time

import django.core.management.base as dj_mngmt

from ...api import binary_forms as _forms, errors as _errors
from ...api.binary_forms import AnyForm, DiagForm
from ... import settings as _settings

USAGE_EXIT = 2
DOMAIN_EXIT = 1


@_dc.dataclass(frozen=True)
class RunManifest:
    """What a report was produced from. Timing is only set when requested so that identical runs
    produce identical reports."""
    command: str
    form_path: str | None
    parameters: dict
    outputs: tuple[str, ...] = ()
    version: str = _settings.VERSION
    timing: float | None = None

    def to_json(self) -> dict:
        data = {
            'command': self.command,
            'form': self.form_path,
            'parameters': self.parameters,
            'outputs': list(self.outputs),
            'version': self.version,
        }
        if self.timing is not None:
            data['timing_seconds'] = round(self.timing, 6)
        return data


def usage_error(message: str) -> dj_mngmt.CommandError:
    return dj_mngmt.CommandError(message, returncode=USAGE_EXIT)


def int_list(text: str) -> list[int]:
    """Parse "7..12" (inclusive) or "1,10,100".

    :raise CommandError: If the text has another shape.
    """
    try:
        if '..' in text:
            start, stop = text.split('..')
            return list(range(int(start), int(stop) + 1))
        return [int(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise usage_error(f'invalid integer list: {text!r}')


class DiagThueCommand(dj_mngmt.BaseCommand, _abc.ABC):
    """Base class of diagthue commands. Subclasses declare the common flags they use
    and implement :meth:`run`, returning a JSON-serializable report or CSV rows."""
    requires_system_checks = []

    uses_form = True
    uses_h = True
    uses_box = False
    formats = ('json',)

    def add_arguments(self, parser: dj_mngmt.CommandParser):
        if self.uses_form:
            parser.add_argument('--form', dest='form', metavar='PATH', help='Path to a JSON form spec.')
        if self.uses_h:
            parser.add_argument('--h', dest='h', type=int, default=1, help='Bound of the inequality.')
        if self.uses_box:
            parser.add_argument('--H', dest='H', type=int, default=_settings.DEFAULT_SEARCH_BOX,
                                help='Search box max(|x|, |y|) ≤ H.')
        parser.add_argument('--precision', dest='precision', type=int, default=None, metavar='BITS',
                            help='Starting ball precision in bits.')
        parser.add_argument('--out', dest='out', metavar='PATH', help='Write the report to this file.')
        parser.add_argument('--format', dest='format', choices=self.formats, default=self.formats[0])
        parser.add_argument('--with-timing', action='store_true', dest='with_timing',
                            help='Add the run time to the manifest.')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser: dj_mngmt.CommandParser):
        pass

    def handle(self, *args, **options):
        start = _time.perf_counter()
        try:
            report = self.run(**options)
        except _errors.DOMAIN_ERRORS as e:
            _settings.LOGGER.debug(f'{type(e).__name__} raised by {self.command_name}')
            self.stderr.write(_json.dumps({
                'error': type(e).__name__,
                'message': str(e),
                'details': _errors.error_details(e),
            }, ensure_ascii=False, default=str))
            raise SystemExit(DOMAIN_EXIT)
        manifest = self.manifest(options, _time.perf_counter() - start if options['with_timing'] else None)
        self.write_report(report, manifest, options)
        self.after_report(report)

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1].replace('_', '-')

    def manifest(self, options: dict, timing: float | None) -> RunManifest:
        parameters = {
            name: options[name]
            for name in ('h', 'H', 'precision', 'theorem', 'format') + self.manifest_parameters()
            if name in options and options[name] is not None
        }
        outputs = (options['out'],) if options.get('out') else ()
        return RunManifest(self.command_name, options.get('form'), parameters, outputs, timing=timing)

    def manifest_parameters(self) -> tuple[str, ...]:
        """Names of command-specific options recorded in the manifest."""
        return ()

    @_abc.abstractmethod
    def run(self, **options):
        pass

    def after_report(self, report):
        """Hook called once the report has been written."""
        pass

    def load_form(self, options: dict) -> AnyForm:
        """Load the form given by --form.

        :raise CommandError: If the option is missing or the file cannot be read as JSON.
        :raise InvalidFormError: If the spec does not describe a valid form.
        """
        path = options.get('form')
        if not path:
            raise usage_error('--form is required')
        try:
            obj = _json.loads(_pathlib.Path(path).read_text(encoding='utf-8'))
        except (OSError, ValueError) as e:
            raise usage_error(f'cannot read form spec {path}: {e}')
        return _forms.form_from_json(obj)

    def load_diag_form(self, options: dict) -> DiagForm:
        form = self.load_form(options)
        if not isinstance(form, DiagForm):
            raise _errors.InvalidFormError(f'{self.command_name} needs a diagonal form spec')
        return form

    def write_report(self, report, manifest: RunManifest, options: dict):
        if options['format'] == 'csv':
            buffer = _io.StringIO()
            writer = _csv.writer(buffer, lineterminator='\n')
            for table in report:
                if buffer.tell():
                    buffer.write('\n')
                writer.writerows(table)
            text = buffer.getvalue()
            if options.get('out'):
                manifest_path = _pathlib.Path(options['out']).with_suffix('.manifest.json')
                manifest_path.write_text(self._dump(manifest.to_json()), encoding='utf-8')
        else:
            text = self._dump({'manifest': manifest.to_json(), **report})
        if options.get('out'):
            _pathlib.Path(options['out']).write_text(text, encoding='utf-8')
        else:
            self.stdout.write(text, ending='')

    @staticmethod
    def _dump(obj) -> str:
        return _json.dumps(obj, ensure_ascii=False, indent=2) + '\n'
