import csv

import pytest
from photonent import cli


class CliResult:
    def __init__(self, code, stdout, stderr):
        self.code = code
        self.stdout = stdout
        self.stderr = stderr

    @property
    def lines(self):
        return self.stdout.splitlines()

    @property
    def table(self):
        """
        Header and float rows of a CSV run, the magic line skipped.
        """
        rows = list(csv.reader(self.lines[1:]))
        return rows[0], [[float(value) for value in row] for row in rows[1:]]


@pytest.fixture
def run_cli(capsys):
    def _run(*argv):
        code = cli.main([str(arg) for arg in argv])
        captured = capsys.readouterr()
        return CliResult(code, captured.out, captured.err)

    return _run


@pytest.fixture
def small_flags():
    return ["--grid-n", 16, "--tau-n", 11]
