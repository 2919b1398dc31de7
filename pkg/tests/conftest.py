import pytest

from gaussmin.cli import main


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI in process; returns (exit_code, stdout, stderr)."""

    def run(*args):
        code = main([str(a) for a in args])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


def parse_pairs(text):
    """Read a 'key = value' summary back into a dict of strings."""
    out = {}
    for line in text.splitlines():
        if " = " in line:
            key, _, value = line.partition(" = ")
            out[key.strip()] = value.strip()
    return out


@pytest.fixture
def write_ini(tmp_path):
    """Write a run file into this test's tmp dir; returns its path."""

    def write(name, body):
        path = tmp_path / name
        path.write_text(body)
        return str(path)

    return write
