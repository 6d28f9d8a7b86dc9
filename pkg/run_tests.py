#!/usr/bin/env python3
"""
Run the blockreg test suite.

Prefers the pytest of a local virtual environment, puts src/ on the import
path and forwards any extra arguments, e.g. `./run_tests.py -k golden`.
"""

import os
import subprocess
import sys


def main():
    venv_pytest = os.path.join('venv', 'bin', 'pytest')
    pytest_cmd = venv_pytest if os.path.exists(venv_pytest) else 'pytest'

    env = dict(os.environ)
    src = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src')
    env['PYTHONPATH'] = os.pathsep.join(p for p in (src, env.get('PYTHONPATH')) if p)

    cmd = [pytest_cmd, '-v', 'tests/'] + sys.argv[1:]
    return subprocess.run(cmd, env=env).returncode


if __name__ == "__main__":
    sys.exit(main())
