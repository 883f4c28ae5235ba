# pylint: disable=missing-module-docstring,import-error,protected-access,missing-function-docstring
import datetime
import os
import shutil
from pathlib import Path

import nox

nox.options.reuse_existing_virtualenvs = True
nox.options.error_on_missing_interpreters = False

PYTHON_VERSIONS = ("3", "3.8", "3.9", "3.10", "3.11")
SKIP_REQUIREMENTS_INSTALL = "SKIP_REQUIREMENTS_INSTALL" in os.environ
COVERAGE_VERSION_REQUIREMENT = "coverage==5.2"

os.environ["PYTHONDONTWRITEBYTECODE"] = "1"

REPO_ROOT = Path(__file__).resolve().parent
os.chdir(str(REPO_ROOT))

ARTIFACTS_DIR = REPO_ROOT / "artifacts"
ARTIFACTS_DIR.mkdir(parents=True, exist_ok=True)
RUNTESTS_LOGFILE = ARTIFACTS_DIR / "runtests-{}.log".format(
    datetime.datetime.now().strftime("%Y%m%d%H%M%S")
)
COVERAGE_REPORT_DB = REPO_ROOT / ".coverage"
COVERAGE_REPORT = ARTIFACTS_DIR.relative_to(REPO_ROOT) / "coverage-photonent.xml"
JUNIT_REPORT = ARTIFACTS_DIR.relative_to(REPO_ROOT) / "junit-report.xml"
BUILD_DIR = Path("docs", "_build", "html")


def _install(session, *extras, coverage=False):
    if SKIP_REQUIREMENTS_INSTALL:
        return
    session.install("--progress-bar=off", "wheel")
    if coverage:
        session.install("--progress-bar=off", COVERAGE_VERSION_REQUIREMENT)
    pkg = "."
    if extras:
        pkg += f"[{','.join(extras)}]"
    session.install("-e", pkg)


@nox.session(python=PYTHON_VERSIONS)
def tests(session):
    _install(session, "tests", coverage=True)
    env = {"COVERAGE_FILE": str(COVERAGE_REPORT_DB)}

    session.run("coverage", "erase")
    args = [
        "--rootdir",
        str(REPO_ROOT),
        f"--log-file={RUNTESTS_LOGFILE.relative_to(REPO_ROOT)}",
        "--log-file-level=debug",
        f"--junitxml={JUNIT_REPORT}",
        "-ra",
    ]
    if session._runner.global_config.forcecolor:
        args.append("--color=yes")
    args.extend(session.posargs or ["tests/"])
    try:
        session.run("coverage", "run", "--source=photonent", "-m", "pytest", *args, env=env)
    finally:
        session.run("coverage", "xml", "-o", str(COVERAGE_REPORT))
        try:
            session.run("coverage", "report", "--show-missing")
        finally:
            if COVERAGE_REPORT_DB.exists():
                shutil.move(str(COVERAGE_REPORT_DB), str(ARTIFACTS_DIR / COVERAGE_REPORT_DB.name))


@nox.session(python="3")
def check(session):
    """
    Run ``photon-ent check`` against the installed package.
    """
    _install(session)
    session.run("photon-ent", "check", *session.posargs)


def _lint(session, flags, paths):
    _install(session, "dev", "tests")
    session.run("pylint", "--version")
    session.run(
        "pylint",
        "--max-line-length=100",
        *flags,
        *paths,
        env={"PYTHONPATH": str(REPO_ROOT / "src"), "PYTHONUNBUFFERED": "1"},
    )


@nox.session(python="3")
def lint(session):
    """
    Run PyLint against the code and the test suite.
    """
    session.notify(f"lint-code-{session.python}")
    session.notify(f"lint-tests-{session.python}")


@nox.session(python="3", name="lint-code")
def lint_code(session):
    _lint(session, ["--disable=I"], session.posargs or ["setup.py", "src/"])


@nox.session(python="3", name="lint-tests")
def lint_tests(session):
    flags = [
        "--disable=I,redefined-outer-name,missing-function-docstring,missing-module-docstring"
    ]
    _lint(session, flags, session.posargs or ["tests/"])


@nox.session(name="docs-html", python="3")
@nox.parametrize("clean", [False, True])
def docs_html(session, clean):
    """
    Build Sphinx HTML Documentation
    """
    _install(session, "docs")
    sphinxopts = "-WnE" if clean else "-Wn"
    session.run("sphinx-build", sphinxopts, "--keep-going", "docs", str(BUILD_DIR), external=True)


@nox.session(name="docs-dev", python="3")
def docs_dev(session) -> None:
    """
    Serve the docs with live reloading via sphinx-autobuild. Interactive use only, it never exits.
    """
    _install(session, "docs", "docsauto")
    session.run("sphinx-autobuild", "--watch", "src", "--open-browser", "docs", str(BUILD_DIR))


@nox.session(name="gen-api-docs", python="3")
def gen_api_docs(session):
    """
    Regenerate the ``docs/ref`` pages from the package.
    """
    _install(session, "docs")
    shutil.rmtree("docs/ref", ignore_errors=True)
    session.run("sphinx-apidoc", "--module-first", "-o", "docs/ref/", "src/photonent")
