# Sphinx configuration for photon-ent.
# https://www.sphinx-doc.org/en/master/usage/configuration.html
import datetime
import os
import sys

try:
    from importlib_metadata import distribution
except ImportError:
    from importlib.metadata import distribution

docs_basepath = os.path.abspath(os.path.dirname(__file__))
# photonent itself, for autodoc
sys.path.insert(0, os.path.abspath(os.path.join(docs_basepath, os.pardir, "src")))

dist = distribution("photon-ent")

# -- Project information -----------------------------------------------------
this_year = datetime.datetime.today().year
copyright_year = 2024 if this_year == 2024 else f"2024 - {this_year}"
project = dist.metadata["Summary"]
author = dist.metadata["Author"]
copyright = f"{copyright_year}, {author}"
release = dist.version

# rst substitutions shared by every page
with open(os.path.join(docs_basepath, "sitevars.rst"), encoding="utf-8") as site_vars_file:
    rst_prolog = "\n" + site_vars_file.read()

# -- General configuration ---------------------------------------------------
extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx_copybutton",
    "sphinxcontrib.spelling",
]
exclude_patterns = ["_build", ".venv", ".git", "sitevars.rst"]

# -- HTML output -------------------------------------------------------------
html_theme = "furo"
html_title = project

# Napoleon
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_init_with_doc = True
napoleon_use_param = True
napoleon_use_rtype = True

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
}

autodoc_default_options = {"member-order": "bysource"}
