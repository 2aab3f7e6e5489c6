# Sphinx configuration for the Lorentz Euler library.
#
# The API pages under ``api/`` are regenerated by sphinx-apidoc on every build.

import os
import shutil
import sys

__location__ = os.path.dirname(os.path.abspath(__file__))

# Make the package importable without installing it
sys.path.insert(0, os.path.join(__location__, "../src"))

# -- Run sphinx-apidoc ---------------------------------------------------------

from sphinx.ext import apidoc  # noqa: E402

output_dir = os.path.join(__location__, "api")
module_dir = os.path.join(__location__, "../src/lorentz_euler")
shutil.rmtree(output_dir, ignore_errors=True)

try:
    apidoc.main(["--implicit-namespaces", "-f", "-o", output_dir, module_dir])
except Exception as e:
    print("Running `sphinx-apidoc` failed!\n{}".format(e))

# -- General configuration -----------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.autosummary",
    "sphinx.ext.viewcode",
    "sphinx.ext.doctest",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
]

source_suffix = ".rst"
master_doc = "index"

project = "Lorentz Euler Library"
copyright = "2026, Lorentz Euler Team"

try:
    from lorentz_euler import __version__ as version
except ImportError:
    version = ""
release = version

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store", ".venv"]
pygments_style = "sphinx"

# pydantic models carry their validators as members; keep the pages to fields
autodoc_default_options = {"exclude-members": "model_config, model_fields, model_computed_fields"}

# -- Options for HTML output ---------------------------------------------------

html_theme = "alabaster"
html_theme_options = {
    "sidebar_width": "300px",
    "page_width": "1200px"
}
htmlhelp_basename = "lorentz_euler_library-doc"

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
    ("index", "user_guide.tex", "lorentz_euler_library Documentation", "Lorentz Euler Team", "manual")
]

# -- External mapping ----------------------------------------------------------

python_version = ".".join(map(str, sys.version_info[0:2]))
intersphinx_mapping = {
    "python": ("https://docs.python.org/" + python_version, None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "matplotlib": ("https://matplotlib.org/stable", None),
    "xarray": ("https://docs.xarray.dev/en/stable", None),
    "pydantic": ("https://docs.pydantic.dev/latest", None),
}
