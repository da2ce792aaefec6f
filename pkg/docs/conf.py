#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# pycircmodal documentation build configuration file
#
# This file is execfile()d with the current directory set to its
# containing dir.
import os.path as op
import sys

# include parent directory
pdir = op.dirname(op.dirname(op.abspath(__file__)))
sys.path.insert(0, pdir)

# Mock all dependencies
install_requires = ["numpy", "pyyaml", "yaml", "scipy", "sympy"]

# http://www.sphinx-doc.org/en/stable/ext/autodoc.html#confval-autodoc_member_order
# Order class attributes and functions in separate blocks
autodoc_member_order = 'bysource'
autodoc_mock_imports = install_requires

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.autosummary',
              'sphinx.ext.intersphinx',
              'sphinx.ext.mathjax',
              'sphinx.ext.viewcode',
              'sphinx.ext.napoleon',
              ]

# Add any paths that contain templates here, relative to this directory.
templates_path = ['_templates']

source_suffix = '.rst'

# The master toctree document.
master_doc = 'index'

# General information about the project.
project = 'pycircmodal'
copyright = '2026, pycircmodal developers'
author = 'pycircmodal developers'

# The full version, including alpha/beta/rc tags.
# This gets 'version'
exec(open(op.join(pdir, "pycircmodal/_version.py")).read())
release = version  # noqa: F821

language = "en"

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = 'sphinx'

todo_include_todos = False


# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'

htmlhelp_basename = 'pycircmodaldoc'


# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'pycircmodal.tex', 'pycircmodal Documentation',
     author, 'manual'),
]


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'pycircmodal', 'pycircmodal Documentation',
     [author], 1)
]


# Example configuration for intersphinx: refer to the Python standard library.
intersphinx_mapping = {"python": ('https://docs.python.org/3', None),
                       "numpy": ('https://numpy.org/doc/stable', None),
                       "scipy": ('https://docs.scipy.org/doc/scipy/', None),
                       }
