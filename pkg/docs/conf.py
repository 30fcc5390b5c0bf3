# -*- coding: utf-8 -*-
#
# EllFan documentation build configuration file.

import sys
import os

# Make the package importable for autodoc.
sys.path.insert(0, os.path.abspath('..'))

extensions = ['sphinx.ext.autodoc']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'EllFan'
copyright = u'2026, EllFan Development Team'

version = '0.1'
release = '0.1.0'

exclude_patterns = ['_build']

pygments_style = 'sphinx'

html_theme = 'default'

html_static_path = ['_static']

htmlhelp_basename = 'EllFandoc'

latex_documents = [
    ('index', 'EllFan.tex', u'EllFan Documentation',
     u'EllFan Development Team', 'manual'),
]

man_pages = [
    ('index', 'ellfan', u'EllFan Documentation',
     [u'EllFan Development Team'], 1)
]
