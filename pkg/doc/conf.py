"""Sphinx configuration for the hgfnet documentation."""
import os
import sys

import cloud_sptheme as csp

sys.path.insert(0, os.path.abspath('..'))

extensions = [
    'sphinx.ext.autodoc',
    'cloud_sptheme.ext.index_styling',
    'cloud_sptheme.ext.relbar_toc',
]
autodoc_member_order = 'bysource'

master_doc = 'contents'
index_doc = 'index'

project = 'hgfnet'
with open('../VERSION') as version_file:
    release = version_file.read().strip()
version = '.'.join(release.split('.')[:2])

html_theme = 'cloud'
html_theme_path = [csp.get_theme_dir()]
html_theme_options = {'roottarget': index_doc}
html_title = '%s %s Documentation' % (project, release)
