from os.path import dirname, exists, realpath
from setuptools import setup, find_packages
import sys


# Parameters
author = u"pycircmodal developers"
authors = [author]
description = 'Nonparametric modal regression for circular data.'
name = 'pycircmodal'
year = "2026"

sys.path.insert(0, realpath(dirname(__file__))+"/"+name)
try:
    from _version import version
except BaseException:
    version = "unknown"

setup(
    author=author,
    description=description,
    long_description=open('README.rst').read() if exists('README.rst') else '',
    include_package_data=True,
    license="GPL v2",
    name=name,
    platforms=['ALL'],
    version=version,
    # data files
    packages=find_packages(include=(name+"*",)),
    package_dir={name: name},
    # requirements
    install_requires=[
        "numpy >= 1.17",
        "pyyaml >= 3.12",
        "scipy >= 1.4",
        "sympy >= 1.1.1",
        ],
    extras_require={
        'tests': ["pytest"],
        },
    python_requires='>=3.10, <4',
    # scripts
    entry_points={
       "console_scripts": ["pycircmodal=pycircmodal.cli:main"]
       },
    keywords=["modal regression",
              "circular statistics",
              "mean shift",
              ],
    classifiers=[
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Intended Audience :: Science/Research'
        ],
    )
