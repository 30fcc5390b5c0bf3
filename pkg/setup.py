from setuptools import setup, find_packages  # Always prefer setuptools over distutils
from codecs import open  # To use a consistent encoding
from os import path

here = path.abspath(path.dirname(__file__))

# Get the long description from the relevant file
with open(path.join(here, 'DESCRIPTION.rst'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='ellfan',

    # Versions should comply with PEP440.
    version='0.1.0',

    description='Equivariant elliptic Hochschild homology of smooth toric varieties',
    long_description=long_description,

    author='EllFan Development Team',

    license='GPL',

    keywords=['toric', 'elliptic', 'hochschild', 'smith normal form', 'localization'],

    packages=find_packages(exclude=['contrib', 'docs', 'tests*']),

    # Bundled example fans and points used by the CLI and the selftest battery.
    package_data={'ellfan': ['data/fans/*.json', 'data/points/*.json']},

    # List run-time dependencies here.  These will be installed by pip when your
    # project is installed.
    install_requires=['numpy', 'scipy'],

    # List additional groups of dependencies here (e.g. development dependencies).
    # You can install these using the following syntax, for example:
    # $ pip install -e .[dev,test]
    extras_require = {
        'dev': ['check-manifest'],
        'test': ['coverage', 'pytest'],
                     },

    entry_points={
        'console_scripts': ['ellfan = ellfan.cli:main'],
    },
)
