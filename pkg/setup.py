"""The setuptools setup file."""
from setuptools import setup

with open('README.md') as file:
    long_description = file.read()

with open('VERSION') as version_file:
    version = version_file.read().strip()

setup(
    name='hgfnet',
    version=version,
    author='Raul Gonzalez',
    author_email='mindbender@gmail.com',
    url='https://github.com/neoinsanity/hgfnet',
    license='Apache License 2.0',
    description='Dynamic predictive coding networks, generalized '
                'Hierarchical Gaussian Filters and model inversion.',
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=['hgfnet', ],
    python_requires='>=3.11',
    install_requires=[
        'numpy>=1.24',
        'scipy>=1.10',
        'pandas>=2.0',
        'matplotlib>=3.7',
        'arviz>=0.17,<1.0',
    ],
    entry_points={
        'console_scripts': [
            'hgf = hgfnet.cli:main',
        ],
    },
    include_package_data=True,
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Mathematics',
    ]
)
