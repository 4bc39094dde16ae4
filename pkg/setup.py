#!/usr/bin/env python3

from setuptools import setup, find_packages


def read_file(fn):
    with open(fn) as f:
        content = f.read()
    return content

setup(
    name="boxcount",
    use_scm_version={'write_to': 'src/boxcount/_version.py'},
    description="Boxcounting for Donaldson-Thomas vertices and instantons",
    long_description=read_file("README.rst"),
    long_description_content_type="text/x-rst",
    license="GPL-3",
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)',
        'Natural Language :: English',
        'Operating System :: MacOS',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    platforms=["linux", "macos"],
    keywords=("enumerative geometry donaldson-thomas plane partitions "
              "topological vertex instantons localization"),
    packages=find_packages('src'),
    package_dir={'': 'src'},
    package_data={'boxcount': ['etc/defaults.yml']},
    zip_safe=False,
    setup_requires=[
        'setuptools_scm>=3.4',
        'setuptools>=42',
        'wheel',
        'pytest-runner',
    ],
    install_requires=[
        'Click',
        'Click-completion',
        'ruamel.yaml>0.15',
        'pandas>=0.20',  # csv output
        'coloredlogs',
        'xdg>=4',  # user paths
        'tqdm>=4.21.0',
        'networkx>=2',  # toric graphs
        'sympy>=1.9',  # polynomial rings over QQ
    ],
    tests_require=[
        'pytest',
        'pytest-xdist',
        'pytest-timeout',
        'pytest-cov',
        'hypothesis',
        'yappi',
    ],
    extras_require={
        'profile': [
            'yappi',
        ],
        'docs': [
            'sphinx',
            'cloud_sptheme',
            'sphinxcontrib-fulltoc',
            'sphinx-click',
            'sphinx_autodoc_typehints',
        ]
    },
    python_requires='>=3.8',
    include_package_data=True,
    entry_points='''
        [console_scripts]
        boxcount=boxcount.cli:main
    ''',
)
