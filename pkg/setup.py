"""A setuptools based setup module."""

from os import path

from setuptools import find_packages, setup


here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()


setup(
    name='litmap',
    version='0.1.0',
    description='Citation network clustering and knowledge-translation stage mapping',
    long_description=long_description,
    long_description_content_type='text/markdown',
    license='MIT',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering :: Information Analysis',
    ],
    keywords='bibliometrics citation network modularity clustering scientometrics',
    packages=find_packages(exclude=('tests', 'examples*')),
    python_requires='>=3.8',
    install_requires=['numpy', 'networkx>=2.6', 'lxml'],
    entry_points={'console_scripts': ['litmap = litmap.cli:main']},
    include_package_data=True,
)
