"""Setup file for subcol."""

from setuptools import setup

PACKAGE_NAMES = [
    'subcol', 'subcol.utils', 'subcol.scripts'
]

KEYWORDS = [
    'machine learning', 'deep learning', 'subspace clustering',
    'self-expressive', 'autoencoder', 'spectral clustering', 'sparse coding'
]

SHORT_DESCRIPTION = (
    'Reference implementation of self-expressive deep subspace clustering, '
    'with exact oracles for its degenerate optima and a reproducible '
    'synthetic experiment.')

LONG_DESCRIPTION = SHORT_DESCRIPTION

CLASSIFIERS = [
    'Development Status :: 2 - Pre-Alpha',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: MIT License',
    'Programming Language :: Python :: 3'
]

PACKAGE_REQUIREMENTS = [
    'numpy',
    'scipy',
    'scikit-learn',
    'matplotlib',
    'pandas'
]

if __name__ == '__main__':
    setup(name='subcol',
          version='0.1',
          description=SHORT_DESCRIPTION,
          long_description=LONG_DESCRIPTION,
          license='MIT',
          packages=PACKAGE_NAMES,
          package_data={'subcol': ['configs/*.json']},
          scripts=[],
          entry_points={
              'console_scripts': [
                  'subcol=subcol.scripts.run_experiment:main'
              ]
          },
          keywords=KEYWORDS,
          classifiers=CLASSIFIERS,
          include_package_data=True,
          zip_safe=False,
          install_requires=PACKAGE_REQUIREMENTS)
