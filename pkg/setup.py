#!/usr/bin/env python

from setuptools import setup

setup(name='jonquil',
      version='0.1',
      description=(
          'Degrees, growth and fixed points of plane Cremona maps'
      ),
      packages=['jonquil', 'jonquil.testing', 'jonquil.tests'],
      package_data={
          'jonquil': ['docs/*.rst'],
      },
      install_requires=[
          'sympy',
      ],
      entry_points={
          'console_scripts': [
              'jonquil = jonquil.__main__:main',
          ],
      },
)
