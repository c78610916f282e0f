from setuptools import find_packages, setup

setup(name='mucoal',
      version='0.1.0',
      description='Coalgebraic modal fixpoint logic: disjunctive bases, automata, simulation, Lyndon and '
      'uniform interpolation',
      packages=find_packages(include=['mucoal', 'mucoal.*']),
      package_data={'mucoal': ['config.toml']},
      python_requires='>=3.8',
      install_requires=[
          'numpy',
          'pandas',
          'tqdm',
          'toml',
          'importlib_resources',
          'networkx>=2.6',
          'ply>=3.11',
          'click>=8.0',
          'pydantic>=2.0',
      ],
      extras_require={
          'api': ['fastapi', 'uvicorn'],
          'test': ['pytest', 'hypothesis', 'httpx', 'fastapi'],
      },
      entry_points={'console_scripts': ['mucoal = mucoal.cli:main']})
