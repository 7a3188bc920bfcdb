import re
from setuptools import setup, find_packages

with open('README.md', mode='r', encoding='utf-8') as f:
    readme = f.read()

with open('tlroa/_version.py', mode='r', encoding='utf-8') as f:
    version = re.search(r"__version__ = '([^']+)'", f.read()).group(1)

setup(name                          = 'pytlroa',
      version                       = version,
      description                   = 'Time-limited regions of attraction for wind turbine PLL transient stability',
      long_description              = readme,
      long_description_content_type = 'text/markdown',
      license                       = 'MIT',
      packages                      = find_packages(exclude=['tests', 'tests.*', 'samples', 'samples.*']),
      keywords                      = ['transient stability', 'region of attraction', 'phase-locked loop', 'wind turbine'],
      install_requires              = [
          'numpy>=1.20',
          'scipy>=1.7',
          'pandas>=1.3',
          'matplotlib>=3.4',
          'more-itertools>=8.0'
      ],
      python_requires               = '>=3.7'
)
