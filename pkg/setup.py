from setuptools import setup, find_packages

setup(name='qsymkit',
      version='0.1.0',
      description='Quasisymmetric functions of labeled posets: the monomial basis ring, (P, omega)-partition '
                  'generating functions and desk-scale injectivity checks.',
      url='https://github.com/qsymkit/qsymkit',
      author='qsymkit developers',
      python_requires='>=3.8',
      packages=find_packages(),
      package_data={'qsymkit': ['config.ini', 'data/*.poset']},
      install_requires=['numpy>=1.17',
                        'networkx>=2.4',
                        'asdf>=2.7'],
      extras_require={'test': ['pytest', 'hypothesis']},
      entry_points={'console_scripts': ['qsymkit = qsymkit.cli:main']})
