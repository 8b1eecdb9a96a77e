from setuptools import setup
from EquiPart.__version__ import VERSION

setup(
    name="EquiPart",
    author="EquiPart contributors",
    description="Exact solvers for the equitable connected partition problem",
    packages=["EquiPart"],
    python_requires=">=3.9",
    version=str(VERSION),
    install_requires=["networkx>=2.8", "numpy>=1.22"],
    extras_require={"test": ["pytest>=7"]},
    entry_points={"console_scripts": ["equipart=EquiPart.cli:main"]},
)
