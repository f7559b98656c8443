from setuptools import find_packages, setup

setup(
    name="ammac",
    version="1.0.0",
    description="Capacity region computation for the additive-multiplicative MAC Y = aX1 + X1X2 + Z",
    packages=find_packages(exclude=("tests",)),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.24",
        "scipy>=1.11",
        "pydantic==2.12.5",
        "click==8.3.1",
        "tomli>=2.0; python_version < '3.11'",
        "matplotlib>=3.7",
    ],
    extras_require={"test": ["pytest>=7.4"]},
    entry_points={"console_scripts": ["ammac=ammac.main:cli"]},
)
