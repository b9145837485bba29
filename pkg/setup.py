from setuptools import setup, find_packages

setup(
    name="whittaker_scattering",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "sympy>=1.12",
        "numpy>=1.24",
        "pydantic>=2.4",
        "pytest>=7.3.1",
        "python-dotenv>=1.0.0",
    ],
    entry_points={
        "console_scripts": [
            "whittaker-scattering=whittaker_scattering.cli:run",
        ],
    },
    python_requires=">=3.9",
)
