from setuptools import setup, find_packages

setup(
    name="mean_field_negotiation",
    version="1.0.0",
    packages=find_packages(include=["src", "src.*"]),
    install_requires=[
        "pydantic>=2.0.0",
        "pydantic-settings>=2.0.0",
        "pandas>=1.3.5",
        "numpy>=1.21.0",
        # Charts
        "matplotlib>=3.7.0",
        "networkx>=3.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=2.12.0",
            "black>=22.0.0",
            "isort>=5.10.0",
            "mypy>=0.910",
            "flake8>=4.0.0"
        ],
    },
    entry_points={
        "console_scripts": [
            "mfnegotiate=src.app.cli:main",
        ],
    },
    python_requires=">=3.9",
)
