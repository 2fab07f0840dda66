from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="sipmark",
    version="0.1.0",
    description="Integer watermarks as self-inverting permutations encoded into reducible permutation flow-graphs",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Developers",
        "Topic :: Security",
        "Topic :: Software Development :: Compilers",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.9",
    install_requires=[
        "pydantic>=2.10.6",
        "typer>=0.15.0",
        "networkx>=3.2",
        "graphviz>=0.20.3",
        "numpy>=1.20.0",
        "tqdm>=4.64.1",
    ],
    extras_require={
        "dev": [
            "pytest>=7.3.1",
            "pytest-mock>=3.14.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "sipmark=sipmark.cli:main",
        ],
    },
)
