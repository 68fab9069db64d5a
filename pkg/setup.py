from setuptools import setup, find_packages

setup(
    name="supercongruence-lab",
    version="1.0.0",
    packages=find_packages(include=["app*"]),
    include_package_data=True,
    install_requires=["pydantic>=2", "click>=8", "sympy"],
    entry_points={
        "console_scripts": [
            "supercongruence=app.modules.congruences.cli.commands:main",
        ],
    },
)
