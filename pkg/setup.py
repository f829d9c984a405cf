# Call setuptools.setup
#
# As we are lazy in defining possibly redundant information, we have
# put a lot of information into the drmonoid.constants module and
# import that module both from this setup.py and when the actual
# software package is running.

import drmonoid.constants as const

from pathlib import Path
from setuptools import find_packages, setup

# Make sure we have imported the correct `drmonoid.constants`. The
# `PYTHONPATH` (aka `sys.path`) could be set up weirdly, and we do not
# want to fall victim to such sabotage attempts, deliberate or
# accidental.
topdir_from_const = Path(const.__file__).parent.parent
topdir_from_setup = Path(__file__).parent
if not topdir_from_setup.samefile(topdir_from_const):
    raise Exception(
        f"inconsistent locations of drmonoid.constants and setup.py: {topdir_from_const} vs {topdir_from_setup}"
    )

readme_md_path = topdir_from_setup / "README.md"
long_description = readme_md_path.read_text("utf-8")


setup(
    name=const.PACKAGE,
    version=const.VERSION,
    description="Finite levels of Deligne-Ribet monoids for Q and imaginary quadratic fields",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    packages=find_packages(exclude=["test"]),
    # https://pypi.org/classifiers/
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=["sympy>=1.14"],
    extras_require={"test": ["pytest", "hypothesis"]},
    dependency_links=[],
    entry_points={
        "console_scripts": [
            f"{const.BASE_EXE_CLI}=drmonoid.cli:main",
        ],
    },
    include_package_data=True,
)
