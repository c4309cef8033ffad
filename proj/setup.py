from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = [
    "src/model.cpp",
    "src/formula.cpp",
    "src/causality.cpp",
    "src/explanation.cpp",
    "src/general.cpp",
    "src/document.cpp",
    "src/fixtures.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "causalis._core",
            sources=["bindings/module.cpp"] + core_sources,
            include_dirs=["include"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
