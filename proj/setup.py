import pathlib
import subprocess
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source = pathlib.Path(__file__).resolve().parent
        out_dir = pathlib.Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build = pathlib.Path(self.build_temp).resolve() / "cmake"
        build.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                "-S", str(source),
                "-B", str(build),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DDKG_BUILD_PYTHON=ON",
                "-DDKG_BUILD_TESTS=OFF",
                "-DDKG_BUILD_CLI=OFF",
                f"-DPython3_EXECUTABLE={sys.executable}",
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build), "--target", "_core", "--parallel"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("dkglab._core")],
    cmdclass={"build_ext": CMakeBuild},
)
