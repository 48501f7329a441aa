import os
import sys

import pytest


@pytest.fixture(scope="session")
def lg():
    """The logeuler API: the installed package, or the freshly built extension.

    ctest points LOGEULER_EXT_DIR at the CMake build tree so the smoke tests
    run without an install step.
    """
    try:
        import logeuler

        return logeuler
    except ImportError:
        pass
    ext_dir = os.environ.get("LOGEULER_EXT_DIR")
    if not ext_dir:
        pytest.skip("logeuler not installed and LOGEULER_EXT_DIR not set")
    sys.path.insert(0, ext_dir)
    import _core

    return _core
